#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "autoseq/word.hpp"

namespace autoseq {

enum class NumerationKind { base_k, fibonacci, tribonacci };

/// Positional numeration system read most-significant-digit first.
/// Base-k uses digits {0..k-1}; the Fibonacci (Zeckendorf) and Tribonacci
/// systems use digits {0,1} over the weights 1,2,3,5,8,... and 1,2,4,7,13,...
class NumerationSystem {
 public:
  static NumerationSystem base(int k) {
    if (k < 2 || k > 256)
      throw std::domain_error("NumerationSystem: base must be in 2..256");
    return NumerationSystem(NumerationKind::base_k, k);
  }
  static NumerationSystem fibonacci() { return NumerationSystem(NumerationKind::fibonacci, 2); }
  static NumerationSystem tribonacci() { return NumerationSystem(NumerationKind::tribonacci, 2); }

  NumerationKind kind() const { return kind_; }

  int base_k() const {
    if (kind_ != NumerationKind::base_k)
      throw std::domain_error("NumerationSystem: not a base-k system");
    return k_;
  }

  int digit_alphabet_size() const { return kind_ == NumerationKind::base_k ? k_ : 2; }

  std::string tag() const {
    switch (kind_) {
      case NumerationKind::base_k: return "msd_" + std::to_string(k_);
      case NumerationKind::fibonacci: return "msd_fib";
      default: return "msd_trib";
    }
  }

  static NumerationSystem from_tag(std::string_view tag) {
    if (tag == "msd_fib") return fibonacci();
    if (tag == "msd_trib") return tribonacci();
    if (tag.substr(0, 4) == "msd_") {
      int k = 0;
      for (char c : tag.substr(4)) {
        if (c < '0' || c > '9') k = -1;
        if (k < 0) break;
        k = k * 10 + (c - '0');
        if (k > 1000) break;
      }
      if (k >= 2 && k <= 256) return base(k);
    }
    throw std::invalid_argument("NumerationSystem: unknown tag '" + std::string(tag) + "'");
  }

  friend bool operator==(const NumerationSystem& a, const NumerationSystem& b) {
    return a.kind_ == b.kind_ && (a.kind_ != NumerationKind::base_k || a.k_ == b.k_);
  }
  friend bool operator!=(const NumerationSystem& a, const NumerationSystem& b) {
    return !(a == b);
  }

 private:
  NumerationSystem(NumerationKind kind, int k) : kind_(kind), k_(k) {}
  NumerationKind kind_;
  int k_;
};

/// Msd-first digit string tagged with its numeration system.
struct DigitString {
  std::vector<Symbol> digits;
  NumerationSystem system;

  std::string to_string() const {
    std::string s;
    if (system.digit_alphabet_size() <= 10) {
      for (Symbol d : digits) s.push_back(static_cast<char>('0' + d));
    } else {
      for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) s.push_back(' ');
        s += std::to_string(int(digits[i]));
      }
    }
    return s;
  }
};

namespace detail {

// Weight tables: Fibonacci 1,2,3,5,... and Tribonacci 1,2,4,7,... as far as
// 64 bits reach. Indexed from the least significant position.
inline const std::vector<std::uint64_t>& fibonacci_weights() {
  static const std::vector<std::uint64_t> w = [] {
    std::vector<std::uint64_t> v{1, 2};
    for (;;) {
      std::uint64_t a = v[v.size() - 2], b = v.back();
      if (b > std::numeric_limits<std::uint64_t>::max() - a) break;
      v.push_back(a + b);
    }
    return v;
  }();
  return w;
}

inline const std::vector<std::uint64_t>& tribonacci_weights() {
  static const std::vector<std::uint64_t> w = [] {
    std::vector<std::uint64_t> v{1, 2, 4};
    for (;;) {
      std::uint64_t a = v[v.size() - 3], b = v[v.size() - 2], c = v.back();
      if (c > std::numeric_limits<std::uint64_t>::max() - a - b) break;
      v.push_back(a + b + c);
    }
    return v;
  }();
  return w;
}

inline const std::vector<std::uint64_t>& weights_for(NumerationKind kind) {
  return kind == NumerationKind::fibonacci ? fibonacci_weights() : tribonacci_weights();
}

}  // namespace detail

/// Canonical msd-first representation of n. The representation of 0 is the
/// single digit "0" in every system. Fibonacci/Tribonacci use the greedy
/// algorithm, which yields the unique canonical form (no "11" factor in the
/// Fibonacci system, no "111" in the Tribonacci system).
inline DigitString encode(std::uint64_t n, NumerationSystem sys) {
  std::vector<Symbol> digits;
  if (sys.kind() == NumerationKind::base_k) {
    std::uint64_t k = static_cast<std::uint64_t>(sys.base_k());
    if (n == 0) {
      digits.push_back(0);
    } else {
      while (n > 0) {
        digits.push_back(static_cast<Symbol>(n % k));
        n /= k;
      }
      std::reverse(digits.begin(), digits.end());
    }
    return DigitString{std::move(digits), sys};
  }
  const auto& weights = detail::weights_for(sys.kind());
  if (n == 0) return DigitString{{0}, sys};
  std::size_t top = 0;
  while (top + 1 < weights.size() && weights[top + 1] <= n) ++top;
  digits.assign(top + 1, 0);
  std::uint64_t rest = n;
  for (std::size_t i = top + 1; i-- > 0;) {
    if (weights[i] <= rest) {
      digits[top - i] = 1;  // msd-first: position i maps to index top - i
      rest -= weights[i];
    }
  }
  return DigitString{std::move(digits), sys};
}

/// Value of a digit string: sum of digit * weight. Canonicity is not
/// required, but every digit must be valid for the system.
inline std::uint64_t decode(const DigitString& d) {
  const int alpha = d.system.digit_alphabet_size();
  for (Symbol dig : d.digits)
    if (static_cast<int>(dig) >= alpha)
      throw std::domain_error("decode: digit " + std::to_string(int(dig)) +
                              " out of range for " + d.system.tag());
  std::uint64_t value = 0;
  if (d.system.kind() == NumerationKind::base_k) {
    const std::uint64_t k = static_cast<std::uint64_t>(d.system.base_k());
    for (Symbol dig : d.digits) {
      if (value > (std::numeric_limits<std::uint64_t>::max() - dig) / k)
        throw std::overflow_error("decode: value exceeds 64 bits");
      value = value * k + dig;
    }
    return value;
  }
  const auto& weights = detail::weights_for(d.system.kind());
  const std::size_t len = d.digits.size();
  if (len > weights.size()) {
    for (std::size_t i = 0; i + weights.size() < len; ++i)
      if (d.digits[i] != 0) throw std::overflow_error("decode: value exceeds 64 bits");
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (d.digits[i] == 0) continue;
    std::uint64_t w = weights[len - 1 - i];
    if (value > std::numeric_limits<std::uint64_t>::max() - w)
      throw std::overflow_error("decode: value exceeds 64 bits");
    value += w;
  }
  return value;
}

/// True iff the string is the canonical representation of its value:
/// digits in range, no leading zero (except "0" itself), and no "11"
/// (Fibonacci) or "111" (Tribonacci) factor.
inline bool is_canonical(const DigitString& d) {
  const int alpha = d.system.digit_alphabet_size();
  if (d.digits.empty()) return false;
  for (Symbol dig : d.digits)
    if (static_cast<int>(dig) >= alpha) return false;
  if (d.digits.size() > 1 && d.digits[0] == 0) return false;
  if (d.system.kind() == NumerationKind::fibonacci) {
    for (std::size_t i = 0; i + 1 < d.digits.size(); ++i)
      if (d.digits[i] == 1 && d.digits[i + 1] == 1) return false;
  } else if (d.system.kind() == NumerationKind::tribonacci) {
    for (std::size_t i = 0; i + 2 < d.digits.size(); ++i)
      if (d.digits[i] == 1 && d.digits[i + 1] == 1 && d.digits[i + 2] == 1) return false;
  }
  return true;
}

}  // namespace autoseq
