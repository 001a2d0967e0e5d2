#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace autoseq {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Comparisons use 128-bit cross multiplication; no floating
/// point is involved anywhere.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  /// Parses "7/3" or "2". Decimal notation is rejected: thresholds and
  /// exponents in this library are exact by contract.
  static Rational parse(std::string_view s) {
    auto bad = [&] {
      throw std::invalid_argument("Rational: cannot parse '" + std::string(s) +
                                  "' (expected an exact fraction like 7/3 or 2)");
    };
    if (s.empty()) bad();
    std::size_t slash = s.find('/');
    auto parse_int = [&](std::string_view t) -> long long {
      if (t.empty()) bad();
      long long v = 0;
      for (char ch : t) {
        if (ch < '0' || ch > '9') bad();
        v = v * 10 + (ch - '0');
        if (v > (1LL << 60)) bad();
      }
      return v;
    };
    if (slash == std::string_view::npos) return Rational(parse_int(s), 1);
    return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
  }
};

}  // namespace autoseq
