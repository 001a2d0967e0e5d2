#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "autoseq/rational.hpp"
#include "autoseq/word.hpp"

namespace autoseq {

/// Exponent threshold alpha with a strictness flag. strict == true is the
/// alpha^+ reading (a word is alpha^+-free when it has no factor of exponent
/// strictly greater than alpha); strict == false is plain alpha-freeness
/// (no factor of exponent >= alpha).
class ExponentThreshold {
 public:
  ExponentThreshold(Rational alpha, bool strict) : alpha_(alpha), strict_(strict) {
    if (!(Rational(1, 1) < alpha_))
      throw std::domain_error("ExponentThreshold: alpha must exceed 1");
  }

  static ExponentThreshold alpha(Rational a) { return ExponentThreshold(a, false); }
  static ExponentThreshold alpha_plus(Rational a) { return ExponentThreshold(a, true); }

  /// Accepts "7/3", "2", and a trailing '+' for the strict variant.
  static ExponentThreshold parse(std::string_view s) {
    bool strict = false;
    if (!s.empty() && s.back() == '+') {
      strict = true;
      s.remove_suffix(1);
    }
    return ExponentThreshold(Rational::parse(s), strict);
  }

  Rational alpha() const { return alpha_; }
  bool strict() const { return strict_; }

  /// True when a factor of the given length and (not necessarily smallest)
  /// period breaches the threshold.
  bool violated_by(std::uint64_t length, std::uint64_t period) const {
    __int128 lhs = static_cast<__int128>(length) * alpha_.den;
    __int128 rhs = static_cast<__int128>(alpha_.num) * period;
    return strict_ ? lhs > rhs : lhs >= rhs;
  }

  /// Smallest factor length that breaches the threshold at the given period.
  std::uint64_t min_violating_length(std::uint64_t period) const {
    const std::uint64_t a = static_cast<std::uint64_t>(alpha_.num);
    const std::uint64_t b = static_cast<std::uint64_t>(alpha_.den);
    if (strict_) return (a * period) / b + 1;
    return (a * period + b - 1) / b;
  }

  std::string to_string() const { return alpha_.to_string() + (strict_ ? "+" : ""); }

 private:
  Rational alpha_;
  bool strict_;
};

/// A factor w[start .. start+length-1] together with its smallest period
/// and exact exponent length/period.
struct RepetitionWitness {
  std::uint64_t start = 0;
  std::uint64_t length = 0;
  std::uint64_t period = 0;
  Rational exponent{1, 1};

  friend bool operator==(const RepetitionWitness& a, const RepetitionWitness& b) {
    return a.start == b.start && a.length == b.length && a.period == b.period &&
           a.exponent == b.exponent;
  }
};

/// Smallest period of a nonempty word, via the border (failure function):
/// p = n - longest proper border.
inline std::uint64_t smallest_period(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) throw std::domain_error("smallest_period: empty word");
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = pi[i - 1];
    while (j > 0 && w[i] != w[j]) j = pi[j - 1];
    if (w[i] == w[j]) ++j;
    pi[i] = j;
  }
  return n - pi[n - 1];
}

/// Exact exponent |w| / smallest_period(w), in lowest terms.
inline Rational exponent(const Word& w) {
  std::uint64_t p = smallest_period(w);
  return Rational(static_cast<long long>(w.size()), static_cast<long long>(p));
}

/// Longest-common-extension index: suffix array (doubling with radix sort),
/// LCP array (Kasai), and a sparse table for O(1) range minima.
class LceIndex {
 public:
  explicit LceIndex(const Word& w) : n_(w.size()) {
    if (n_ == 0) return;
    build_suffix_array(w);
    build_lcp(w);
    build_sparse();
  }

  /// Length of the longest common prefix of the suffixes at i and j.
  std::size_t lce(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) return 0;
    if (i == j) return n_ - i;
    std::size_t a = rank_[i], b = rank_[j];
    if (a > b) std::swap(a, b);
    return range_min(a, b - 1);
  }

 private:
  void build_suffix_array(const Word& w) {
    const std::size_t n = n_;
    sa_.resize(n);
    rank_.resize(n);
    std::vector<std::size_t> tmp(n), cnt(std::max<std::size_t>(n + 1, 257), 0), sa2(n);
    for (std::size_t i = 0; i < n; ++i) rank_[i] = w[i];
    for (std::size_t i = 0; i < n; ++i) sa_[i] = i;
    std::size_t classes = 256;
    for (std::size_t len = 1;; len <<= 1) {
      // sort by (rank[i], rank[i+len]) with two counting passes
      std::fill(cnt.begin(), cnt.begin() + classes + 1, 0);
      for (std::size_t i = 0; i < n; ++i)
        cnt[i + len < n ? rank_[i + len] + 1 : 0]++;
      for (std::size_t i = 1; i <= classes; ++i) cnt[i] += cnt[i - 1];
      for (std::size_t i = n; i-- > 0;) {
        std::size_t key = i + len < n ? rank_[i + len] + 1 : 0;
        sa2[--cnt[key]] = i;
      }
      std::fill(cnt.begin(), cnt.begin() + classes + 1, 0);
      for (std::size_t i = 0; i < n; ++i) cnt[rank_[i] + 1]++;
      for (std::size_t i = 1; i <= classes; ++i) cnt[i] += cnt[i - 1];
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t s = sa2[i];
        sa_[cnt[rank_[s] + 1 - 1]++] = s;
      }
      // recompute ranks
      tmp[sa_[0]] = 0;
      std::size_t c = 1;
      for (std::size_t i = 1; i < n; ++i) {
        std::size_t cur = sa_[i], prev = sa_[i - 1];
        bool same = rank_[cur] == rank_[prev];
        if (same) {
          std::size_t rc = cur + len < n ? rank_[cur + len] + 1 : 0;
          std::size_t rp = prev + len < n ? rank_[prev + len] + 1 : 0;
          same = rc == rp;
        }
        if (!same) ++c;
        tmp[cur] = c - 1;
      }
      rank_.swap(tmp);
      classes = c;
      if (classes == n || len >= n) break;
      if (classes + 1 > cnt.size()) cnt.resize(classes + 1);
    }
  }

  void build_lcp(const Word& w) {
    const std::size_t n = n_;
    lcp_.assign(n > 1 ? n - 1 : 0, 0);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (rank_[i] + 1 == n) {
        h = 0;
        continue;
      }
      std::size_t j = sa_[rank_[i] + 1];
      while (i + h < n && j + h < n && w[i + h] == w[j + h]) ++h;
      lcp_[rank_[i]] = h;
      if (h > 0) --h;
    }
  }

  void build_sparse() {
    const std::size_t m = lcp_.size();
    log_.assign(m + 1, 0);
    for (std::size_t i = 2; i <= m; ++i) log_[i] = log_[i / 2] + 1;
    if (m == 0) return;
    sparse_.assign(log_[m] + 1, std::vector<std::size_t>());
    sparse_[0] = lcp_;
    for (std::size_t k = 1; k < sparse_.size(); ++k) {
      std::size_t len = std::size_t(1) << k;
      sparse_[k].resize(m + 1 - len);
      for (std::size_t i = 0; i + len <= m; ++i)
        sparse_[k][i] = std::min(sparse_[k - 1][i], sparse_[k - 1][i + len / 2]);
    }
  }

  std::size_t range_min(std::size_t lo, std::size_t hi) const {  // inclusive
    std::size_t k = log_[hi - lo + 1];
    return std::min(sparse_[k][lo], sparse_[k][hi + 1 - (std::size_t(1) << k)]);
  }

  std::size_t n_;
  std::vector<std::size_t> sa_, rank_, lcp_, log_;
  std::vector<std::vector<std::size_t>> sparse_;
};

enum class ScanAlgorithm {
  lce,    ///< anchored LCE scan, near O(n log n); the default
  naive,  ///< direct quadratic scan; limited to |w| <= 10^4, kept for cross-checks
};

namespace detail {

struct Candidate {
  std::uint64_t start, length, period;
  bool operator<(const Candidate& o) const {
    if (start != o.start) return start < o.start;
    if (length != o.length) return length < o.length;
    return period < o.period;
  }
};

// The scan emits, per period p, factors of exactly the minimal violating
// length anchored at multiples of (Lp - p); any violating factor contains
// such an anchor pair, so the (start, length)-least violation is found.
inline std::optional<Candidate> scan_lce(const Word& w, const ExponentThreshold& thr) {
  const std::size_t n = w.size();
  LceIndex fwd(w);
  LceIndex bwd(reverse(w));
  std::optional<Candidate> best;
  for (std::uint64_t p = 1; p < n; ++p) {
    const std::uint64_t Lp = thr.min_violating_length(p);
    if (Lp > n) break;  // min_violating_length is monotone in p
    const std::uint64_t step = Lp - p;
    for (std::uint64_t m = 0; m + p < n; m += step) {
      std::uint64_t f = fwd.lce(m, m + p);
      std::uint64_t b = m == 0 ? 0 : bwd.lce(n - m, n - m - p);
      if (p + f + b >= Lp) {
        Candidate c{m - b, Lp, p};
        if (!best || c < *best) best = c;
      }
    }
  }
  return best;
}

inline std::optional<Candidate> scan_naive(const Word& w, const ExponentThreshold& thr) {
  const std::size_t n = w.size();
  std::optional<Candidate> best;
  for (std::uint64_t p = 1; p < n; ++p) {
    const std::uint64_t Lp = thr.min_violating_length(p);
    if (Lp > n) break;
    for (std::uint64_t s = 0; s + Lp <= n; ++s) {
      bool ok = true;
      for (std::uint64_t t = 0; ok && t + p < Lp; ++t) ok = w[s + t] == w[s + t + p];
      if (ok) {
        Candidate c{s, Lp, p};
        if (!best || c < *best) best = c;
        break;  // later starts for this p cannot improve (start grows)
      }
    }
  }
  return best;
}

inline RepetitionWitness finish_witness(const Word& w, const Candidate& c) {
  Word factor = w.slice(c.start, c.length);
  std::uint64_t p = smallest_period(factor);
  return RepetitionWitness{c.start, c.length, p,
                           Rational(static_cast<long long>(c.length), static_cast<long long>(p))};
}

}  // namespace detail

/// Leftmost (then shortest, then smallest-period) factor breaching the
/// threshold, or nullopt when the word is free. The reported period is the
/// factor's smallest period and the exponent is exact.
inline std::optional<RepetitionWitness> find_repetition(
    const Word& w, const ExponentThreshold& thr, ScanAlgorithm algo = ScanAlgorithm::lce) {
  if (w.size() < 2) return std::nullopt;
  std::optional<detail::Candidate> best;
  if (algo == ScanAlgorithm::naive) {
    if (w.size() > 10000)
      throw std::invalid_argument("find_repetition: naive scan is limited to |w| <= 10^4");
    best = detail::scan_naive(w, thr);
  } else {
    best = detail::scan_lce(w, thr);
  }
  if (!best) return std::nullopt;
  return detail::finish_witness(w, *best);
}

inline bool is_free(const Word& w, const ExponentThreshold& thr,
                    ScanAlgorithm algo = ScanAlgorithm::lce) {
  return !find_repetition(w, thr, algo).has_value();
}

/// Maximum exponent over all factors of w, with a witness attaining it.
/// This is the critical exponent of the finite prefix only: it converges to
/// the critical exponent of an infinite word from below.
inline std::pair<Rational, RepetitionWitness> critical_exponent_prefix(const Word& w) {
  const std::size_t n = w.size();
  if (n < 2) throw std::domain_error("critical_exponent_prefix: word too short");

  // seed with the closest pair of equal letters: a genuine factor of
  // exponent (d+1)/d that lets the scan step past low periods quickly
  detail::Candidate best{0, 1, 1};
  Rational best_val(1, 1);
  {
    std::vector<std::int64_t> last(w.alphabet_size(), -1);
    std::uint64_t best_d = 0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (last[w[i]] >= 0) {
        std::uint64_t d = i - static_cast<std::size_t>(last[w[i]]);
        if (best_d == 0 || d < best_d) {
          best_d = d;
          best_i = i;
        }
      }
      last[w[i]] = static_cast<std::int64_t>(i);
    }
    if (best_d == 0) {
      // all letters distinct: every factor has exponent 1
      return {Rational(1, 1), RepetitionWitness{0, 1, 1, Rational(1, 1)}};
    }
    best = detail::Candidate{best_i - best_d, best_d + 1, best_d};
    best_val = Rational(static_cast<long long>(best_d + 1), static_cast<long long>(best_d));
  }

  LceIndex fwd(w);
  LceIndex bwd(reverse(w));
  for (std::uint64_t p = 1; p < n; ++p) {
    // anchor spacing admits only factors of exponent strictly above best_val
    std::uint64_t step =
        (static_cast<std::uint64_t>(best_val.num - best_val.den) * p) / best_val.den + 1;
    for (std::uint64_t m = 0; m + p < n; m += step) {
      std::uint64_t f = fwd.lce(m, m + p);
      std::uint64_t b = m == 0 ? 0 : bwd.lce(n - m, n - m - p);
      std::uint64_t len = p + f + b;
      if (static_cast<__int128>(len) * best_val.den >
          static_cast<__int128>(best_val.num) * p) {
        best = detail::Candidate{m - b, len, p};
        best_val = Rational(static_cast<long long>(len), static_cast<long long>(p));
        step = (static_cast<std::uint64_t>(best_val.num - best_val.den) * p) / best_val.den + 1;
      }
    }
  }
  RepetitionWitness wit = detail::finish_witness(w, best);
  return {wit.exponent, wit};
}

}  // namespace autoseq
