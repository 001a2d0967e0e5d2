#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "autoseq/dfao.hpp"
#include "autoseq/repetitions.hpp"

namespace autoseq {

enum class Rel { eq, le, lt, ge, gt };

inline std::string rel_to_string(Rel r) {
  switch (r) {
    case Rel::eq: return "=";
    case Rel::le: return "<=";
    case Rel::lt: return "<";
    case Rel::ge: return ">=";
    default: return ">";
  }
}

/// Affine relation sum(coeff_i * var_i) REL constant over natural numbers.
class LinearConstraint {
 public:
  LinearConstraint(std::vector<std::pair<std::string, long long>> terms, Rel rel,
                   long long constant)
      : rel_(rel), constant_(constant) {
    std::map<std::string, long long> merged;
    for (auto& [v, c] : terms) merged[v] += c;
    for (auto& [v, c] : merged)
      if (c != 0) terms_.emplace_back(v, c);
    if (terms_.empty())
      throw std::domain_error("LinearConstraint: at least one nonzero coefficient required");
  }

  const std::vector<std::pair<std::string, long long>>& terms() const { return terms_; }
  Rel rel() const { return rel_; }
  long long constant() const { return constant_; }

  bool holds(long long lhs) const {
    switch (rel_) {
      case Rel::eq: return lhs == constant_;
      case Rel::le: return lhs <= constant_;
      case Rel::lt: return lhs < constant_;
      case Rel::ge: return lhs >= constant_;
      default: return lhs > constant_;
    }
  }

 private:
  std::vector<std::pair<std::string, long long>> terms_;  // sorted by variable name
  Rel rel_;
  long long constant_;
};

/// Deterministic complete automaton over tuples of base-k digits, one track
/// per variable, reading msd-first with shorter values padded by leading
/// zeros. Acceptance is invariant under prepending all-zero tuples, so the
/// language is a property of the variable values alone.
class PredicateAutomaton {
 public:
  PredicateAutomaton(std::vector<std::string> vars, int base, std::uint32_t initial,
                     std::vector<std::uint32_t> delta, std::vector<std::uint8_t> accepting)
      : vars_(std::move(vars)),
        base_(base),
        initial_(initial),
        delta_(std::move(delta)),
        accepting_(std::move(accepting)) {
    if (base_ < 2) throw std::domain_error("PredicateAutomaton: base must be >= 2");
    if (!std::is_sorted(vars_.begin(), vars_.end()) ||
        std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
      throw std::domain_error("PredicateAutomaton: variables must be sorted and distinct");
    const std::size_t alpha = alphabet_size();
    const std::size_t n = accepting_.size();
    if (n == 0 || initial_ >= n || delta_.size() != n * alpha)
      throw std::domain_error("PredicateAutomaton: malformed tables");
    for (std::uint32_t t : delta_)
      if (t >= n) throw std::domain_error("PredicateAutomaton: transition out of range");
  }

  const std::vector<std::string>& vars() const { return vars_; }
  int base() const { return base_; }
  std::uint32_t initial() const { return initial_; }
  std::uint32_t state_count() const { return static_cast<std::uint32_t>(accepting_.size()); }
  bool accepting(std::uint32_t q) const { return accepting_[q] != 0; }

  std::size_t alphabet_size() const {
    std::size_t a = 1;
    for (std::size_t i = 0; i < vars_.size(); ++i) a *= static_cast<std::size_t>(base_);
    return a;
  }

  std::uint32_t next(std::uint32_t q, std::size_t letter) const {
    return delta_[q * alphabet_size() + letter];
  }

  /// Runs the automaton on a sequence of tuple letters.
  bool accepts_letters(const std::vector<std::uint32_t>& letters) const {
    const std::size_t alpha = alphabet_size();
    std::uint32_t q = initial_;
    for (std::uint32_t l : letters) {
      if (l >= alpha) throw std::domain_error("PredicateAutomaton: letter out of range");
      q = delta_[q * alpha + l];
    }
    return accepting_[q] != 0;
  }

  /// Acceptance of a value assignment (aligned with vars()): the values are
  /// encoded in base k and padded to a common length.
  bool accepts_values(const std::vector<std::uint64_t>& values) const {
    if (values.size() != vars_.size())
      throw std::domain_error("PredicateAutomaton: value count mismatch");
    std::size_t maxlen = 1;
    std::vector<std::vector<Symbol>> digits(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      digits[i] = encode(values[i], NumerationSystem::base(base_)).digits;
      maxlen = std::max(maxlen, digits[i].size());
    }
    std::vector<std::uint32_t> letters(maxlen, 0);
    for (std::size_t pos = 0; pos < maxlen; ++pos) {
      std::uint32_t letter = 0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        std::size_t pad = maxlen - digits[i].size();
        Symbol d = pos < pad ? Symbol{0} : digits[i][pos - pad];
        letter = letter * static_cast<std::uint32_t>(base_) + d;
      }
      letters[pos] = letter;
    }
    return accepts_letters(letters);
  }

  const std::vector<std::uint32_t>& delta() const { return delta_; }
  const std::vector<std::uint8_t>& accepting_table() const { return accepting_; }

 private:
  std::vector<std::string> vars_;
  int base_;
  std::uint32_t initial_;
  std::vector<std::uint32_t> delta_;
  std::vector<std::uint8_t> accepting_;
};

namespace detail {

inline std::size_t int_pow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Canonical form: unreachable states dropped, Moore-minimized, states
// renumbered in BFS order from the initial state.
inline PredicateAutomaton minimize_predicate(const PredicateAutomaton& a) {
  const std::size_t alpha = a.alphabet_size();
  const std::uint32_t UNSEEN = 0xffffffffu;
  std::vector<std::uint32_t> reach_id(a.state_count(), UNSEEN);
  std::vector<std::uint32_t> order;
  reach_id[a.initial()] = 0;
  order.push_back(a.initial());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t l = 0; l < alpha; ++l) {
      std::uint32_t t = a.next(order[i], l);
      if (reach_id[t] == UNSEEN) {
        reach_id[t] = static_cast<std::uint32_t>(order.size());
        order.push_back(t);
      }
    }
  const std::size_t n = order.size();
  std::vector<std::uint32_t> delta(n * alpha);
  std::vector<std::uint32_t> cls(n);
  for (std::size_t q = 0; q < n; ++q) {
    cls[q] = a.accepting(order[q]) ? 1 : 0;
    for (std::size_t l = 0; l < alpha; ++l) delta[q * alpha + l] = reach_id[a.next(order[q], l)];
  }
  auto [count, cls_of] = moore_refine(n, alpha, delta, std::move(cls));

  std::vector<std::uint32_t> repr(count, UNSEEN);
  for (std::size_t q = 0; q < n; ++q)
    if (repr[cls_of[q]] == UNSEEN) repr[cls_of[q]] = static_cast<std::uint32_t>(q);
  std::vector<std::uint32_t> newid(count, UNSEEN);
  std::vector<std::uint32_t> bfs;
  newid[cls_of[0]] = 0;
  bfs.push_back(cls_of[0]);
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (std::size_t l = 0; l < alpha; ++l) {
      std::uint32_t t = cls_of[delta[repr[bfs[i]] * alpha + l]];
      if (newid[t] == UNSEEN) {
        newid[t] = static_cast<std::uint32_t>(bfs.size());
        bfs.push_back(t);
      }
    }
  std::vector<std::uint32_t> out_delta(count * alpha);
  std::vector<std::uint8_t> out_acc(count);
  for (std::uint32_t c = 0; c < count; ++c) {
    std::uint32_t q = repr[bfs[c]];
    out_acc[c] = a.accepting(order[q]) ? 1 : 0;
    for (std::size_t l = 0; l < alpha; ++l)
      out_delta[c * alpha + l] = newid[cls_of[delta[q * alpha + l]]];
  }
  return PredicateAutomaton(a.vars(), a.base(), 0, std::move(out_delta), std::move(out_acc));
}

// Map from letters over `sup` to letters over the subset `sub` (both sorted).
inline std::vector<std::uint32_t> letter_restriction(const std::vector<std::string>& sup,
                                                     const std::vector<std::string>& sub,
                                                     int base) {
  std::vector<std::size_t> pos;
  for (const auto& v : sub) {
    auto it = std::lower_bound(sup.begin(), sup.end(), v);
    pos.push_back(static_cast<std::size_t>(it - sup.begin()));
  }
  const std::size_t m = sup.size();
  const std::size_t alpha = int_pow(base, m);
  std::vector<std::uint32_t> map(alpha);
  std::vector<Symbol> digits(m);
  for (std::size_t letter = 0; letter < alpha; ++letter) {
    std::size_t rest = letter;
    for (std::size_t i = m; i-- > 0;) {
      digits[i] = static_cast<Symbol>(rest % base);
      rest /= base;
    }
    std::uint32_t out = 0;
    for (std::size_t p : pos) out = out * base + digits[p];
    map[letter] = out;
  }
  return map;
}

}  // namespace detail

/// Automaton of the tuples satisfying a linear constraint, built directly in
/// msd order: states track the running value of the affine form, clamped
/// once its magnitude exceeds the bound beyond which no suffix can change
/// the verdict.
inline PredicateAutomaton relation_automaton(const LinearConstraint& c, int base) {
  if (base < 2) throw std::domain_error("relation_automaton: base must be >= 2");
  std::vector<std::string> vars;
  std::vector<long long> coeff;
  for (auto& [v, cf] : c.terms()) {
    vars.push_back(v);
    coeff.push_back(cf);
  }
  long long coeff_sum = 0;
  for (long long cf : coeff) coeff_sum += cf < 0 ? -cf : cf;
  const long long K = c.constant();
  const long long B = coeff_sum + (K < 0 ? -K : K) + 1;
  const std::size_t n = static_cast<std::size_t>(2 * B + 1);
  const std::size_t m = vars.size();
  const std::size_t alpha = detail::int_pow(base, m);

  auto clamp = [&](long long v) -> long long { return v > B ? B : (v < -B ? -B : v); };
  std::vector<std::uint32_t> delta(n * alpha);
  std::vector<std::uint8_t> acc(n);
  std::vector<Symbol> digits(m);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const long long v = static_cast<long long>(idx) - B;
    acc[idx] = c.holds(v) ? 1 : 0;
    for (std::size_t letter = 0; letter < alpha; ++letter) {
      std::size_t rest = letter;
      for (std::size_t i = m; i-- > 0;) {
        digits[i] = static_cast<Symbol>(rest % base);
        rest /= base;
      }
      long long step = v * base;
      for (std::size_t i = 0; i < m; ++i) step += coeff[i] * digits[i];
      delta[idx * alpha + letter] = static_cast<std::uint32_t>(clamp(step) + B);
    }
  }
  return detail::minimize_predicate(
      PredicateAutomaton(std::move(vars), base, static_cast<std::uint32_t>(B), std::move(delta),
                         std::move(acc)));
}

/// Automaton of the pairs (var1, var2) with a[var1] = a[var2]: the product
/// of two copies of the DFAO, accepting where the outputs agree.
inline PredicateAutomaton sequence_equality_automaton(const Dfao& a, const std::string& var1,
                                                      const std::string& var2) {
  if (a.system().kind() != NumerationKind::base_k)
    throw std::domain_error(
        "sequence_equality_automaton: only base-k sequences are supported");
  if (var1 == var2)
    throw std::domain_error("sequence_equality_automaton: variables must differ");
  const int base = a.system().base_k();
  std::vector<std::string> vars{var1, var2};
  std::sort(vars.begin(), vars.end());
  const bool swapped = vars[0] != var1;
  const std::size_t alpha = static_cast<std::size_t>(base) * base;
  const std::uint32_t n0 = a.state_count();
  const std::size_t n = static_cast<std::size_t>(n0) * n0;
  std::vector<std::uint32_t> delta(n * alpha);
  std::vector<std::uint8_t> acc(n);
  for (std::uint32_t q1 = 0; q1 < n0; ++q1)
    for (std::uint32_t q2 = 0; q2 < n0; ++q2) {
      const std::size_t idx = static_cast<std::size_t>(q1) * n0 + q2;
      acc[idx] = a.output(q1) == a.output(q2) ? 1 : 0;
      for (int d1 = 0; d1 < base; ++d1)
        for (int d2 = 0; d2 < base; ++d2) {
          // track order follows sorted variable names
          std::size_t letter = swapped ? static_cast<std::size_t>(d2) * base + d1
                                       : static_cast<std::size_t>(d1) * base + d2;
          delta[idx * alpha + letter] = a.next(q1, static_cast<Symbol>(d1)) * n0 +
                                        a.next(q2, static_cast<Symbol>(d2));
        }
    }
  const std::uint32_t init = a.initial() * n0 + a.initial();
  return detail::minimize_predicate(
      PredicateAutomaton(std::move(vars), base, init, std::move(delta), std::move(acc)));
}

inline PredicateAutomaton negation(const PredicateAutomaton& a) {
  std::vector<std::uint8_t> acc(a.accepting_table());
  for (auto& b : acc) b = b ? 0 : 1;
  return PredicateAutomaton(a.vars(), a.base(), a.initial(), a.delta(), std::move(acc));
}

namespace detail {

inline PredicateAutomaton boolean_product(const PredicateAutomaton& a,
                                          const PredicateAutomaton& b, bool disjunction) {
  if (a.base() != b.base())
    throw std::domain_error("combine: operand automata use different bases");
  std::vector<std::string> vars;
  std::set_union(a.vars().begin(), a.vars().end(), b.vars().begin(), b.vars().end(),
                 std::back_inserter(vars));
  const int base = a.base();
  const std::size_t alpha = int_pow(base, vars.size());
  auto map_a = letter_restriction(vars, a.vars(), base);
  auto map_b = letter_restriction(vars, b.vars(), base);

  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> states;
  auto intern = [&](std::uint32_t qa, std::uint32_t qb) -> std::uint32_t {
    std::uint64_t key = (static_cast<std::uint64_t>(qa) << 32) | qb;
    auto [it, fresh] = ids.try_emplace(key, static_cast<std::uint32_t>(states.size()));
    if (fresh) states.emplace_back(qa, qb);
    return it->second;
  };
  intern(a.initial(), b.initial());
  std::vector<std::uint32_t> delta;
  std::vector<std::uint8_t> acc;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [qa, qb] = states[i];
    bool in_a = a.accepting(qa), in_b = b.accepting(qb);
    acc.push_back((disjunction ? (in_a || in_b) : (in_a && in_b)) ? 1 : 0);
    for (std::size_t l = 0; l < alpha; ++l)
      delta.push_back(intern(a.next(qa, map_a[l]), b.next(qb, map_b[l])));
  }
  return minimize_predicate(
      PredicateAutomaton(std::move(vars), base, 0, std::move(delta), std::move(acc)));
}

}  // namespace detail

inline PredicateAutomaton conjunction(const PredicateAutomaton& a, const PredicateAutomaton& b) {
  return detail::boolean_product(a, b, false);
}

inline PredicateAutomaton disjunction(const PredicateAutomaton& a, const PredicateAutomaton& b) {
  return detail::boolean_product(a, b, true);
}

inline PredicateAutomaton implication(const PredicateAutomaton& a, const PredicateAutomaton& b) {
  return disjunction(negation(a), b);
}

enum class BooleanOp { op_and, op_or, op_not };

/// Boolean combination of predicate automata. `op_not` takes one argument;
/// the binary operations fold left over two or more.
inline PredicateAutomaton combine(BooleanOp op, const std::vector<PredicateAutomaton>& args) {
  if (op == BooleanOp::op_not) {
    if (args.size() != 1) throw std::domain_error("combine: 'not' takes exactly one argument");
    return negation(args[0]);
  }
  if (args.size() < 2) throw std::domain_error("combine: binary operation needs two arguments");
  PredicateAutomaton acc = args[0];
  for (std::size_t i = 1; i < args.size(); ++i)
    acc = op == BooleanOp::op_and ? conjunction(acc, args[i]) : disjunction(acc, args[i]);
  return acc;
}

/// Existential projection: erases the variable's track, closes the initial
/// state under leading-zero steps (so witnesses longer than the remaining
/// representations stay expressible), then determinizes by subset
/// construction and minimizes.
inline PredicateAutomaton project(const PredicateAutomaton& a, const std::string& var) {
  auto it = std::lower_bound(a.vars().begin(), a.vars().end(), var);
  if (it == a.vars().end() || *it != var)
    throw std::domain_error("project: unknown variable '" + var + "'");
  const std::size_t track = static_cast<std::size_t>(it - a.vars().begin());
  const std::size_t m = a.vars().size();
  const int base = a.base();
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < m; ++i)
    if (i != track) vars.push_back(a.vars()[i]);
  const std::size_t alpha_new = detail::int_pow(base, vars.size());

  // embed[l * base + d] = full letter with digit d on the erased track
  std::vector<std::uint32_t> embed(alpha_new * base);
  {
    std::vector<Symbol> digits(m);
    for (std::size_t l = 0; l < alpha_new; ++l) {
      std::size_t rest = l;
      for (std::size_t i = m; i-- > 0;) {
        if (i == track) continue;
        std::size_t ii = i > track ? i : i;  // positions after track shift by one
        (void)ii;
        digits[i] = 0;
      }
      // decode l over the remaining tracks msd-first
      rest = l;
      for (std::size_t i = m; i-- > 0;) {
        if (i == track) {
          digits[i] = 0;
          continue;
        }
        digits[i] = static_cast<Symbol>(rest % base);
        rest /= base;
      }
      for (int d = 0; d < base; ++d) {
        digits[track] = static_cast<Symbol>(d);
        std::uint32_t letter = 0;
        for (std::size_t i = 0; i < m; ++i)
          letter = letter * static_cast<std::uint32_t>(base) + digits[i];
        embed[l * base + d] = letter;
      }
    }
  }

  // initial subset: closure of the initial state under all-zero remaining
  // tuples with any digit on the erased track
  std::vector<std::uint8_t> in_init(a.state_count(), 0);
  std::vector<std::uint32_t> init_list{a.initial()};
  in_init[a.initial()] = 1;
  for (std::size_t i = 0; i < init_list.size(); ++i)
    for (int d = 0; d < base; ++d) {
      std::uint32_t t = a.next(init_list[i], embed[0 * base + d]);
      if (!in_init[t]) {
        in_init[t] = 1;
        init_list.push_back(t);
      }
    }
  std::sort(init_list.begin(), init_list.end());

  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  std::vector<std::vector<std::uint32_t>> subsets;
  ids.emplace(init_list, 0);
  subsets.push_back(init_list);
  std::vector<std::uint32_t> delta;
  std::vector<std::uint8_t> acc;
  std::vector<std::uint8_t> stamp(a.state_count());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const auto subset = subsets[i];
    bool any_acc = false;
    for (std::uint32_t q : subset) any_acc = any_acc || a.accepting(q);
    acc.push_back(any_acc ? 1 : 0);
    for (std::size_t l = 0; l < alpha_new; ++l) {
      std::fill(stamp.begin(), stamp.end(), 0);
      std::vector<std::uint32_t> dest;
      for (std::uint32_t q : subset)
        for (int d = 0; d < base; ++d) {
          std::uint32_t t = a.next(q, embed[l * base + d]);
          if (!stamp[t]) {
            stamp[t] = 1;
            dest.push_back(t);
          }
        }
      std::sort(dest.begin(), dest.end());
      auto [it2, fresh] = ids.try_emplace(dest, static_cast<std::uint32_t>(subsets.size()));
      if (fresh) subsets.push_back(std::move(dest));
      delta.push_back(it2->second);
    }
  }
  return detail::minimize_predicate(
      PredicateAutomaton(std::move(vars), base, 0, std::move(delta), std::move(acc)));
}

struct EmptinessResult {
  bool empty = true;
  /// Radix-least accepted assignment, aligned with the automaton's vars().
  std::vector<std::uint64_t> model;
};

/// Reachability check with model extraction: when the language is nonempty,
/// returns the values read off the shortest (then lexicographically least)
/// accepted word.
inline EmptinessResult is_empty(const PredicateAutomaton& a) {
  const std::size_t alpha = a.alphabet_size();
  const std::uint32_t UNSEEN = 0xffffffffu;
  std::vector<std::uint32_t> parent(a.state_count(), UNSEEN);
  std::vector<std::uint32_t> via(a.state_count(), 0);
  std::vector<std::uint32_t> depth(a.state_count(), UNSEEN);
  std::vector<std::uint32_t> queue{a.initial()};
  depth[a.initial()] = 0;

  std::optional<std::uint32_t> hit;
  if (a.accepting(a.initial())) hit = a.initial();
  std::uint32_t hit_depth = hit ? 0 : UNSEEN;
  for (std::size_t i = 0; i < queue.size() && !hit; ++i) {
    std::uint32_t q = queue[i];
    if (depth[q] + 1 > hit_depth) break;
    for (std::size_t l = 0; l < alpha; ++l) {
      std::uint32_t t = a.next(q, l);
      if (depth[t] != UNSEEN) continue;
      depth[t] = depth[q] + 1;
      parent[t] = q;
      via[t] = static_cast<std::uint32_t>(l);
      queue.push_back(t);
      if (a.accepting(t) && !hit) {
        hit = t;
        hit_depth = depth[t];
      }
    }
    if (hit) break;
  }
  if (!hit) return EmptinessResult{true, {}};

  std::vector<std::uint32_t> letters;
  for (std::uint32_t q = *hit; parent[q] != UNSEEN; q = parent[q]) letters.push_back(via[q]);
  std::reverse(letters.begin(), letters.end());

  const std::size_t m = a.vars().size();
  std::vector<std::uint64_t> values(m, 0);
  for (std::uint32_t letter : letters) {
    std::size_t rest = letter;
    std::vector<Symbol> digits(m);
    for (std::size_t i = m; i-- > 0;) {
      digits[i] = static_cast<Symbol>(rest % a.base());
      rest /= a.base();
    }
    for (std::size_t i = 0; i < m; ++i)
      values[i] = values[i] * static_cast<std::uint64_t>(a.base()) + digits[i];
  }
  return EmptinessResult{false, std::move(values)};
}

struct PowerFreeVerdict {
  bool free = false;
  /// When not free: a violating factor, re-verified against the sequence.
  std::optional<RepetitionWitness> witness;
};

/// Decides alpha-freeness (or alpha^+-freeness) of the entire infinite
/// sequence computed by a base-k DFAO. A factor of length n and period p
/// breaches the threshold a/b exactly when b*n > a*p (strict) or
/// b*n >= a*p (non-strict); the position variable u ranges over
/// u >= i and b*u <= b*i + (a-b)*p + c with c = 0 strict, c = -1 otherwise.
/// A "free" verdict is a proof for the whole sequence, not a prefix check.
inline PowerFreeVerdict decide_power_free(const Dfao& a, const ExponentThreshold& thr) {
  if (a.system().kind() != NumerationKind::base_k)
    throw std::domain_error(
        "decide_power_free: only base-k numeration is supported (Fibonacci/Tribonacci "
        "sequences are handled by bounded prefix scans)");
  const int base = a.system().base_k();
  const long long an = thr.alpha().num;
  const long long bd = thr.alpha().den;
  const long long c = thr.strict() ? 0 : -1;

  PredicateAutomaton eqv = sequence_equality_automaton(a, "u", "v");
  PredicateAutomaton sum =
      relation_automaton(LinearConstraint({{"u", 1}, {"p", 1}, {"v", -1}}, Rel::eq, 0), base);
  PredicateAutomaton atom = project(conjunction(sum, eqv), "v");  // a[u] = a[u+p]
  PredicateAutomaton u_ge_i =
      relation_automaton(LinearConstraint({{"u", 1}, {"i", -1}}, Rel::ge, 0), base);
  PredicateAutomaton range = relation_automaton(
      LinearConstraint({{"u", bd}, {"i", -bd}, {"p", -(an - bd)}}, Rel::le, c), base);
  PredicateAutomaton inner = disjunction(negation(conjunction(u_ge_i, range)), atom);
  PredicateAutomaton forall_u = negation(project(negation(inner), "u"));
  PredicateAutomaton p_pos =
      relation_automaton(LinearConstraint({{"p", 1}}, Rel::ge, 1), base);
  PredicateAutomaton bad = conjunction(p_pos, forall_u);

  EmptinessResult res = is_empty(bad);
  if (res.empty) return PowerFreeVerdict{true, std::nullopt};

  // model is aligned with sorted vars {i, p}
  const std::uint64_t i0 = res.model[0];
  const std::uint64_t p0 = res.model[1];
  const std::uint64_t len = thr.min_violating_length(p0);
  for (std::uint64_t t = 0; t + p0 < len; ++t)
    if (a.evaluate(i0 + t) != a.evaluate(i0 + t + p0))
      throw std::logic_error("decide_power_free: witness failed direct re-evaluation");
  std::vector<Symbol> sym;
  sym.reserve(len);
  for (std::uint64_t t = 0; t < len; ++t) sym.push_back(a.evaluate(i0 + t));
  Word factor(std::move(sym), a.output_alphabet_size());
  std::uint64_t sp = smallest_period(factor);
  return PowerFreeVerdict{
      false, RepetitionWitness{i0, len, sp,
                               Rational(static_cast<long long>(len), static_cast<long long>(sp))}};
}

}  // namespace autoseq
