#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "autoseq/numeration.hpp"
#include "autoseq/word.hpp"

namespace autoseq {

/// Parse failure carrying the 1-based line number of the offending input.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

// Moore partition refinement for a complete DFA with an initial classing
// (output letters, or an accepting bit). Returns (class count, class of
// each state). Class ids are assigned in order of the first state that
// carries them, so the result is deterministic.
inline std::pair<std::uint32_t, std::vector<std::uint32_t>> moore_refine(
    std::size_t n, std::size_t alpha, const std::vector<std::uint32_t>& delta,
    std::vector<std::uint32_t> cls) {
  if (n == 0) return {0, {}};
  std::uint32_t count = 0;
  {
    std::unordered_map<std::uint32_t, std::uint32_t> renum;
    for (auto& c : cls) {
      auto [it, fresh] = renum.try_emplace(c, count);
      if (fresh) ++count;
      c = it->second;
    }
  }
  std::vector<std::uint32_t> sig;
  sig.reserve(alpha + 1);
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> buckets;
    std::vector<std::uint32_t> next(n);
    std::uint32_t next_count = 0;
    for (std::size_t q = 0; q < n; ++q) {
      sig.clear();
      sig.push_back(cls[q]);
      for (std::size_t a = 0; a < alpha; ++a) sig.push_back(cls[delta[q * alpha + a]]);
      auto [it, fresh] = buckets.try_emplace(sig, next_count);
      if (fresh) ++next_count;
      next[q] = it->second;
    }
    if (next_count == count) return {count, cls};
    count = next_count;
    cls.swap(next);
  }
}

}  // namespace detail

/// Deterministic finite automaton with output, reading msd-first digit
/// strings of the attached numeration system. Construction enforces
/// totality and leading-zero invariance (transition(initial, 0) == initial),
/// so evaluation is independent of zero padding.
class Dfao {
 public:
  Dfao(std::uint32_t state_count, std::uint32_t initial, std::vector<std::uint32_t> delta,
       std::vector<Symbol> output, NumerationSystem system, int output_alphabet_size)
      : state_count_(state_count),
        initial_(initial),
        delta_(std::move(delta)),
        output_(std::move(output)),
        system_(system),
        output_alphabet_size_(output_alphabet_size) {
    const std::size_t alpha = static_cast<std::size_t>(system_.digit_alphabet_size());
    if (state_count_ == 0) throw std::domain_error("Dfao: no states");
    if (initial_ >= state_count_) throw std::domain_error("Dfao: bad initial state");
    if (delta_.size() != state_count_ * alpha)
      throw std::domain_error("Dfao: transition table size mismatch");
    for (std::uint32_t dest : delta_)
      if (dest >= state_count_) throw std::domain_error("Dfao: transition out of range");
    if (output_.size() != state_count_) throw std::domain_error("Dfao: output table size mismatch");
    if (output_alphabet_size_ < 1 || output_alphabet_size_ > 256)
      throw std::domain_error("Dfao: bad output alphabet size");
    for (Symbol o : output_)
      if (static_cast<int>(o) >= output_alphabet_size_)
        throw std::domain_error("Dfao: output letter out of range");
    if (delta_[initial_ * alpha + 0] != initial_)
      throw std::domain_error("Dfao: leading-zero invariance violated "
                              "(transition(initial, 0) != initial)");
  }

  std::uint32_t state_count() const { return state_count_; }
  std::uint32_t initial() const { return initial_; }
  NumerationSystem system() const { return system_; }
  int output_alphabet_size() const { return output_alphabet_size_; }
  int digit_alphabet_size() const { return system_.digit_alphabet_size(); }

  std::uint32_t next(std::uint32_t state, Symbol digit) const {
    return delta_[state * static_cast<std::size_t>(digit_alphabet_size()) + digit];
  }
  Symbol output(std::uint32_t state) const { return output_[state]; }

  std::uint32_t run(const std::vector<Symbol>& digits) const {
    const std::size_t alpha = static_cast<std::size_t>(digit_alphabet_size());
    std::uint32_t q = initial_;
    for (Symbol d : digits) {
      if (static_cast<std::size_t>(d) >= alpha)
        throw std::domain_error("Dfao::run: digit out of range");
      q = delta_[q * alpha + d];
    }
    return q;
  }

  /// Sequence value at n: output of the state reached on encode(n).
  Symbol evaluate(std::uint64_t n) const { return output_[run(encode(n, system_).digits)]; }

  /// Word of the first n sequence values.
  Word sequence_prefix(std::uint64_t n) const {
    std::vector<Symbol> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(evaluate(i));
    return Word(std::move(out), output_alphabet_size_);
  }

 private:
  std::uint32_t state_count_;
  std::uint32_t initial_;
  std::vector<std::uint32_t> delta_;
  std::vector<Symbol> output_;
  NumerationSystem system_;
  int output_alphabet_size_;
};

/// Cobham construction: the coded fixed point of a k-uniform morphism is
/// k-automatic. States are the letters of the morphism's alphabet,
/// transition(q, d) = image(q)[d], output(q) = coding(q).
inline Dfao dfao_from_morphism(const Morphism& m, const Morphism& coding) {
  auto k = m.uniform_length();
  if (!k || *k < 2)
    throw std::domain_error("dfao_from_morphism: morphism must be k-uniform with k >= 2");
  if (m.target_alphabet_size() > m.source_alphabet_size())
    throw std::domain_error("dfao_from_morphism: morphism does not map its alphabet into itself");
  if (m.image(0)[0] != 0)
    throw std::domain_error("dfao_from_morphism: morphism is not prolongable from 0");
  if (!coding.is_coding())
    throw std::domain_error("dfao_from_morphism: coding must be 1-uniform");
  if (coding.source_alphabet_size() < m.source_alphabet_size())
    throw std::domain_error("dfao_from_morphism: coding does not cover the morphism alphabet");
  const std::uint32_t n = static_cast<std::uint32_t>(m.source_alphabet_size());
  const std::size_t alpha = static_cast<std::size_t>(*k);
  std::vector<std::uint32_t> delta(n * alpha);
  std::vector<Symbol> output(n);
  for (std::uint32_t q = 0; q < n; ++q) {
    const Word& img = m.image(static_cast<Symbol>(q));
    for (std::size_t d = 0; d < alpha; ++d) delta[q * alpha + d] = img[d];
    output[q] = coding.image(static_cast<Symbol>(q))[0];
  }
  return Dfao(n, 0, std::move(delta), std::move(output),
              NumerationSystem::base(*k), coding.target_alphabet_size());
}

/// Output-equivalent DFAO with the minimum number of states: unreachable
/// states dropped, then Moore refinement seeded by output letters, then the
/// quotient renumbered in breadth-first order from the initial state.
inline Dfao minimize(const Dfao& a) {
  const std::size_t alpha = static_cast<std::size_t>(a.digit_alphabet_size());
  const std::uint32_t UNSEEN = 0xffffffffu;

  std::vector<std::uint32_t> reach_id(a.state_count(), UNSEEN);
  std::vector<std::uint32_t> order;
  reach_id[a.initial()] = 0;
  order.push_back(a.initial());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t d = 0; d < alpha; ++d) {
      std::uint32_t t = a.next(order[i], static_cast<Symbol>(d));
      if (reach_id[t] == UNSEEN) {
        reach_id[t] = static_cast<std::uint32_t>(order.size());
        order.push_back(t);
      }
    }

  const std::size_t n = order.size();
  std::vector<std::uint32_t> delta(n * alpha);
  std::vector<std::uint32_t> cls(n);
  for (std::size_t q = 0; q < n; ++q) {
    cls[q] = a.output(order[q]);
    for (std::size_t d = 0; d < alpha; ++d)
      delta[q * alpha + d] = reach_id[a.next(order[q], static_cast<Symbol>(d))];
  }
  auto [count, cls_of] = detail::moore_refine(n, alpha, delta, std::move(cls));

  // one representative per class, then BFS renumbering from the initial class
  std::vector<std::uint32_t> repr(count, UNSEEN);
  for (std::size_t q = 0; q < n; ++q)
    if (repr[cls_of[q]] == UNSEEN) repr[cls_of[q]] = static_cast<std::uint32_t>(q);
  std::vector<std::uint32_t> newid(count, UNSEEN);
  std::vector<std::uint32_t> bfs;
  newid[cls_of[0]] = 0;
  bfs.push_back(cls_of[0]);
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (std::size_t d = 0; d < alpha; ++d) {
      std::uint32_t t = cls_of[delta[repr[bfs[i]] * alpha + d]];
      if (newid[t] == UNSEEN) {
        newid[t] = static_cast<std::uint32_t>(bfs.size());
        bfs.push_back(t);
      }
    }

  std::vector<std::uint32_t> out_delta(count * alpha);
  std::vector<Symbol> out_output(count);
  for (std::uint32_t c = 0; c < count; ++c) {
    std::uint32_t q = repr[bfs[c]];
    out_output[c] = a.output(order[q]);
    for (std::size_t d = 0; d < alpha; ++d)
      out_delta[c * alpha + d] = newid[cls_of[delta[q * alpha + d]]];
  }
  return Dfao(count, 0, std::move(out_delta), std::move(out_output), a.system(),
              a.output_alphabet_size());
}

/// Converts a DFAO over base k^j into one over base k computing the same
/// sequence. Each new state tracks, for every block alignment, the base-k^j
/// state reached on the completed blocks plus the value of the partial
/// block; inputs are implicitly padded with leading zeros to a multiple of
/// j, which is sound by leading-zero invariance.
inline Dfao base_power_convert(const Dfao& a, int k, int j) {
  if (a.system().kind() != NumerationKind::base_k)
    throw std::domain_error("base_power_convert: input must be a base-k DFAO");
  if (k < 2 || j < 1) throw std::domain_error("base_power_convert: need k >= 2, j >= 1");
  std::uint64_t pow = 1;
  for (int i = 0; i < j; ++i) {
    pow *= static_cast<std::uint64_t>(k);
    if (pow > 1u << 20) throw std::domain_error("base_power_convert: k^j too large");
  }
  if (pow != static_cast<std::uint64_t>(a.system().base_k()))
    throw std::domain_error("base_power_convert: input base is not k^j");

  // component at index l: (state on completed blocks, value of the trailing
  // partial block of l digits), for the alignment whose partial length is l
  using State = std::vector<std::uint32_t>;  // 2*j entries: q0,v0,q1,v1,...
  const std::size_t alpha = static_cast<std::size_t>(k);
  std::map<State, std::uint32_t> ids;
  std::vector<State> states;
  State init(2 * j, 0);
  for (int l = 0; l < j; ++l) init[2 * l] = a.initial();
  ids.emplace(init, 0);
  states.push_back(init);
  std::vector<std::uint32_t> delta;
  std::vector<Symbol> output;
  for (std::size_t q = 0; q < states.size(); ++q) {
    State cur = states[q];
    output.push_back(a.output(cur[0]));
    for (std::size_t d = 0; d < alpha; ++d) {
      State nxt(2 * j);
      for (int l = 0; l < j; ++l) {
        std::uint32_t st = cur[2 * l];
        std::uint32_t v = cur[2 * l + 1] * static_cast<std::uint32_t>(k) +
                          static_cast<std::uint32_t>(d);
        if (l == j - 1) {
          nxt[0] = a.next(st, static_cast<Symbol>(v));
          nxt[1] = 0;
        } else {
          nxt[2 * (l + 1)] = st;
          nxt[2 * (l + 1) + 1] = v;
        }
      }
      auto [it, fresh] = ids.try_emplace(nxt, static_cast<std::uint32_t>(states.size()));
      if (fresh) states.push_back(nxt);
      delta.push_back(it->second);
    }
  }
  const std::uint32_t n = static_cast<std::uint32_t>(states.size());
  return Dfao(n, 0, std::move(delta), std::move(output), NumerationSystem::base(k),
              a.output_alphabet_size());
}

/// Text format: first line the numeration tag, then for each state a header
/// `STATE_ID OUTPUT` followed by one `DIGIT -> DEST_ID` line per digit.
/// State 0 is initial; blank lines are ignored; `#` starts a comment.
inline std::string write_text(const Dfao& a) {
  std::ostringstream out;
  out << a.system().tag() << "\n";
  const int alpha = a.digit_alphabet_size();
  // the format fixes state 0 as initial: swap ids 0 <-> initial if needed
  auto rename = [&](std::uint32_t q) -> std::uint32_t {
    if (q == a.initial()) return 0;
    if (q == 0) return a.initial();
    return q;
  };
  for (std::uint32_t row = 0; row < a.state_count(); ++row) {
    std::uint32_t q = rename(row);  // rename is an involution
    out << "\n" << row << " " << int(a.output(q)) << "\n";
    for (int d = 0; d < alpha; ++d)
      out << d << " -> " << rename(a.next(q, static_cast<Symbol>(d))) << "\n";
  }
  return out.str();
}

inline Dfao read_text(std::string_view text) {
  struct Line {
    std::size_t number;
    std::string body;
  };
  std::vector<Line> lines;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t num = 0;
    while (std::getline(in, raw)) {
      ++num;
      std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::size_t b = raw.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      std::size_t e = raw.find_last_not_of(" \t\r");
      lines.push_back(Line{num, raw.substr(b, e - b + 1)});
    }
  }
  if (lines.empty()) throw parse_error(1, "empty automaton file");

  NumerationSystem sys = [&] {
    try {
      return NumerationSystem::from_tag(lines[0].body);
    } catch (const std::invalid_argument& e) {
      throw parse_error(lines[0].number, e.what());
    }
  }();
  const int alpha = sys.digit_alphabet_size();

  std::map<std::uint32_t, std::pair<Symbol, std::vector<std::int64_t>>> table;
  std::size_t i = 1;
  while (i < lines.size()) {
    std::istringstream head(lines[i].body);
    long long id = -1, out = -1;
    if (!(head >> id >> out) || id < 0 || out < 0 || out > 255)
      throw parse_error(lines[i].number, "expected state header 'STATE_ID OUTPUT'");
    std::string extra;
    if (head >> extra) throw parse_error(lines[i].number, "trailing tokens after state header");
    if (table.count(static_cast<std::uint32_t>(id)))
      throw parse_error(lines[i].number, "duplicate state " + std::to_string(id));
    auto& entry = table[static_cast<std::uint32_t>(id)];
    entry.first = static_cast<Symbol>(out);
    entry.second.assign(alpha, -1);
    ++i;
    while (i < lines.size() && lines[i].body.find("->") != std::string::npos) {
      std::string body = lines[i].body;
      std::size_t arrow = body.find("->");
      std::istringstream lhs(body.substr(0, arrow)), rhs(body.substr(arrow + 2));
      long long digit = -1, dest = -1;
      std::string junk;
      if (!(lhs >> digit) || (lhs >> junk) || !(rhs >> dest) || (rhs >> junk) || digit < 0 ||
          dest < 0)
        throw parse_error(lines[i].number, "expected transition 'DIGIT -> DEST_ID'");
      if (digit >= alpha)
        throw parse_error(lines[i].number,
                          "digit " + std::to_string(digit) + " out of range for " + sys.tag());
      if (entry.second[digit] != -1)
        throw parse_error(lines[i].number, "duplicate transition for digit " + std::to_string(digit));
      entry.second[digit] = dest;
      ++i;
    }
    for (int d = 0; d < alpha; ++d)
      if (entry.second[d] == -1)
        throw parse_error(lines[i - 1].number, "state " + std::to_string(id) +
                                                   " omits a transition for digit " +
                                                   std::to_string(d));
  }

  const std::uint32_t n = static_cast<std::uint32_t>(table.size());
  if (n == 0) throw parse_error(lines[0].number, "no states");
  for (std::uint32_t q = 0; q < n; ++q)
    if (!table.count(q))
      throw parse_error(lines.back().number, "missing state " + std::to_string(q));
  std::vector<std::uint32_t> delta(static_cast<std::size_t>(n) * alpha);
  std::vector<Symbol> output(n);
  for (auto& [q, entry] : table) {
    output[q] = entry.first;
    for (int d = 0; d < alpha; ++d) {
      if (entry.second[d] >= n)
        throw parse_error(lines.back().number, "transition to unknown state " +
                                                   std::to_string(entry.second[d]));
      delta[static_cast<std::size_t>(q) * alpha + d] =
          static_cast<std::uint32_t>(entry.second[d]);
    }
  }
  int out_alpha = 0;
  for (Symbol o : output) out_alpha = std::max(out_alpha, int(o) + 1);
  return Dfao(n, 0, std::move(delta), std::move(output), sys, out_alpha);
}

/// Graphviz export: states labeled `id/output`, one edge per digit, the
/// initial state drawn with a double border.
inline std::string to_dot(const Dfao& a) {
  std::ostringstream out;
  out << "digraph dfao {\n  rankdir=LR;\n";
  for (std::uint32_t q = 0; q < a.state_count(); ++q) {
    out << "  n" << q << " [shape=circle label=\"" << q << "/" << int(a.output(q)) << "\"";
    if (q == a.initial()) out << " peripheries=2";
    out << "];\n";
  }
  for (std::uint32_t q = 0; q < a.state_count(); ++q)
    for (int d = 0; d < a.digit_alphabet_size(); ++d)
      out << "  n" << q << " -> n" << a.next(q, static_cast<Symbol>(d)) << " [label=\"" << d
          << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace autoseq
