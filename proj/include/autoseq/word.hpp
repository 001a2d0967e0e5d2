#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace autoseq {

using Symbol = std::uint8_t;

/// Finite word over the integer alphabet {0, ..., alphabet_size-1}.
/// Immutable after construction; all word operations below are pure.
class Word {
 public:
  Word() = default;

  Word(std::vector<Symbol> symbols, int alphabet_size)
      : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
    if (alphabet_size_ < 1 || alphabet_size_ > 256)
      throw std::domain_error("Word: alphabet size must be in 1..256");
    for (Symbol s : symbols_)
      if (static_cast<int>(s) >= alphabet_size_)
        throw std::domain_error("Word: symbol " + std::to_string(int(s)) +
                                " out of alphabet of size " + std::to_string(alphabet_size_));
  }

  /// Parses a word written as decimal digits, e.g. "0110".
  /// With alphabet_size == 0 the alphabet is inferred as max digit + 1.
  static Word from_digits(std::string_view digits, int alphabet_size = 0) {
    std::vector<Symbol> sym;
    sym.reserve(digits.size());
    int maxd = -1;
    for (char c : digits) {
      if (c < '0' || c > '9')
        throw std::invalid_argument(std::string("Word: invalid digit character '") + c + "'");
      sym.push_back(static_cast<Symbol>(c - '0'));
      maxd = std::max(maxd, c - '0');
    }
    if (alphabet_size == 0) alphabet_size = maxd + 1 > 0 ? maxd + 1 : 1;
    return Word(std::move(sym), alphabet_size);
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  int alphabet_size() const { return alphabet_size_; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  Word slice(std::size_t pos, std::size_t len) const {
    if (pos > symbols_.size() || pos + len > symbols_.size())
      throw std::out_of_range("Word::slice: range out of bounds");
    return Word(std::vector<Symbol>(symbols_.begin() + pos, symbols_.begin() + pos + len),
                alphabet_size_);
  }

  std::string to_digits() const {
    if (alphabet_size_ > 10)
      throw std::domain_error("Word::to_digits: alphabet too large for digit notation");
    std::string s;
    s.reserve(symbols_.size());
    for (Symbol x : symbols_) s.push_back(static_cast<char>('0' + x));
    return s;
  }

  friend bool operator==(const Word& a, const Word& b) { return a.symbols_ == b.symbols_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  /// Lexicographic order on the symbol sequences.
  friend bool operator<(const Word& a, const Word& b) { return a.symbols_ < b.symbols_; }

  friend Word operator+(const Word& a, const Word& b) {
    std::vector<Symbol> sym;
    sym.reserve(a.size() + b.size());
    sym.insert(sym.end(), a.symbols_.begin(), a.symbols_.end());
    sym.insert(sym.end(), b.symbols_.begin(), b.symbols_.end());
    return Word(std::move(sym), std::max(a.alphabet_size_, b.alphabet_size_));
  }

 private:
  std::vector<Symbol> symbols_;
  int alphabet_size_ = 1;
};

/// Morphism from the source alphabet to words over the target alphabet.
/// Every letter has a nonempty image; a 1-uniform morphism is a coding.
class Morphism {
 public:
  Morphism(std::vector<Word> images, int target_alphabet_size)
      : images_(std::move(images)), target_alphabet_size_(target_alphabet_size) {
    if (images_.empty()) throw std::domain_error("Morphism: empty source alphabet");
    if (target_alphabet_size_ < 1 || target_alphabet_size_ > 256)
      throw std::domain_error("Morphism: bad target alphabet size");
    for (const Word& img : images_) {
      if (img.empty()) throw std::domain_error("Morphism: empty letter image");
      for (Symbol s : img)
        if (static_cast<int>(s) >= target_alphabet_size_)
          throw std::domain_error("Morphism: image symbol out of target alphabet");
    }
  }

  int source_alphabet_size() const { return static_cast<int>(images_.size()); }
  int target_alphabet_size() const { return target_alphabet_size_; }

  const Word& image(Symbol a) const {
    if (static_cast<std::size_t>(a) >= images_.size())
      throw std::domain_error("Morphism: letter out of source alphabet");
    return images_[a];
  }

  /// Returns k if the morphism is k-uniform, nullopt otherwise.
  std::optional<int> uniform_length() const {
    std::size_t k = images_[0].size();
    for (const Word& img : images_)
      if (img.size() != k) return std::nullopt;
    return static_cast<int>(k);
  }

  bool is_coding() const { return uniform_length() == 1; }

  /// True when image(a) = a x with x nonempty, so iteration from a converges.
  bool is_prolongable_from(Symbol a) const {
    return static_cast<std::size_t>(a) < images_.size() && images_[a].size() >= 2 &&
           images_[a][0] == a;
  }

 private:
  std::vector<Word> images_;
  int target_alphabet_size_;
};

inline Word apply_morphism(const Morphism& m, const Word& w) {
  std::size_t total = 0;
  for (Symbol s : w) {
    if (static_cast<int>(s) >= m.source_alphabet_size())
      throw std::domain_error("apply_morphism: symbol out of source alphabet");
    total += m.image(s).size();
  }
  std::vector<Symbol> out;
  out.reserve(total);
  for (Symbol s : w) {
    const Word& img = m.image(s);
    out.insert(out.end(), img.begin(), img.end());
  }
  return Word(std::move(out), m.target_alphabet_size());
}

/// First n symbols of the fixed point h^omega(seed). Expands images on
/// demand, so memory is linear in n regardless of iteration depth.
inline Word fixed_point_prefix(const Morphism& m, Symbol seed, std::size_t n) {
  if (m.target_alphabet_size() > m.source_alphabet_size())
    throw std::domain_error("fixed_point_prefix: morphism target alphabet exceeds source");
  if (!m.is_prolongable_from(seed))
    throw std::domain_error("fixed_point_prefix: morphism is not prolongable from the seed");
  std::vector<Symbol> out;
  if (n == 0) return Word({}, m.source_alphabet_size());
  out.reserve(n + 32);
  const Word& first = m.image(seed);
  out.insert(out.end(), first.begin(), first.end());
  // out stays a prefix of h(out); position i's image lands after the images
  // of positions 0..i-1, so appending image(out[i]) in order extends the
  // fixed point.
  for (std::size_t i = 1; out.size() < n; ++i) {
    const Word& img = m.image(out[i]);
    out.insert(out.end(), img.begin(), img.end());
  }
  out.resize(n);
  return Word(std::move(out), m.source_alphabet_size());
}

inline Word complement(const Word& w) {
  if (w.alphabet_size() != 2)
    throw std::domain_error("complement: defined only for binary words");
  std::vector<Symbol> sym;
  sym.reserve(w.size());
  for (Symbol s : w) sym.push_back(static_cast<Symbol>(1 - s));
  return Word(std::move(sym), 2);
}

inline Word reverse(const Word& w) {
  std::vector<Symbol> sym(w.symbols().rbegin(), w.symbols().rend());
  return Word(std::move(sym), w.alphabet_size());
}

/// Coding (1-uniform morphism) from a letter-to-letter map.
inline Morphism make_coding(const std::vector<Symbol>& map, int target_alphabet_size) {
  std::vector<Word> images;
  images.reserve(map.size());
  for (Symbol s : map) images.emplace_back(std::vector<Symbol>{s}, target_alphabet_size);
  return Morphism(std::move(images), target_alphabet_size);
}

inline Morphism identity_coding(int alphabet_size) {
  std::vector<Symbol> map(alphabet_size);
  for (int i = 0; i < alphabet_size; ++i) map[i] = static_cast<Symbol>(i);
  return make_coding(map, alphabet_size);
}

/// Text form `0->021 1->031 2->012 3->013`: one entry per source letter,
/// letters and image symbols as decimal digits, entries whitespace-separated.
inline std::string morphism_to_text(const Morphism& m) {
  if (m.source_alphabet_size() > 10 || m.target_alphabet_size() > 10)
    throw std::domain_error("morphism_to_text: alphabet too large for digit notation");
  std::string out;
  for (int a = 0; a < m.source_alphabet_size(); ++a) {
    if (a) out.push_back(' ');
    out.push_back(static_cast<char>('0' + a));
    out += "->";
    out += m.image(static_cast<Symbol>(a)).to_digits();
  }
  return out;
}

inline Morphism morphism_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string entry;
  std::vector<std::optional<Word>> images;
  int max_target = 0;
  while (in >> entry) {
    std::size_t arrow = entry.find("->");
    if (arrow == std::string::npos)
      throw std::invalid_argument("morphism_from_text: entry '" + entry + "' lacks '->'");
    std::string_view lhs(entry.data(), arrow);
    std::string_view rhs(entry.data() + arrow + 2, entry.size() - arrow - 2);
    if (lhs.size() != 1 || lhs[0] < '0' || lhs[0] > '9')
      throw std::invalid_argument("morphism_from_text: bad source letter '" + std::string(lhs) + "'");
    int letter = lhs[0] - '0';
    if (rhs.empty())
      throw std::invalid_argument("morphism_from_text: empty image for letter " + std::string(lhs));
    Word img = Word::from_digits(rhs);
    max_target = std::max(max_target, img.alphabet_size());
    if (static_cast<std::size_t>(letter) >= images.size()) images.resize(letter + 1);
    if (images[letter])
      throw std::invalid_argument("morphism_from_text: duplicate entry for letter " +
                                  std::string(lhs));
    images[letter] = std::move(img);
  }
  if (images.empty()) throw std::invalid_argument("morphism_from_text: no entries");
  std::vector<Word> final_images;
  for (std::size_t a = 0; a < images.size(); ++a) {
    if (!images[a])
      throw std::invalid_argument("morphism_from_text: missing entry for letter " +
                                  std::to_string(a));
    final_images.push_back(Word(images[a]->symbols(), max_target));
  }
  return Morphism(std::move(final_images), max_target);
}

}  // namespace autoseq
