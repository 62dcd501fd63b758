#pragma once
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fliess/errors.hpp"

namespace fliess {

// The alphabet X = {x0, x1, ..., xm}. x0 is the drift letter.
struct Alphabet {
  int m = 1;
  Alphabet() = default;
  explicit Alphabet(int m_) : m(m_) {
    if (m < 1 || m > 255) throw precondition_error("alphabet needs 1 <= m <= 255");
  }
  int letters() const { return m + 1; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// A word over X, stored as letter indices. Total order is length-first, then
// lexicographic, which fixes the canonical term order everywhere.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<uint8_t> letters) : letters_(std::move(letters)) {}

  static Word single(int letter) { return Word(std::vector<uint8_t>{static_cast<uint8_t>(letter)}); }
  static Word repeated(int letter, size_t k) {
    return Word(std::vector<uint8_t>(k, static_cast<uint8_t>(letter)));
  }

  size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int letter(size_t i) const { return letters_[i]; }
  int first() const { return letters_.front(); }

  Word tail() const { return Word(std::vector<uint8_t>(letters_.begin() + 1, letters_.end())); }

  Word prepend(int letter) const {
    std::vector<uint8_t> ls;
    ls.reserve(letters_.size() + 1);
    ls.push_back(static_cast<uint8_t>(letter));
    ls.insert(ls.end(), letters_.begin(), letters_.end());
    return Word(std::move(ls));
  }

  Word append(int letter) const {
    std::vector<uint8_t> ls = letters_;
    ls.push_back(static_cast<uint8_t>(letter));
    return Word(std::move(ls));
  }

  Word concat(const Word& o) const {
    std::vector<uint8_t> ls = letters_;
    ls.insert(ls.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(ls));
  }

  size_t count(int letter) const {
    size_t n = 0;
    for (uint8_t l : letters_) n += (l == letter);
    return n;
  }

  bool fits(const Alphabet& a) const {
    for (uint8_t l : letters_)
      if (l > a.m) return false;
    return true;
  }

  const std::vector<uint8_t>& letters() const { return letters_; }

  friend bool operator==(const Word&, const Word&) = default;
  friend bool operator<(const Word& a, const Word& b) {
    if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
    return a.letters_ < b.letters_;
  }

 private:
  std::vector<uint8_t> letters_;
};

struct WordHash {
  size_t operator()(const Word& w) const {
    size_t h = 1469598103934665603ull;
    for (uint8_t l : w.letters()) {
      h ^= l;
      h *= 1099511628211ull;
    }
    return h ^ (w.length() << 1);
  }
};

// "e" for the empty word, otherwise concatenated letters like "x0x1x2".
std::string format_word(const Word& w);
Word parse_word(const std::string& text);

}  // namespace fliess
