#pragma once
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "fliess/rational.hpp"
#include "fliess/word.hpp"

namespace fliess {

// Finite rational linear combination of words.
class WordPolynomial {
 public:
  WordPolynomial() = default;
  explicit WordPolynomial(const Word& w, Rat c = 1) { add(w, c); }

  void add(const Word& w, const Rat& c);
  Rat coeff(const Word& w) const;
  const std::map<Word, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  WordPolynomial& operator+=(const WordPolynomial& o);
  WordPolynomial& operator-=(const WordPolynomial& o);
  WordPolynomial operator*(const Rat& s) const;

  friend bool operator==(const WordPolynomial&, const WordPolynomial&) = default;

 private:
  std::map<Word, Rat> terms_;
};

// Element of the tensor square, a combination of word pairs u (x) v.
class WordTensorPolynomial {
 public:
  void add(const Word& u, const Word& v, const Rat& c);
  Rat coeff(const Word& u, const Word& v) const;
  const std::map<std::pair<Word, Word>, Rat>& terms() const { return terms_; }

  WordTensorPolynomial& operator+=(const WordTensorPolynomial& o);

  friend bool operator==(const WordTensorPolynomial&, const WordTensorPolynomial&) = default;

 private:
  std::map<std::pair<Word, Word>, Rat> terms_;
};

// Shuffle product. Words shuffle to nonnegative integer combinations; the
// word-pair results are memoized process-wide (thread safe).
WordPolynomial shuffle_words(const Word& u, const Word& v);
WordPolynomial shuffle_words(const WordPolynomial& p, const WordPolynomial& q);

// Integer-coefficient view of a memoized word shuffle, for hot loops.
const std::vector<std::pair<Word, int64_t>>& shuffle_counts(const Word& u, const Word& v);

// Unshuffle coproduct, the adjoint of the shuffle: <p sh q, w> = <p (x) q, adj(w)>.
WordTensorPolynomial shuffle_adjoint(const Word& w);
WordTensorPolynomial shuffle_adjoint(const WordPolynomial& p);
const std::vector<std::tuple<Word, Word, int64_t>>& unshuffle_counts(const Word& w);

// Catenation (concatenation) product, extended bilinearly.
WordPolynomial catenate(const WordPolynomial& p, const WordPolynomial& q);
WordTensorPolynomial catenate(const WordTensorPolynomial& p, const WordTensorPolynomial& q);

}  // namespace fliess
