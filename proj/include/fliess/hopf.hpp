#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fliess/exec.hpp"
#include "fliess/series.hpp"

namespace fliess {

// Coordinate map a^i_eta on the output feedback group: picks the coefficient
// of eta in component i (0-based) of a series.
struct CoordinateMap {
  int component = 0;
  Word word;

  friend bool operator==(const CoordinateMap&, const CoordinateMap&) = default;
  friend bool operator<(const CoordinateMap& a, const CoordinateMap& b) {
    if (a.component != b.component) return a.component < b.component;
    return a.word < b.word;
  }
};

// Grading: 2 * (#x0 in eta) + (#other letters) + 1.
int coord_degree(const CoordinateMap& a);

// Commutative product of coordinate maps, kept as a sorted factor list.
class HopfMonomial {
 public:
  HopfMonomial() = default;
  explicit HopfMonomial(CoordinateMap f) : factors_{std::move(f)} {}

  static const HopfMonomial& unit();

  bool is_unit() const { return factors_.empty(); }
  int degree() const;
  const std::vector<CoordinateMap>& factors() const { return factors_; }

  HopfMonomial times(const CoordinateMap& f) const;
  HopfMonomial times(const HopfMonomial& o) const;

  friend bool operator==(const HopfMonomial&, const HopfMonomial&) = default;
  // canonical term order: degree, then factor count, then factorwise
  friend bool operator<(const HopfMonomial& a, const HopfMonomial& b);

 private:
  std::vector<CoordinateMap> factors_;  // sorted
};

class HopfPolynomial {
 public:
  HopfPolynomial() = default;
  explicit HopfPolynomial(const HopfMonomial& m, Rat c = 1) { add(m, c); }

  void add(const HopfMonomial& m, const Rat& c);
  Rat coeff(const HopfMonomial& m) const;
  const std::map<HopfMonomial, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  HopfPolynomial& operator+=(const HopfPolynomial& o);
  HopfPolynomial& operator-=(const HopfPolynomial& o);
  HopfPolynomial operator*(const Rat& s) const;

  friend HopfPolynomial operator*(const HopfPolynomial& a, const HopfPolynomial& b);
  friend bool operator==(const HopfPolynomial&, const HopfPolynomial&) = default;

 private:
  std::map<HopfMonomial, Rat> terms_;
};

class HopfTensor {
 public:
  void add(const HopfMonomial& l, const HopfMonomial& r, const Rat& c);
  Rat coeff(const HopfMonomial& l, const HopfMonomial& r) const;
  const std::map<std::pair<HopfMonomial, HopfMonomial>, Rat>& terms() const { return terms_; }

  HopfTensor& operator+=(const HopfTensor& o);
  friend HopfTensor operator*(const HopfTensor& a, const HopfTensor& b);  // (x (x) y)(u (x) v) = xu (x) yv
  friend bool operator==(const HopfTensor&, const HopfTensor&) = default;

 private:
  std::map<std::pair<HopfMonomial, HopfMonomial>, Rat> terms_;
};

// Family sizes of the degree-k coordinate maps (V_k) and monomial families
// (H_k), counting every free index tuple separately. Enumerates word shapes.
std::pair<long long, long long> basis_dimensions(int k, int m);

// The Faa di Bruno type Hopf algebra of the output feedback group for a fixed
// number of inputs m. Holds the memoized reduced-coproduct table and the
// symbolic antipode cache; both are safe for concurrent use.
class HopfAlgebra {
 public:
  explicit HopfAlgebra(int m);

  int m() const { return m_; }

  // Delta_sh^j a: unshuffle coproduct, right leg tagged with component j.
  HopfTensor shuffle_coproduct(const CoordinateMap& a, int j) const;

  // Right-reduced coproduct Delta~ a (full coproduct minus 1 (x) a).
  HopfTensor tilde_coproduct(const CoordinateMap& a) const;

  // Delta' a = Delta a - a (x) 1 - 1 (x) a.
  HopfTensor reduced_coproduct(const CoordinateMap& a) const;

  // Full coproduct, on generators and multiplicatively on monomials.
  HopfTensor coproduct(const CoordinateMap& a) const;
  HopfTensor coproduct(const HopfMonomial& mono) const;
  HopfTensor coproduct(const HopfPolynomial& p) const;

  // Antipode, S a = -a - sum S(a'(1)) a'(2), memoized per (component, word);
  // extended antimultiplicatively (= multiplicatively, H is commutative).
  HopfPolynomial antipode(const CoordinateMap& a) const;
  HopfPolynomial antipode(const HopfMonomial& mono) const;
  HopfPolynomial antipode(const HopfPolynomial& p) const;

  // Composition inverse assembled coefficientwise: (c^-1, eta)_i = (S a^i_eta)(c),
  // evaluated numerically without expanding antipode polynomials.
  Series antipode_inverse(const Series& c, int trunc = -1, Exec exec = Exec::Parallel) const;

  // One row of the reduced-coproduct table: Delta~ a^i_eta =
  // sum mult * a^i_left (x) right, with the superscript i left implicit.
  struct TildeRow {
    Word left;
    HopfMonomial right;
    int64_t mult;
  };
  const std::vector<TildeRow>& tilde_rows(const Word& eta) const;

 private:
  int m_;
  mutable std::unordered_map<Word, std::unique_ptr<std::vector<TildeRow>>, WordHash> tilde_cache_;
  mutable std::shared_mutex tilde_mutex_;
  mutable std::map<std::pair<int, Word>, HopfPolynomial> antipode_cache_;
  mutable std::mutex antipode_mutex_;
};

// Evaluate at a series: a^j_xi |-> (c_j, xi), products multiply.
// Words beyond the truncation of c are an error.
Rat eval_hopf(const HopfPolynomial& p, const Series& c);
Rat eval_hopf(const HopfMonomial& mono, const Series& c);

// Canonical text form, e.g. "-a[1,x0] + a[1,x1]·a[1,e] + a[1,x2]·a[2,e]"
// (components 1-based, factors printed largest word first per component).
std::string format_hopf(const HopfPolynomial& p);
std::string format_hopf_tensor(const HopfTensor& t);

}  // namespace fliess
