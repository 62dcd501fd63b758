#pragma once
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "fliess/exec.hpp"
#include "fliess/rational.hpp"
#include "fliess/word.hpp"
#include "fliess/word_poly.hpp"

namespace fliess {

inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

// Gauge pair (K, M) for geometric growth bounds |(c,eta)| <= K M^|eta| |eta|!.
struct GrowthConstants {
  double K = 1.0;
  double M = 1.0;
};

// A truncated formal power series in noncommuting letters x0..xm with l
// components. Words longer than the truncation order are unrepresented:
// the object stands for an equivalence class modulo such words.
class Series {
 public:
  Series(Alphabet alphabet, int dim, int trunc);

  const Alphabet& alphabet() const { return alphabet_; }
  int dim() const { return dim_; }
  int trunc() const { return trunc_; }

  const std::map<Word, Rat>& component(int i) const;
  const Rat& coeff(int i, const Word& w) const;
  void set_coeff(int i, const Word& w, Rat v);
  void add_coeff(int i, const Word& w, const Rat& v);

  bool is_zero() const;

  friend bool operator==(const Series&, const Series&) = default;

 private:
  void check_slot(int i, const Word& w) const;

  Alphabet alphabet_;
  int dim_;
  int trunc_;
  std::vector<std::map<Word, Rat>> comps_;
};

// the series 1 * (empty word), one component
Series unit_series(Alphabet a, int trunc);

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series negate(const Series& a);
Series scale(const Rat& s, const Series& a);

// Componentwise left catenation by a single letter.
Series prepend_letter(int letter, const Series& a);

// Restrict to words of length <= n (n may be below the current truncation
// only; raising the truncation would invent unknown coefficients).
Series truncate_series(const Series& a, int n);

// Shuffle product of scalar (one component) series; truncation is the min.
Series shuffle_series(const Series& a, const Series& b, Exec exec = Exec::Parallel);

// Least word length carrying a nonzero coefficient, kInfiniteOrder if none.
int order(const Series& a);

// sigma^order(a-b) with sigma = 1/2; zero when the classes coincide.
double ultrametric_distance(const Series& a, const Series& b);

std::string format_series(const Series& c);
Series parse_series(std::istream& in);
Series parse_series_text(const std::string& text);
Series load_series_file(const std::string& path);

}  // namespace fliess
