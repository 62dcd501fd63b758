#pragma once
#include <map>
#include <string>
#include <vector>

#include "fliess/exec.hpp"
#include "fliess/series.hpp"

namespace fliess {

using MultiIndex = std::vector<unsigned>;

// Truncated multivariate Taylor series in the shifted state w = z - z0,
// exact rational coefficients, degree-capped.
class TaylorField {
 public:
  TaylorField() = default;
  TaylorField(int nvars, int trunc);

  int nvars() const { return nvars_; }
  int trunc() const { return trunc_; }
  const std::map<MultiIndex, Rat>& coeffs() const { return coeffs_; }

  void add(const MultiIndex& mi, const Rat& c);
  Rat coeff(const MultiIndex& mi) const;
  Rat constant_term() const;
  bool is_zero() const { return coeffs_.empty(); }

  TaylorField partial(int var) const;  // d/dw_var, truncation drops by one
  TaylorField embedded(int new_nvars, int offset) const;
  TaylorField truncated(int new_trunc) const;

  friend TaylorField operator+(const TaylorField& a, const TaylorField& b);
  friend TaylorField operator-(const TaylorField& a, const TaylorField& b);
  friend TaylorField operator*(const TaylorField& a, const TaylorField& b);
  TaylorField operator*(const Rat& s) const;
  friend bool operator==(const TaylorField&, const TaylorField&) = default;

 private:
  int nvars_ = 0;
  int trunc_ = 0;
  std::map<MultiIndex, Rat> coeffs_;
};

TaylorField taylor_constant(int nvars, int trunc, const Rat& v);
TaylorField taylor_variable(int nvars, int trunc, int var);
// sin/cos/exp of (scale * w_var) expanded to the truncation degree
TaylorField taylor_sin(int nvars, int trunc, int var, const Rat& scale);
TaylorField taylor_cos(int nvars, int trunc, int var, const Rat& scale);
TaylorField taylor_exp(int nvars, int trunc, int var, const Rat& scale);

// Control-affine analytic state space system
//   dz/dt = g0(z) + sum_j gj(z) u_j,   y = h(z),   z(t0) = z0,
// with all fields stored as Taylor expansions about z0 at a common degree.
struct Realization {
  int n = 0;  // states
  int m = 0;  // inputs
  int l = 0;  // outputs
  int degree = 0;
  std::vector<Rat> z0;
  std::vector<std::vector<TaylorField>> g;  // g[j][comp], j = 0..m
  std::vector<TaylorField> h;               // h[i], i = 0..l-1
};

// Directional derivative along g: sum_k dh/dw_k * g_k.
TaylorField lie_derivative(const std::vector<TaylorField>& g, const TaylorField& h);

// Generating series: (c_i, x_{jk}...x_{j1}) = L_{g_{j1}} ... L_{g_{jk}} h_i (z0).
// Letters of the word are applied left to right. Needs degree >= N.
Series series_from_realization(const Realization& r, int N, Exec exec = Exec::Parallel);

// Coefficients (c_i, x0^k) for k = 0..K: the zero-input response data.
std::vector<std::vector<Rat>> natural_response_coeffs(const Realization& r, int K);

// Realization of the feedback interconnection: plant input u + controller
// output, controller driven by the plant output. Both must be strictly
// compatible (plant.l == ctrl.m, ctrl.l == plant.m); states are stacked.
Realization closed_loop_realization(const Realization& plant, const Realization& ctrl);

// Realization of the group inverse: {g0 - sum_j gj h_j, g1..gm}, -h, same z0.
Realization inverse_realization(const Realization& r);

// JSON I/O. Input fields: {"taylor": {"<exponents>": "p/q", ...}} with the
// polynomial given in absolute coordinates z (recentered to z0 on load), or
// {"builtin": "sin"|"cos"|"exp", "var": k, "scale": "p/q"} (requires the
// center of that variable to be 0). Optional "degree" caps re-expansion.
Realization load_realization_text(const std::string& json_text, int degree);
Realization load_realization_file(const std::string& path, int degree);
std::string realization_to_json(const Realization& r);

}  // namespace fliess
