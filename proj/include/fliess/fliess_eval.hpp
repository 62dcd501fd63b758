#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fliess/exec.hpp"
#include "fliess/series.hpp"

namespace fliess {

// Inputs sampled on a uniform grid over [t0, t1], samples[k][i] = u_{i+1}(t_k).
struct SampledSignal {
  double t0 = 0.0;
  double t1 = 1.0;
  std::vector<std::vector<double>> samples;

  int inputs() const { return samples.empty() ? 0 : static_cast<int>(samples.front().size()); }
  size_t points() const { return samples.size(); }
  double step() const { return (t1 - t0) / static_cast<double>(points() - 1); }
  void validate() const;

  static SampledSignal zero(int m, double t0, double t1, size_t points);
};

// Iterated integral E_eta[u](t, t0); u_0 == 1, composite trapezoid quadrature
// on the sample grid, linear interpolation off-grid.
double iterated_integral(const Word& eta, const SampledSignal& u, double t);

// y_i(t_k) = sum_eta (c_i, eta) E_eta[u](t_k) for every grid time; one
// dynamic-programming sweep over the suffix closure of the support of c.
std::vector<std::vector<double>> eval_fliess(const Series& c, const SampledSignal& u,
                                             Exec exec = Exec::Parallel);

// Zero-input (natural) response as an exact Taylor polynomial:
// y_i(t) = sum_k (c_i, x0^k) t^k / k!.
struct TaylorResponse {
  std::vector<Rat> coeffs;  // index = power of t
  double eval(double t) const;
};
std::vector<TaylorResponse> natural_response_taylor(const Series& c, int order);

enum class GrowthMode { Local, Global };

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double m_estimate = 0.0;  // exp(slope)
};

// Least-squares line through (k, ln(|coeff_k| / k!)) (Local) or
// (k, ln |coeff_k|) (Global) for k in [from, to]; zero coefficients are
// skipped and at least three points are required.
GrowthFit growth_fit(const std::vector<Rat>& by_length, GrowthMode mode, int from, int to);

// max |coefficient| over the words of each length in one component
std::vector<Rat> length_profile(const Series& c, int component);

// Warn (do not enforce) when the horizon exceeds the convergence radius
// implied by fitting the series' own coefficient growth.
std::optional<std::string> convergence_warning(const Series& c, double input_bound, double horizon);

void write_response_csv(std::ostream& out, const std::vector<double>& times,
                        const std::vector<std::vector<double>>& y);
void write_growth_csv(std::ostream& out, const std::vector<Rat>& by_length, GrowthMode mode,
                      int from, int to, const GrowthFit& fit);

SampledSignal parse_signal_csv(std::istream& in);
SampledSignal load_signal_csv(const std::string& path);

}  // namespace fliess
