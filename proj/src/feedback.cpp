#include "fliess/feedback.hpp"

#include <cmath>

namespace fliess {

DeltaSeries::DeltaSeries(Series c) : proper(std::move(c)) {
  if (proper.dim() != proper.alphabet().m)
    throw precondition_error("group elements are square: components must equal inputs");
}

DeltaSeries group_product(const DeltaSeries& a, const DeltaSeries& b, Exec exec) {
  if (a.proper.alphabet() != b.proper.alphabet()) throw precondition_error("alphabet mismatch");
  return DeltaSeries(add(b.proper, mod_compose(a.proper, b.proper, exec)));
}

Series comp_inverse(const Series& c, int trunc, InverseMethod method, Exec exec) {
  if (method == InverseMethod::FixedPoint) return comp_inverse_fixed_point(c, trunc, exec);
  HopfAlgebra hopf(c.alphabet().m);
  return hopf.antipode_inverse(c, trunc, exec);
}

DeltaSeries group_inverse(const DeltaSeries& a, InverseMethod method, Exec exec) {
  return DeltaSeries(comp_inverse(a.proper, -1, method, exec));
}

Series feedback_product(const Series& c, const Series& d, int trunc, InverseMethod method,
                        Exec exec) {
  if (c.dim() != d.alphabet().m)
    throw precondition_error("feedback needs plant outputs == controller inputs");
  if (d.dim() != c.alphabet().m)
    throw precondition_error("feedback needs controller outputs == plant inputs");
  int N = std::min(c.trunc(), d.trunc());
  if (trunc >= 0) {
    if (trunc > N) throw precondition_error("requested order exceeds the operand truncations");
    N = trunc;
  }
  Series ct = truncate_series(c, N);
  Series dc = compose(truncate_series(d, N), ct, exec);  // controller sees the plant output
  Series e = comp_inverse(negate(dc), N, method, exec);
  return mod_compose(ct, e, exec);
}

static void check_gauge(double K, double M, int m) {
  if (!(K > 0.0) || !(M > 0.0) || m < 1)
    throw precondition_error("growth constants need K > 0, M > 0, m >= 1");
}

RadiusReport radius_local_inverse(double K, double M, int m) {
  check_gauge(K, M, m);
  double mk = static_cast<double>(m) * K;
  double amp = 1.0 / (1.0 - mk * std::log1p(1.0 / mk));
  RadiusReport r;
  r.amplification = amp;
  r.geometric_constant = amp * M;
  r.radius = 1.0 / (r.geometric_constant * (m + 1));
  return r;
}

RadiusReport radius_global_inverse(double K, double M, int m) {
  check_gauge(K, M, m);
  double mk = static_cast<double>(m) * K;
  double amp = 1.0 / std::log1p(1.0 / mk);
  RadiusReport r;
  r.amplification = amp;
  r.geometric_constant = amp * M;
  r.radius = 1.0 / (r.geometric_constant * (m + 1));
  return r;
}

}  // namespace fliess
