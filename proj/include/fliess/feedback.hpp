#pragma once
#include "fliess/composition.hpp"
#include "fliess/exec.hpp"
#include "fliess/hopf.hpp"
#include "fliess/series.hpp"

namespace fliess {

// Element delta + c of the output feedback group; c must be square
// (components == alphabet inputs m).
struct DeltaSeries {
  Series proper;
  explicit DeltaSeries(Series c);
};

enum class InverseMethod { Antipode, FixedPoint };

// (delta + c)(delta + d) = delta + d + c o~ d.
DeltaSeries group_product(const DeltaSeries& a, const DeltaSeries& b, Exec exec = Exec::Parallel);

// Group inverse delta + c^-1, via the Hopf antipode or the fixed point.
DeltaSeries group_inverse(const DeltaSeries& a, InverseMethod method = InverseMethod::Antipode,
                          Exec exec = Exec::Parallel);

Series comp_inverse(const Series& c, int trunc = -1, InverseMethod method = InverseMethod::Antipode,
                    Exec exec = Exec::Parallel);

// Unity output feedback c@d = c o~ (-d o c)^-1. c is the plant (l_c outputs,
// m_c inputs), d the controller (l_d = m_c outputs, m_d = l_c inputs); the
// letter bookkeeping between the two alphabets is handled here. Result has
// c's shape at truncation `trunc` (default: min of the operands).
Series feedback_product(const Series& c, const Series& d, int trunc = -1,
                        InverseMethod method = InverseMethod::Antipode,
                        Exec exec = Exec::Parallel);

struct RadiusReport {
  double amplification = 0.0;      // A(K) or B(K)
  double geometric_constant = 0.0; // amplification * M
  double radius = 0.0;             // 1 / (geometric_constant * (m + 1))
};

// Local (Gevrey) inverse growth: A(K) = 1 / (1 - mK ln(1 + 1/(mK))).
RadiusReport radius_local_inverse(double K, double M, int m);

// Global inverse growth: B(K) = 1 / ln(1 + 1/(mK)).
RadiusReport radius_global_inverse(double K, double M, int m);

}  // namespace fliess
