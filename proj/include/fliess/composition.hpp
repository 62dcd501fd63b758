#pragma once
#include "fliess/exec.hpp"
#include "fliess/series.hpp"

namespace fliess {

// Composition product c o d. Requires that c's alphabet has dim(d)+1 letters;
// the result lives over d's alphabet with dim(c) components and the minimum
// truncation. Each letter of c maps to xi -> x0(d_i sh .), with d_0 := 1.
Series compose(const Series& c, const Series& d, Exec exec = Exec::Parallel);

// Modified composition c o~ d (the mixed product behind unity feedback):
// xi -> xi . + x0(d_i sh .), with d_0 := 0.
Series mod_compose(const Series& c, const Series& d, Exec exec = Exec::Parallel);

// Composition inverse of a square series (dim == m): the unique solution of
// e = (-c) o~ e, found by fixed-point iteration from e0 = -c. The iteration
// is a strict contraction, so at most trunc+1 steps are needed.
Series comp_inverse_fixed_point(const Series& c, int trunc = -1, Exec exec = Exec::Parallel);

}  // namespace fliess
