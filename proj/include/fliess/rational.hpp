#pragma once
#include <gmpxx.h>

#include <string>

#include "fliess/errors.hpp"

namespace fliess {

using Rat = mpq_class;

// Accepts "p" or "p/q" with optional sign; q must be positive and nonzero.
Rat rat_from_string(const std::string& s);

// Canonical form: "p" when the denominator is 1, else "p/q".
std::string rat_to_string(const Rat& r);

Rat rat_pow(const Rat& base, unsigned e);
Rat rat_factorial(unsigned n);
Rat rat_binomial(unsigned n, unsigned k);

}  // namespace fliess
