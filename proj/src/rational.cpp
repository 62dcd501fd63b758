#include "fliess/rational.hpp"

#include <cctype>

namespace fliess {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw parse_error("empty rational");
  auto check_int = [&](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    size_t i = 0;
    if (allow_sign && (part[0] == '+' || part[0] == '-')) i = 1;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "" : s.substr(slash + 1);
  if (!check_int(num, true) || (slash != std::string::npos && !check_int(den, false)))
    throw parse_error("bad rational '" + s + "'");
  Rat r;
  if (r.set_str(s, 10) != 0) throw parse_error("bad rational '" + s + "'");
  if (slash != std::string::npos && mpz_sgn(r.get_den().get_mpz_t()) == 0)
    throw parse_error("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_str();
}

Rat rat_pow(const Rat& base, unsigned e) {
  Rat acc = 1, b = base;
  while (e) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

Rat rat_factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rat(f);
}

Rat rat_binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rat(b);
}

}  // namespace fliess
