#ifndef BLOWUP_RATIONAL_HPP
#define BLOWUP_RATIONAL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace blowup {

// Exact rational scalar used everywhere outside the numerical Galerkin loop.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline mpz_class factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline mpz_class binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline mpz_class pow2(unsigned n) {
  mpz_class r = 1;
  r <<= n;
  return r;
}

inline Rat rat_pow(const Rat& base, unsigned e) {
  Rat r = 1;
  Rat b = base;
  for (unsigned k = e; k; k >>= 1) {
    if (k & 1) r *= b;
    if (k > 1) b *= b;
  }
  return r;
}

// Renders "p" or "p/q", matching the CLI interchange format.
inline std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_parse(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational: '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace blowup

#endif
