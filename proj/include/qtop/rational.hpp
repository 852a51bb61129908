#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace qtop {

using Int = mpz_class;
using Rat = mpq_class;

// Parse "p", "-p/q" style strings (the on-disk format for all rationals).
inline Rat parse_rat(const std::string &s) {
  if (s.empty())
    throw std::invalid_argument("empty rational literal");
  Rat x;
  if (x.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  x.canonicalize();
  return x;
}

inline std::string rat_str(const Rat &x) { return x.get_str(); }

inline Int rat_num(const Rat &x) { return x.get_num(); }
inline Int rat_den(const Rat &x) { return x.get_den(); }

inline bool is_integer(const Rat &x) { return x.get_den() == 1; }

// floor of a rational
inline Int rat_floor(const Rat &x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

// x reduced into [0, m): x - m*floor(x/m)
inline Rat rat_mod(const Rat &x, const Rat &m) {
  Rat y = x / m;
  return x - m * Rat(rat_floor(y));
}

inline long to_long(const Int &x) {
  if (!x.fits_slong_p())
    throw std::overflow_error("integer too large for long");
  return x.get_si();
}

inline Int int_pow(Int b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

} // namespace qtop
