#pragma once

#include "rational.hpp"

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qtop {

// Arithmetic context for the cyclotomic field Q(zeta_M).  A computation
// session fixes one conductor M up front (large enough for every rational
// q-power it will meet) so that all values live in a single field and
// equality is decidable by reduction mod the M-th cyclotomic polynomial.
//
// The conductor is capped; override the default cap with the environment
// variable QTOP_CONDUCTOR_CAP.
struct CycloContext {
  long M = 1;
  long deg = 1;                // deg Phi_M
  std::vector<Int> phi;        // Phi_M, monic, phi[i] = coeff of x^i
  // x^e mod Phi_M for e in [deg, M), built eagerly for small M.
  std::vector<std::vector<Int>> rows;
  bool have_rows = false;

  static std::shared_ptr<const CycloContext> make(long M);
  static long conductor_cap();
};

using CtxPtr = std::shared_ptr<const CycloContext>;

// Dense integer cyclotomic polynomial Phi_M (exposed for tests).
std::vector<Int> cyclotomic_poly(long M);

// Element of Q(zeta_M), stored as a sparse Laurent combination of powers of
// zeta_M with rational coefficients.  Values stay sparse through products of
// monomial-heavy data; reduction mod Phi_M caps the term count and decides
// zero-ness exactly.
class Cyclo {
public:
  Cyclo() = default; // zero with no context; combines with anything
  explicit Cyclo(const Rat &c) {
    if (c != 0)
      t_[0] = c;
  }
  Cyclo(CtxPtr ctx, const Rat &c) : ctx_(std::move(ctx)) {
    if (c != 0)
      t_[0] = c;
  }

  // c * zeta_M^e
  static Cyclo zeta_pow(CtxPtr ctx, long e, const Rat &c = Rat(1));
  // e^{2 pi i num/den}; requires den | M
  static Cyclo root_of_unity(CtxPtr ctx, const Int &num, const Int &den,
                             const Rat &c = Rat(1));

  const CtxPtr &ctx() const { return ctx_; }
  const std::map<long, Rat> &terms() const { return t_; }
  bool structurally_zero() const { return t_.empty(); }

  bool is_zero() const;
  bool operator==(const Cyclo &o) const;
  bool operator!=(const Cyclo &o) const { return !(*this == o); }

  Cyclo &operator+=(const Cyclo &o);
  Cyclo &operator-=(const Cyclo &o);
  friend Cyclo operator+(Cyclo a, const Cyclo &b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo &b) { return a -= b; }
  friend Cyclo operator*(const Cyclo &a, const Cyclo &b);
  Cyclo &operator*=(const Cyclo &o) { return *this = *this * o; }
  Cyclo operator-() const;

  Cyclo &scale(const Rat &c);
  friend Cyclo operator*(const Rat &c, Cyclo a) { return a.scale(c); }

  Cyclo pow(long e) const;    // negative e via inverse
  Cyclo inverse() const;      // throws std::domain_error on zero
  Cyclo conj() const;         // complex conjugation

  // Canonicalize: exponents below deg Phi_M, coefficients reduced.
  void reduce();

  std::complex<double> eval() const;

  std::string str() const;

private:
  CtxPtr ctx_; // null for context-free rational constants
  std::map<long, Rat> t_;

  void add_term(long e, const Rat &c);
  void merge_ctx(const Cyclo &o);
  friend class CycloTestHook;
};

// sqrt of a positive integer as an exact element of Q(zeta_M)
// (requires enough roots of unity in the context: 8 | M if needed, and
// every odd prime with odd multiplicity in n must divide M, with 4 | M for
// primes that are 3 mod 4).
Cyclo exact_sqrt(CtxPtr ctx, long n);

// lcm helper for assembling conductors
long lcm_long(long a, long b);

} // namespace qtop
