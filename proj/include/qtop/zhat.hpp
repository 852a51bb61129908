#pragma once

#include "plumbing.hpp"

#include <complex>
#include <map>
#include <string>

namespace qtop {

enum class Algebra { Sl2, Osp };

// Truncated q-series with exact rational exponents.  offset is the smallest
// exponent actually present; terms maps exponent increments (>= 0, < order)
// to rational coefficients.
struct QSeries {
  Rat offset;
  Rat order;
  std::map<Rat, Rat> terms;

  // coefficient at the absolute exponent e
  Rat coeff(const Rat &e) const;
};

// normalize a map of absolute exponents, dropping exponents >= cutoff
QSeries make_qseries(const std::map<Rat, Rat> &abs_terms, const Rat &cutoff);

// {"delta":"p/q","coeffs":[["p/q","a/b"],...]}, increments sorted ascending
std::string qseries_to_json(const QSeries &s);

// coefficient of x^j in (x + sign/x)^{2-degree}; negative powers are expanded
// as the symmetric average of the series at x -> infinity and x -> 0
Rat vertex_coeff(int sign, long degree, long j);

// joint coefficient F^{sign}_l = prod_v vertex_coeff(sign, deg v, l_v)
Rat f_coeff(const Plumbing &p, int sign, const IVec &l);

// canonical leading exponent (3 sigma - tr B)/4 - l^t B^{-1} l / 4 of the
// spin^c sector of l
Rat zhat_delta(const Plumbing &p, const IVec &spinc);

// Zhat q-series of the spin^c structure represented by (b, s), truncated to
// exponents below zhat_delta + order.  Requires det B != 0 and weak negative
// definiteness (convergence); throws std::domain_error otherwise.
QSeries zhat_series(Algebra alg, const Plumbing &p, const IVec &b,
                    const std::vector<int> &s, const Rat &order);

// Regularized value at q = e^{4 pi i / r}.  Strategy "gauss" performs the
// exact finite evaluation available when every vertex has degree <= 2;
// strategy "abel" sums with damping t^{|k|_1} for t in {0.90,0.95,0.99,0.999}
// and extrapolates t -> 1 (Neville).  tolerance bounds the difference of the
// last two extrapolants (a deliberately crude instability guard); throws
// std::runtime_error("regularization did not converge") when exceeded.
std::complex<double> zhat_root_eval(const Plumbing &p, const IVec &b,
                                    const std::vector<int> &s, Algebra alg,
                                    long r, const std::string &strategy,
                                    double tolerance = 1e-3);

} // namespace qtop
