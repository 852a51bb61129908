#pragma once

#include "qarith.hpp"

#include <map>

namespace qtop {

// Sparse column-major matrix over a cyclotomic field.  Module dimensions stay
// small (a few thousand at most for triple tensor products) but the action
// matrices are very sparse, so products iterate over stored entries only.
struct SpMat {
  long nr = 0, nc = 0;
  std::vector<std::map<long, Cyclo>> col; // col[j][i] = entry (i, j)

  SpMat() = default;
  SpMat(long rows, long cols) : nr(rows), nc(cols), col(cols) {}

  static SpMat eye(long n);

  void add(long i, long j, const Cyclo &v);
  Cyclo get(long i, long j) const;
};

SpMat mat_mul(const SpMat &a, const SpMat &b);
SpMat mat_sub(const SpMat &a, const SpMat &b);
SpMat mat_scale(const Cyclo &c, const SpMat &a);
// Kronecker product in the ordered basis with the left factor major; no sign
// twist (used for id (x) f and f (x) id with parity-even f).
SpMat kron(const SpMat &a, const SpMat &b);
bool mat_is_zero(const SpMat &a);
bool mat_equal(const SpMat &a, const SpMat &b);

// Finite-dimensional weight module: an ordered basis with rational H-weights
// and Z/2 parities, plus the actions of the remaining generators.  K and Kinv
// are determined by the weights but stored for convenience.
struct WeightModule {
  RootParams par;
  CtxPtr ctx;
  long dim = 0;
  std::vector<Rat> wt;     // H eigenvalue per basis vector
  std::vector<int> parity; // 0 = even, 1 = odd
  SpMat E, F, K, Kinv;
};

// Verma module of highest weight lambda + rbar - 1, dimension rbar.
// The context must contain q^lambda (conductor divisible by den(lambda/r)).
WeightModule verma(const RootParams &par, const CtxPtr &ctx, const Rat &lambda,
                   int parity);

// false exactly on the countable family of weights whose Verma module has a
// singular vector
bool is_typical(const RootParams &par, const Rat &lambda);

// dual with the super convention (x.f)(v) = (-1)^{|f||x|} f(S(x) v)
WeightModule dual_module(const WeightModule &m);

// tensor product via the coproduct, Koszul signs included; basis order is
// left factor major
WeightModule tensor_module(const WeightModule &a, const WeightModule &b);

// simple quotient of the Verma with highest weight label lambda; equals the
// Verma itself for typical lambda
WeightModule simple_module(const RootParams &par, const CtxPtr &ctx,
                           const Rat &lambda, int parity);

// one-dimensional module; weight must lie in (r/2) Z
WeightModule one_dim_module(const RootParams &par, const CtxPtr &ctx,
                            const Rat &weight, int parity);
// the k-th module of the free realization (weight eps * k * r)
WeightModule sigma_module(const RootParams &par, const CtxPtr &ctx, long k,
                          int parity);

// braiding V (x) W -> W (x) V: truncated R-matrix, then the diagonal weight
// factor q^{wt wt'/2}, then the signed swap.  The context must contain all
// q^{wt_i wt_j / 2}.
SpMat braiding_matrix(const WeightModule &v, const WeightModule &w);

// right partial trace of the self-braiding, with pivotal parameter s = rbar
SpMat twist_matrix(const WeightModule &v);

// closed-form twist scalar of the Verma with label lambda
Cyclo twist_value(const RootParams &par, const CtxPtr &ctx, const Rat &lambda);

// quantum dimension for the pivotal structure with parameter s
Cyclo qdim(const WeightModule &m, long s);

// modified dimension d(lambda) = (q^l + q^-l)/(q^{rbar l} - q^{-rbar l});
// throws std::domain_error("modified dimension pole") when the denominator
// vanishes.  The signed version carries the parity factor (-1)^p of the
// module V_(lambda, p).
Cyclo mdim(const RootParams &par, const CtxPtr &ctx, const Rat &lambda);
Cyclo mdim_signed(const RootParams &par, const CtxPtr &ctx, const Rat &lambda,
                  int parity);

Cyclo S_scalar(const RootParams &par, const CtxPtr &ctx, const Rat &l1,
               const Rat &l2);                                  // q^{l1 l2}
Cyclo T_scalar(const RootParams &par, const CtxPtr &ctx, const Rat &l);

// scalar of the open Hopf link with the Verma (lambda', p') around the Verma
// (lambda, p), pivotal parameter s = rbar
Cyclo open_hopf(const RootParams &par, const CtxPtr &ctx, const Rat &lambda_p,
                int parity_p, const Rat &lambda, int parity);

// bicharacter pairing a weight class (any rational lift) against the k-th
// free-realization module
Cyclo psi_value(const RootParams &par, const CtxPtr &ctx, const Rat &lambda,
                long k);

// whether the s = rbar pivotal structure exists, i.e. q^{2 rbar} = 1
bool ribbon_check(const RootParams &par);

struct ModularData {
  Cyclo delta_plus, delta_minus;
  long zeta = 0;
  std::vector<long> kirby_index_set;
};

// Stabilization coefficients, computed three ways and cross-checked: the
// closed-form table, the Gauss-sum expression and the brute-force sum of
// modified dimensions, twists and open Hopf links over the index set.
// Requires r != 4 mod 8 and a context whose conductor is divisible by
// lcm(2r, 8); throws std::domain_error otherwise.
ModularData modular_data(const RootParams &par, const CtxPtr &ctx);

// context with conductor lcm(2r, 8, extra), enough for modular data
CtxPtr ribbon_context(const RootParams &par, long extra = 1);

} // namespace qtop
