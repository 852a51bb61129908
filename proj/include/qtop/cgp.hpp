#pragma once

#include "plumbing.hpp"
#include "repcat.hpp"

#include <complex>
#include <string>
#include <vector>

namespace qtop {

// Cohomology class with vertex values alpha_v in C/mZ, m = 2 for r not
// divisible by 8 and m = 1 otherwise; B alpha must lie in m Z^V.
struct OmegaClass {
  long modulus = 2;
  std::vector<Rat> alpha;
};

// {"modulus":1|2,"alpha":["p/q",...]}
OmegaClass omega_from_json(const std::string &text);
OmegaClass omega_from_file(const std::string &path);
std::string omega_to_json(const OmegaClass &w);

// cocycle condition B alpha in m Z^V
bool omega_cocycle(const Plumbing &p, const OmegaClass &w);
// every Kirby colour alpha_v + k avoids the modified-dimension poles; the
// pole condition is invariant under integer shifts, so only alpha_v matters
bool omega_admissible(const RootParams &par, const Plumbing &p,
                      const OmegaClass &w);

// Surgery invariant: Delta_+^{-b_+} Delta_-^{-b_-} times the I_r^V lattice
// sum of modified dimensions, twists and Hopf-link scalars.  The default
// backend is a table-driven float kernel (OpenMP across the flattened
// lattice); cgp_invariant_serial is a literal serial re-evaluation of the
// defining formula kept as a test oracle, and cgp_invariant_exact works in a
// cyclotomic field.
std::complex<double> cgp_invariant(const RootParams &par, const Plumbing &p,
                                   const OmegaClass &w);
std::complex<double> cgp_invariant_serial(const RootParams &par,
                                          const Plumbing &p,
                                          const OmegaClass &w);
Cyclo cgp_invariant_exact(const RootParams &par, const CtxPtr &ctx,
                          const Plumbing &p, const OmegaClass &w);

// context large enough for cgp_invariant_exact with the given omega
CtxPtr cgp_context(const RootParams &par, const OmegaClass &w);

// closed-form stabilization coefficients as complex numbers (float backend)
std::complex<double> delta_plus_value(const RootParams &par);
std::complex<double> delta_minus_value(const RootParams &par);

// partition function of the trivial circle bundle over a genus g surface
// with marked points (mu_i, parity_i) and fibre holonomy lambda_bar
std::complex<double>
verlinde_value(const RootParams &par, long g,
               const std::vector<std::pair<Rat, int>> &points,
               const Rat &lambda_bar);

// closed forms for unmarked surfaces
Rat euler_char(const RootParams &par, long g);
Rat total_dim(const RootParams &par, long g);

struct VerlindeLimitReport {
  double euler_numeric = 0;
  double dim_numeric = 0;
  Rat euler_closed, dim_closed;
  double tolerance = 0;
  bool pass = false;
};

// numeric limits of the Verlinde specialization against the closed forms
VerlindeLimitReport verlinde_limit_check(const RootParams &par, long g,
                                         double tolerance = 1e-6);

} // namespace qtop
