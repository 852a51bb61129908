#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtop/cgp.hpp"

#include <complex>

using namespace qtop;

static Plumbing chain(std::vector<long> fr) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < (int)fr.size(); ++i)
    e.push_back({i, i + 1});
  return make_plumbing(fr, e);
}

static Plumbing star(long center, std::vector<long> legs) {
  std::vector<long> fr = {center};
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < (int)legs.size(); ++i) {
    fr.push_back(legs[i]);
    e.push_back({0, i + 1});
  }
  return make_plumbing(fr, e);
}

// a generic admissible class: an enumerated nonzero omega, shifted away from
// poles by a multiple of the modulus if needed
static OmegaClass generic_omega(const RootParams &par, const Plumbing &p) {
  long m = par.family() == RootFamily::ZeroMod8 ? 1 : 2;
  for (const auto &alpha : enumerate_omegas(p.B, m)) {
    OmegaClass w{m, alpha};
    bool nonzero = false;
    for (const Rat &a : alpha)
      if (a != 0)
        nonzero = true;
    if (nonzero && omega_admissible(par, p, w))
      return w;
  }
  throw std::runtime_error("no generic omega for this graph");
}

TEST_CASE("omega classes: json, cocycle, admissibility") {
  OmegaClass w = omega_from_json(R"({"modulus":2,"alpha":["-2/5","4/5"]})");
  CHECK(w.modulus == 2);
  CHECK(w.alpha[0] == Rat(-2, 5));
  CHECK(omega_to_json(w) == R"({"modulus":2,"alpha":["-2/5","4/5"]})");

  Plumbing g = chain({-2, -3});
  RootParams par = root_params(7);
  for (const auto &alpha : enumerate_omegas(g.B, 2))
    CHECK(omega_cocycle(g, OmegaClass{2, alpha}));
  // alpha = 0 is a pole of the modified dimension at every r
  CHECK(!omega_admissible(par, g, OmegaClass{2, {Rat(0), Rat(0)}}));
  CHECK(omega_admissible(par, g, OmegaClass{2, {Rat(-2, 5), Rat(4, 5)}}));
  // integer shifts do not change admissibility
  CHECK(omega_admissible(par, g, OmegaClass{2, {Rat(8, 5), Rat(4, 5)}}));
  CHECK_THROWS_AS(cgp_invariant(par, g, OmegaClass{2, {Rat(0), Rat(0)}}),
                  std::domain_error);
}

TEST_CASE("closed-form stabilization coefficients match the exact ones") {
  for (long r : {5, 6, 7, 9, 10, 16}) {
    RootParams par = root_params(r);
    CtxPtr ctx = ribbon_context(par, 9 * r);
    ModularData md = modular_data(par, ctx);
    CHECK(std::abs(delta_plus_value(par) - md.delta_plus.eval()) < 1e-9);
    CHECK(std::abs(delta_minus_value(par) - md.delta_minus.eval()) < 1e-9);
    CHECK(std::abs(delta_plus_value(par) * delta_minus_value(par) -
                   std::complex<double>(md.zeta, 0)) < 1e-9);
  }
  CHECK_THROWS_AS(delta_plus_value(root_params(12)), std::domain_error);
}

TEST_CASE("parallel kernel vs literal serial evaluation") {
  // graphs chosen so that admissible classes exist: when |H_1| is even every
  // torsion class lands on the half-integer grid of modified-dimension poles,
  // and some odd-order graphs (e.g. the chain -3,-1,-3) force an integer
  // colour on a vertex in every nonzero class
  std::vector<Plumbing> graphs = {chain({-5}), chain({-2, -3}),
                                  chain({-2, -5}), chain({-2, -2, -3}),
                                  star(-2, {-3, -3, -3})};
  for (long r : {6, 7, 9, 10}) {
    RootParams par = root_params(r);
    for (const auto &g : graphs) {
      OmegaClass w = generic_omega(par, g);
      auto fast = cgp_invariant(par, g, w);
      auto slow = cgp_invariant_serial(par, g, w);
      CHECK(std::abs(fast - slow) < 1e-10 * std::max(1.0, std::abs(fast)));
    }
  }
}

TEST_CASE("exact backend agrees with the float backend") {
  RootParams par = root_params(7);
  Plumbing g = chain({-5});
  OmegaClass w{2, {Rat(-2, 5)}};
  CtxPtr ctx = cgp_context(par, w);
  Cyclo exact = cgp_invariant_exact(par, ctx, g, w);
  auto approx = cgp_invariant(par, g, w);
  CHECK(std::abs(exact.eval() - approx) < 1e-10);

  RootParams par6 = root_params(6);
  Plumbing g2 = chain({-2, -3});
  OmegaClass w2 = generic_omega(par6, g2);
  Cyclo e2 = cgp_invariant_exact(par6, cgp_context(par6, w2), g2, w2);
  CHECK(std::abs(e2.eval() - cgp_invariant(par6, g2, w2)) < 1e-10);
}

TEST_CASE("invariance under vertex relabelling") {
  RootParams par = root_params(7);
  Plumbing g = make_plumbing({-2, -3}, {{0, 1}});
  Plumbing h = make_plumbing({-3, -2}, {{1, 0}});
  // alpha = 2 B^{-1} (1,0)^t = (-6/5, -2/5)
  OmegaClass wg{2, {Rat(-6, 5), Rat(-2, 5)}};
  OmegaClass wh{2, {Rat(-2, 5), Rat(-6, 5)}};
  CHECK(std::abs(cgp_invariant(par, g, wg) - cgp_invariant(par, h, wh)) <
        1e-12);
}

TEST_CASE("verlinde closed forms") {
  CHECK(euler_char(root_params(5), 1) == 5);
  CHECK(euler_char(root_params(5), 2) == 0);
  CHECK(total_dim(root_params(5), 2) == 500);
  CHECK(euler_char(root_params(8), 2) == 256);
  CHECK(total_dim(root_params(8), 2) == 256);
  CHECK(total_dim(root_params(6), 3) == 11664);
  CHECK(euler_char(root_params(6), 1) == 3);
  CHECK(total_dim(root_params(6), 2) == 108);
  CHECK(total_dim(root_params(16), 1) == 16);
}

TEST_CASE("verlinde genus one counts the index set") {
  for (long r : {5, 6, 7, 8, 16}) {
    RootParams par = root_params(r);
    auto v = verlinde_value(par, 1, {}, Rat(1, 3));
    CHECK(std::abs(v - std::complex<double>(par.i_set().size(), 0)) < 1e-12);
  }
}

TEST_CASE("verlinde depends on lambda only through the specialization") {
  for (long r : {5, 6, 7}) {
    RootParams par = root_params(r);
    Rat shift = Rat(par.t) / Rat(par.eps);
    shift.canonicalize();
    for (long g : {2L, 3L}) {
      auto a = verlinde_value(par, g, {}, Rat(1, 3));
      auto b = verlinde_value(par, g, {}, Rat(1, 3) + shift);
      CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("verlinde pole detection") {
  RootParams par = root_params(8);
  // k = 2 in I_8 makes q^{lambda+k} + q^{-lambda-k} vanish at lambda = 0
  CHECK_THROWS_AS(verlinde_value(par, 2, {}, Rat(0)), std::domain_error);
}

TEST_CASE("numeric verlinde limits match the closed forms") {
  for (long r : {5, 6, 7, 8, 16})
    for (long g : {1L, 2L, 3L}) {
      RootParams par = root_params(r);
      VerlindeLimitReport rep = verlinde_limit_check(par, g);
      INFO("r=", r, " g=", g, " euler=", rep.euler_numeric,
           " dim=", rep.dim_numeric);
      CHECK(rep.pass);
    }
}
