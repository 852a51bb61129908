#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtop/compare.hpp"

#include <complex>
#include <random>

using namespace qtop;

static Plumbing chain(std::vector<long> fr) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < (int)fr.size(); ++i)
    e.push_back({i, i + 1});
  return make_plumbing(fr, e);
}

static Plumbing e8() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < 7; ++i)
    e.push_back({i, i + 1});
  e.push_back({4, 7});
  return make_plumbing(std::vector<long>(8, -2), e);
}

static OmegaClass generic_omega(const RootParams &par, const Plumbing &p,
                                int skip = 0) {
  long m = par.family() == RootFamily::ZeroMod8 ? 1 : 2;
  for (const auto &alpha : enumerate_omegas(p.B, m)) {
    OmegaClass w{m, alpha};
    bool nonzero = false;
    for (const Rat &a : alpha)
      if (a != 0)
        nonzero = true;
    if (nonzero && omega_admissible(par, p, w) && skip-- == 0)
      return w;
  }
  throw std::runtime_error("no generic omega for this graph");
}

TEST_CASE("torsion factor: direct value and genericity guard") {
  RootParams par = root_params(7);
  Plumbing g = chain({-5});
  OmegaClass w{2, {Rat(-2, 5)}};
  // single vertex of degree zero: (x - 1/x)^{-2} at x = e^{2 pi i 2 alpha}
  std::complex<double> x = std::polar(1.0, 2.0 * M_PI * 2.0 * (-2.0 / 5.0));
  std::complex<double> expect = 1.0 / std::pow(x - 1.0 / x, 2.0);
  CHECK(std::abs(torsion_factor(par, g, w) - expect) < 1e-12);

  // integer colour: factor vanishes, matching the admissibility validator
  OmegaClass bad{2, {Rat(0)}};
  CHECK(!omega_admissible(par, g, bad));
  CHECK_THROWS_AS(torsion_factor(par, g, bad), std::domain_error);
}

TEST_CASE("factorization into stabilization, torsion and lattice factors") {
  std::vector<Plumbing> graphs = {chain({-5}), chain({-2, -3}),
                                  chain({-2, -5}), chain({-2, -2, -3})};
  for (long r : {6, 7, 9, 10}) {
    RootParams par = root_params(r);
    for (const auto &g : graphs) {
      OmegaClass w = generic_omega(par, g);
      FactorizationReport rep = factorization_check(par, g, w);
      INFO("r=", r, " n=", g.n, " |N-ABC|=",
           std::abs(rep.invariant - rep.product));
      CHECK(rep.pass);
      CHECK(rep.a_simplified_defined);
      if (par.family() == RootFamily::Odd) {
        // printed closed form has r^{-|V|}; the factor that actually occurs
        // is r^{-|V|/2}
        CHECK(rep.a_reconciled_half_powers == -g.n);
        CHECK(!rep.a_printed_match);
      } else {
        CHECK(rep.a_printed_match);
      }
    }
  }
}

TEST_CASE("gauss reciprocity: fixed examples") {
  CHECK(gauss_reciprocity_check({{Int(2)}}, {Int(0)}, 4).pass);
  CHECK(gauss_reciprocity_check({{Int(-2)}}, {Int(1)}, 8).pass);
  CHECK_THROWS_AS(gauss_reciprocity_check({{Int(2)}}, {Int(0)}, 5),
                  std::invalid_argument);
}

TEST_CASE("gauss reciprocity: randomized two-by-two matrices") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<long> entry(-4, 4);
  int done = 0;
  while (done < 40) {
    Int a = entry(rng), b = entry(rng), d = entry(rng);
    IMat B = {{a, b}, {b, d}};
    Int det = a * d - b * b;
    if (det == 0 || abs(det) > 8)
      continue;
    IVec p = {entry(rng), entry(rng)};
    for (long r : {4, 6, 8, 10, 12, 14, 16})
      CHECK(gauss_reciprocity_check(B, p, r).pass);
    ++done;
  }
}

TEST_CASE("sl2 and osp series of one sector differ by alternating signs") {
  Plumbing s3 = chain({-1});
  SltwoOspReport rep =
      sltwo_osp_relation_check(s3, {Int(0)}, {1}, Rat(50));
  CHECK(rep.delta == Rat(-1, 2));
  CHECK(rep.c_sign == -1);
  CHECK(rep.pass);
  CHECK(rep.terms_checked == 50);

  for (const auto &g : {chain({-5}), chain({-2, -3}), e8()})
    for (const auto &[b, s] : spinc_reps(g.B))
      CHECK(sltwo_osp_relation_check(g, b, s, Rat(50)).pass);
}

TEST_CASE("comparison coefficients: families, sizes and invariance") {
  Plumbing g = chain({-5});
  RootParams par = root_params(7);
  OmegaClass w = generic_omega(par, g);
  ComparisonCoefficients cc = comparison_coefficients(par, g, w);
  CHECK(cc.delta == -1);
  CHECK(!cc.even_case);
  CHECK(cc.torsion_multiplier == 4);
  CHECK(cc.b_reps.size() == 5);
  CHECK(cc.coeff.size() == 5);

  // well-definedness: shifting b by a column of B leaves the value unchanged
  for (const IVec &b : cc.b_reps) {
    IVec shifted = {b[0] - 5};
    CHECK(std::abs(comparison_coefficient(par, g, w, b, cc.s) -
                   comparison_coefficient(par, g, w, shifted, cc.s)) < 1e-12);
  }

  RootParams par10 = root_params(10);
  ComparisonCoefficients even = comparison_coefficients(par10, g, w);
  CHECK(even.delta == 1);
  CHECK(even.even_case);
  CHECK(even.torsion_multiplier == 2);

  CHECK_THROWS_WITH_AS(comparison_coefficients(root_params(11), g, w),
                       doctest::Contains("family not covered"),
                       std::domain_error);
  CHECK_THROWS_WITH_AS(comparison_coefficients(root_params(13), g, w),
                       doctest::Contains("family not covered"),
                       std::domain_error);
  OmegaClass w1{1, {Rat(-1, 4)}};
  Plumbing g4 = chain({-4});
  CHECK_THROWS_WITH_AS(comparison_coefficients(root_params(16), g4, w1),
                       doctest::Contains("family not covered"),
                       std::domain_error);
}

TEST_CASE("surgery invariant equals the coefficient-weighted series sum") {
  for (long r : {6, 7, 9, 10}) {
    RootParams par = root_params(r);
    for (const auto &g : {chain({-5}), chain({-2, -3})}) {
      for (int skip : {0, 1}) {
        OmegaClass w = generic_omega(par, g, skip);
        CgpZhatReport rep = cgp_vs_zhat_check(par, g, w, "gauss");
        INFO("r=", r, " n=", g.n, " skip=", skip, " diff=",
             std::abs(rep.lhs - rep.rhs));
        CHECK(rep.pass);
        CHECK(rep.per_spinc.size() == 5);
      }
    }
  }
  // regularized (damped) evaluation agrees with the exact one
  RootParams par7 = root_params(7);
  Plumbing g = chain({-2, -3});
  OmegaClass w = generic_omega(par7, g);
  CgpZhatReport abel = cgp_vs_zhat_check(par7, g, w, "abel");
  CHECK(abel.pass);
}

TEST_CASE("report serialization is deterministic") {
  RootParams par = root_params(7);
  Plumbing g = chain({-5});
  OmegaClass w = generic_omega(par, g);
  CgpZhatReport rep = cgp_vs_zhat_check(par, g, w, "gauss");
  std::string a = cgp_zhat_report_json(rep);
  std::string b =
      cgp_zhat_report_json(cgp_vs_zhat_check(par, g, w, "gauss"));
  CHECK(a == b);
  CHECK(a.find("\"lhs\":[") != std::string::npos);
  CHECK(a.find("\"per_spinc\":[{\"b\":[") != std::string::npos);
  CHECK(a.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("zero mod eight diagnostic") {
  RootParams par = root_params(16);
  Plumbing g = chain({-4});
  OmegaClass w{1, {Rat(-1, 4)}};
  REQUIRE(omega_admissible(par, g, w));
  ZeroMod8Report rep = zero_mod8_diagnostic(par, g, w);
  // the modified factorization is still an identity ...
  CHECK(rep.factorization_ok);
  // ... and the H_1 sum only sees the spin^c class ...
  CHECK(rep.a_sum_invariant);
  // ... but the prefactor changes with the spin representative (here by
  // e^{-pi i alpha^t B (s0 - s1)} = -1), so no comparison statement over
  // spin^c structures is obtained
  CHECK(!rep.representative_independent);
  CHECK(std::abs(rep.coeff_first + rep.coeff_second) < 1e-9);
  CHECK(std::abs(rep.coeff_first - rep.coeff_second) > 1e-6);
}
