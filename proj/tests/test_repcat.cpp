#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtop/repcat.hpp"

#include <algorithm>

using namespace qtop;

static SpMat mat_add(const SpMat &a, const SpMat &b) {
  return mat_sub(a, mat_scale(Cyclo(Rat(-1)), b));
}

// defining relations as exact matrix identities
static void check_relations(const WeightModule &m) {
  const RootParams &par = m.par;
  const CtxPtr &ctx = m.ctx;
  Cyclo q2 = q_pow(par, ctx, Rat(2));
  Cyclo q2i = q_pow(par, ctx, Rat(-2));
  CHECK(mat_equal(mat_mul(m.K, m.E), mat_scale(q2, mat_mul(m.E, m.K))));
  CHECK(mat_equal(mat_mul(m.K, m.F), mat_scale(q2i, mat_mul(m.F, m.K))));
  Cyclo qm = q_pow(par, ctx, Rat(1)) - q_pow(par, ctx, Rat(-1));
  SpMat lhs = mat_add(mat_mul(m.E, m.F), mat_mul(m.F, m.E));
  SpMat rhs = mat_scale(qm.inverse(), mat_sub(m.K, m.Kinv));
  CHECK(mat_equal(lhs, rhs));
  CHECK(mat_equal(mat_mul(m.K, m.Kinv), SpMat::eye(m.dim)));
  // H-weight steps and parity flips
  for (long j = 0; j < m.dim; ++j) {
    for (auto &[i, v] : m.E.col[j])
      if (!v.is_zero()) {
        CHECK(m.wt[i] - m.wt[j] == 2);
        CHECK((m.parity[i] + m.parity[j]) % 2 == 1);
      }
    for (auto &[i, v] : m.F.col[j])
      if (!v.is_zero()) {
        CHECK(m.wt[i] - m.wt[j] == -2);
        CHECK((m.parity[i] + m.parity[j]) % 2 == 1);
      }
  }
  // nilpotency
  SpMat ep = SpMat::eye(m.dim), fp = SpMat::eye(m.dim);
  for (long l = 0; l < par.rbar; ++l) {
    ep = mat_mul(m.E, ep);
    fp = mat_mul(m.F, fp);
  }
  CHECK(mat_is_zero(ep));
  CHECK(mat_is_zero(fp));
}

static std::vector<std::pair<Rat, int>> character(const WeightModule &m) {
  std::vector<std::pair<Rat, int>> ch;
  for (long i = 0; i < m.dim; ++i)
    ch.push_back({m.wt[i], m.parity[i]});
  std::sort(ch.begin(), ch.end());
  return ch;
}

TEST_CASE("verma modules satisfy the defining relations") {
  for (long r : {5, 6, 8}) {
    CAPTURE(r);
    RootParams par = root_params(r);
    CtxPtr ctx = make_context(par, 3 * r);
    WeightModule v = verma(par, ctx, Rat(1, 3), 0);
    CHECK(v.dim == par.rbar);
    check_relations(v);
    // highest weight vector is killed by E
    CHECK(v.E.col[0].empty());
  }
}

TEST_CASE("verma E-action value") {
  RootParams par = root_params(5);
  CtxPtr ctx = make_context(par, 3 * 5);
  WeightModule v = verma(par, ctx, Rat(1, 3), 0);
  // E v_1 = <1><q^{1/3+9}; 0> v_0 = (q^{28/3} - q^{-28/3})/(q - q^{-1}) v_0
  auto num = [&](const Rat &z) { return q_pow(par, ctx, z).eval(); };
  auto expect = (num(Rat(28, 3)) - num(Rat(-28, 3))) / (num(1) - num(-1));
  CHECK(std::abs(v.E.get(0, 1).eval() - expect) < 1e-12);
}

TEST_CASE("typicality matches the singular-vector scan") {
  for (long r : {5, 6, 8, 9}) {
    CAPTURE(r);
    RootParams par = root_params(r);
    CtxPtr ctx = make_context(par, 4 * r);
    for (long num = -20; num <= 20; ++num) {
      Rat lam(num, 4);
      CAPTURE(lam.get_str());
      WeightModule v = verma(par, ctx, lam, 0);
      bool has_singular = false;
      for (long n = 1; n < par.rbar; ++n)
        if (v.E.get(n - 1, n).is_zero())
          has_singular = true;
      CHECK(is_typical(par, lam) == !has_singular);
    }
    // denominators other than 1, 2, 4 are never atypical
    CHECK(is_typical(par, Rat(1, 3)));
  }
}

TEST_CASE("typicality spot values") {
  RootParams par = root_params(5);
  CHECK(is_typical(par, Rat(1, 3)));
  // lambda = (r/4)(2m + p_n + 1) - rbar + n with r=5, m=0, n=2
  Rat bad = Rat(5, 4) * (2 * 0 + 0 + 1) - 10 + 2;
  CHECK_FALSE(is_typical(par, bad));
  CHECK_FALSE(is_typical(par, Rat(5, 4) * 1 - 10 + 1));
}

TEST_CASE("dual verma character") {
  for (long r : {5, 6}) {
    RootParams par = root_params(r);
    CtxPtr ctx = make_context(par, 3 * r);
    WeightModule v = verma(par, ctx, Rat(1, 3), 0);
    WeightModule d = dual_module(v);
    check_relations(d);
    // V^vee = V_(-lambda, p + rbar_0 + 1) as characters
    WeightModule w = verma(par, ctx, Rat(-1, 3), (0 + par.rbar % 2 + 1) % 2);
    CHECK(character(d) == character(w));
  }
}

TEST_CASE("tensor product character decomposition") {
  RootParams par = root_params(5);
  CtxPtr ctx = make_context(par, 30 * par.r);
  Rat l1(1, 3), l2(1, 5);
  REQUIRE(is_typical(par, l1));
  REQUIRE(is_typical(par, l2));
  REQUIRE(is_typical(par, l1 + l2));
  WeightModule a = verma(par, ctx, l1, 0);
  WeightModule b = verma(par, ctx, l2, 1);
  WeightModule t = tensor_module(a, b);
  check_relations(t);
  std::vector<std::pair<Rat, int>> expected;
  // summands V_(l1 + l2 + rbar - 1 - 2i, p1 + p2 + i); the top one contains
  // the product of the highest weight vectors
  for (long i = 0; i < par.rbar; ++i) {
    WeightModule s = verma(par, ctx, l1 + l2 + (par.rbar - 1) - 2 * i,
                           (0 + 1 + i) % 2);
    auto ch = character(s);
    expected.insert(expected.end(), ch.begin(), ch.end());
  }
  std::sort(expected.begin(), expected.end());
  CHECK(character(t) == expected);
  // tensoring with the trivial module preserves the character
  WeightModule one = one_dim_module(par, ctx, Rat(0), 0);
  CHECK(character(tensor_module(a, one)) == character(a));
  CHECK(character(tensor_module(one, a)) == character(a));
}

TEST_CASE("braiding is a module map") {
  RootParams par = root_params(5);
  CtxPtr ctx = make_context(par, 12 * par.r);
  WeightModule a = verma(par, ctx, Rat(1, 3), 0);
  WeightModule b = verma(par, ctx, Rat(1, 2), 1);
  WeightModule ab = tensor_module(a, b);
  WeightModule ba = tensor_module(b, a);
  SpMat c = braiding_matrix(a, b);
  CHECK(mat_equal(mat_mul(c, ab.E), mat_mul(ba.E, c)));
  CHECK(mat_equal(mat_mul(c, ab.F), mat_mul(ba.F, c)));
  CHECK(mat_equal(mat_mul(c, ab.K), mat_mul(ba.K, c)));
  // invertibility: columns stay independent because the reverse braiding
  // composes to a diagonal-free check; here just verify against a weight
  // grading: entries only connect equal total weights
  for (long j = 0; j < c.nc; ++j)
    for (auto &[i, v] : c.col[j])
      if (!v.is_zero())
        CHECK(ba.wt[i] == ab.wt[j]);
}

TEST_CASE("hexagon identities") {
  RootParams par = root_params(6);
  CtxPtr ctx = make_context(par, 24 * par.r);
  WeightModule u = verma(par, ctx, Rat(1, 3), 0);
  WeightModule v = verma(par, ctx, Rat(1, 2), 1);
  WeightModule w = verma(par, ctx, Rat(3, 2), 0);
  REQUIRE(is_typical(par, Rat(3, 2)));
  WeightModule vw = tensor_module(v, w);
  WeightModule uv = tensor_module(u, v);
  SpMat lhs1 = braiding_matrix(u, vw);
  SpMat rhs1 = mat_mul(kron(SpMat::eye(v.dim), braiding_matrix(u, w)),
                       kron(braiding_matrix(u, v), SpMat::eye(w.dim)));
  CHECK(mat_equal(lhs1, rhs1));
  SpMat lhs2 = braiding_matrix(uv, w);
  SpMat rhs2 = mat_mul(kron(braiding_matrix(u, w), SpMat::eye(v.dim)),
                       kron(SpMat::eye(u.dim), braiding_matrix(v, w)));
  CHECK(mat_equal(lhs2, rhs2));
}

TEST_CASE("quantum dimension of a verma vanishes") {
  for (long r : {5, 6, 8, 16}) {
    CAPTURE(r);
    RootParams par = root_params(r);
    CtxPtr ctx = make_context(par, 3 * r);
    WeightModule v = verma(par, ctx, Rat(1, 3), 0);
    CHECK(qdim(v, par.rbar).is_zero());
  }
}

TEST_CASE("twist of a typical verma is the closed-form scalar") {
  RootParams par = root_params(5);
  CtxPtr ctx = make_context(par, 36 * par.r);
  WeightModule v = verma(par, ctx, Rat(1, 3), 0);
  SpMat th = twist_matrix(v);
  Cyclo tv = twist_value(par, ctx, Rat(1, 3));
  CHECK(mat_equal(th, mat_scale(tv, SpMat::eye(v.dim))));
  CHECK(tv == T_scalar(par, ctx, Rat(1, 3)));
}

TEST_CASE("twist of one-dimensional modules") {
  for (long r : {5, 6}) {
    CAPTURE(r);
    RootParams par = root_params(r);
    CtxPtr ctx = make_context(par, 8);
    for (long k : {1L, 2L, 3L}) {
      WeightModule m = one_dim_module(par, ctx, Rat(k * par.r, 2), 1);
      SpMat th = twist_matrix(m);
      Rat mu(k * par.r, 2);
      Cyclo expect = q_pow(par, ctx, mu * mu / 2 + (1 - par.rbar) * mu);
      CHECK(th.get(0, 0) == expect);
    }
    // free realization modules are transparent for the twist
    for (long k : {-2L, 1L, 5L}) {
      WeightModule s = sigma_module(par, ctx, k, 0);
      CHECK(twist_matrix(s).get(0, 0) == Cyclo(ctx, Rat(1)));
    }
  }
  CHECK_THROWS_AS(one_dim_module(root_params(5), make_context(root_params(5)),
                                 Rat(1, 3), 0),
                  std::domain_error);
}

TEST_CASE("ribbon structure exists iff r != 4 mod 8") {
  CHECK(ribbon_check(root_params(5)));
  CHECK(ribbon_check(root_params(6)));
  CHECK(ribbon_check(root_params(16)));
  CHECK_FALSE(ribbon_check(root_params(12)));
  CHECK_FALSE(ribbon_check(root_params(20)));
}

TEST_CASE("modified dimension and S, T scalars") {
  RootParams par = root_params(5);
  CtxPtr ctx = make_context(par, 24 * par.r);
  // odd function
  CHECK(mdim(par, ctx, Rat(1, 3)) == -mdim(par, ctx, Rat(-1, 3)));
  // closed form, float comparison
  auto qn = [&](double z) {
    return std::exp(std::complex<double>(0, 2 * M_PI * z / 5));
  };
  double l = 1.0 / 3;
  auto expect = (qn(l) + qn(-l)) / (qn(10 * l) - qn(-10 * l));
  CHECK(std::abs(mdim(par, ctx, Rat(1, 3)).eval() - expect) < 1e-12);
  CHECK(std::abs(S_scalar(par, ctx, Rat(1, 2), Rat(3, 2)).eval() -
                 qn(0.5 * 1.5)) < 1e-12);
  CHECK(T_scalar(par, ctx, Rat(par.rbar - 1)) == Cyclo(ctx, Rat(1)));
  // pole: 2 rbar lambda = 0 mod r
  CHECK_THROWS_AS(mdim(par, ctx, Rat(1, 4)), std::domain_error);
  CHECK_THROWS_WITH(mdim(par, ctx, Rat(5)), "modified dimension pole");
}

TEST_CASE("open Hopf link values") {
  RootParams par = root_params(5);
  CtxPtr ctx = make_context(par, 72 * par.r);
  Rat lam(1, 3), lamp(2, 3);
  // typical case: (-1)^{p+p'} q^{l l'} / d(V)
  for (int p : {0, 1})
    for (int pp : {0, 1}) {
      Cyclo lhs = open_hopf(par, ctx, lamp, pp, lam, p);
      Cyclo rhs = S_scalar(par, ctx, lamp, lam) *
                  mdim_signed(par, ctx, lam, p).inverse();
      if ((p + pp) % 2)
        rhs = -rhs;
      CHECK(lhs == rhs);
    }
  // trace symmetry: d(l) Phi(l', l) = d(l') Phi(l, l')
  Cyclo a = mdim_signed(par, ctx, lam, 0) * open_hopf(par, ctx, lamp, 1, lam, 0);
  Cyclo b = mdim_signed(par, ctx, lamp, 1) * open_hopf(par, ctx, lam, 0, lamp, 1);
  CHECK(a == b);
  // degenerate weight picks up the factor rbar
  Rat deg = Rat(par.r, 4) * (par.rbar + 1);
  Cyclo d = open_hopf(par, ctx, Rat(0), 0, deg, 0);
  CHECK(d == Cyclo(ctx, Rat(par.rbar)) * S_scalar(par, ctx, Rat(0), deg));
}

TEST_CASE("double braiding with the free realization is the bicharacter") {
  for (long r : {5, 6}) {
    CAPTURE(r);
    RootParams par = root_params(r);
    CtxPtr ctx = make_context(par, 12 * par.r);
    WeightModule v = verma(par, ctx, Rat(1, 3), 0);
    for (long k : {1L, 2L}) {
      WeightModule s = sigma_module(par, ctx, k, 1);
      SpMat dbl = mat_mul(braiding_matrix(s, v), braiding_matrix(v, s));
      Cyclo psi = psi_value(par, ctx, v.wt[0], k);
      CHECK(mat_equal(dbl, mat_scale(psi, SpMat::eye(v.dim))));
    }
  }
}

TEST_CASE("simple quotients of atypical vermas") {
  RootParams par = root_params(5);
  CtxPtr ctx = make_context(par, 12 * par.r);
  // lambda = (r/4)(2m + p_n + 1) - rbar + n with m = 0, n = 2
  Rat lam = Rat(5, 4) - 10 + 2;
  REQUIRE_FALSE(is_typical(par, lam));
  WeightModule s = simple_module(par, ctx, lam, 0);
  CHECK(s.dim == 2);
  check_relations(s);
  CHECK(s.wt[0] == lam + par.rbar - 1);
  // one-dimensional modules arise at n = 1
  Rat lam1 = Rat(5, 2) - 10 + 1; // m = 0, n = 1, p_1 = 1
  REQUIRE_FALSE(is_typical(par, lam1));
  WeightModule t = simple_module(par, ctx, lam1, 0);
  CHECK(t.dim == 1);
  CHECK(t.wt[0] * 2 / par.r == Rat(1)); // weight in (r/2) Z
  // typical weights hand back the verma
  CHECK(simple_module(par, ctx, Rat(1, 3), 0).dim == par.rbar);
}

TEST_CASE("modular data") {
  for (long r : {5, 6, 7, 9, 10, 16}) {
    CAPTURE(r);
    RootParams par = root_params(r);
    CtxPtr ctx = ribbon_context(par);
    ModularData md = modular_data(par, ctx);
    CHECK(md.delta_plus * md.delta_minus == Cyclo(ctx, Rat(md.zeta)));
    long expect_zeta = (r % 8 == 0) ? -r : -par.rdot;
    CHECK(md.zeta == expect_zeta);
    CHECK((long)md.kirby_index_set.size() == (r % 8 == 0 ? r : par.rdot));
    // numeric spot checks of the closed forms
    auto dp = md.delta_plus.eval();
    double rd = (double)par.rdot;
    std::complex<double> expect;
    auto qpw = [&](double z) {
      return std::exp(std::complex<double>(0, 2 * M_PI * z / r));
    };
    switch (r % 8) {
    case 1:
      expect = std::sqrt(rd) * qpw(-1.5);
      break;
    case 5: case 6:
      expect = -std::sqrt(rd) * qpw(-1.5);
      break;
    case 2: case 3:
      expect = std::complex<double>(0, -1) * std::sqrt(rd) * qpw(-1.5);
      break;
    case 7:
      expect = std::complex<double>(0, 1) * std::sqrt(rd) * qpw(-1.5);
      break;
    case 0:
      expect = std::sqrt((double)r) *
               std::exp(std::complex<double>(0, M_PI / 4)) * qpw(-1.5);
      break;
    }
    CHECK(std::abs(dp - expect) < 1e-9);
  }
  CHECK_THROWS_AS(modular_data(root_params(12), ribbon_context(root_params(12))),
                  std::domain_error);
}
