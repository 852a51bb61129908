#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtop/plumbing.hpp"

#include <random>

using namespace qtop;

static Plumbing chain(std::vector<long> fr) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < (int)fr.size(); ++i)
    e.push_back({i, i + 1});
  return make_plumbing(fr, e);
}

static Plumbing e8() {
  std::vector<long> fr(8, -2);
  std::vector<std::pair<int, int>> e = {{0, 1}, {1, 2}, {2, 3}, {3, 4},
                                        {4, 5}, {5, 6}, {4, 7}};
  return make_plumbing(fr, e);
}

static IMat mat_mul(const IMat &A, const IMat &B) {
  long m = A.size(), n = B[0].size(), k = B.size();
  IMat C(m, IVec(n));
  for (long i = 0; i < m; ++i)
    for (long l = 0; l < k; ++l)
      if (A[i][l] != 0)
        for (long j = 0; j < n; ++j)
          C[i][j] += A[i][l] * B[l][j];
  return C;
}

TEST_CASE("graph construction and validation") {
  Plumbing s3 = chain({-1});
  CHECK(s3.n == 1);
  CHECK(det_int(s3.B) == -1);
  CHECK_THROWS(make_plumbing({-1, -2}, {})); // disconnected
  CHECK_THROWS(make_plumbing({-1, -2}, {{0, 1}, {0, 1}}));
  CHECK_THROWS(make_plumbing({}, {}));
  Plumbing g = chain({-2, -3});
  CHECK(det_int(g.B) == 5);
  CHECK(g.deg[0] == 1);
  Plumbing e = e8();
  CHECK(abs(det_int(e.B)) == 1);
  CHECK(e.deg[4] == 3);
}

TEST_CASE("json round trip") {
  Plumbing g = chain({-2, -3, -4});
  Plumbing h = plumbing_from_json(plumbing_to_json(g));
  CHECK(h.framing == g.framing);
  CHECK(h.B == g.B);
  CHECK_THROWS(plumbing_from_json("{\"vertices\":[]}"));
  // arbitrary ids
  Plumbing k = plumbing_from_json(
      R"({"vertices":[{"id":10,"framing":-2},{"id":3,"framing":-3}],)"
      R"("edges":[[10,3]]})");
  CHECK(k.framing == std::vector<long>{-2, -3});
}

TEST_CASE("smith normal form properties") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    long n = 1 + trial % 4;
    IMat A(n, IVec(n));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        A[i][j] = (long)(rng() % 9) - 4;
    Snf s = snf(A);
    // U A V = D
    IMat D = mat_mul(mat_mul(s.U, A), s.V);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        CHECK(D[i][j] == (i == j ? s.d[i] : Int(0)));
    CHECK(abs(det_int(s.U)) == 1);
    CHECK(abs(det_int(s.V)) == 1);
    IMat UU = mat_mul(s.U, s.Uinv);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        CHECK(UU[i][j] == (i == j ? Int(1) : Int(0)));
    for (long i = 0; i + 1 < n; ++i)
      if (s.d[i] != 0)
        CHECK(s.d[i + 1] % s.d[i] == 0);
  }
}

TEST_CASE("inertia") {
  Plumbing g = chain({-2, -3, -4});
  Inertia in = inertia(g.B);
  CHECK(in.neg == 3);
  CHECK(in.pos == 0);
  IMat H = {{0, 1}, {1, 0}}; // hyperbolic
  Inertia ih = inertia(H);
  CHECK(ih.pos == 1);
  CHECK(ih.neg == 1);
  Inertia ie = inertia(e8().B);
  CHECK(ie.sigma() == -8);
}

TEST_CASE("homology data") {
  Plumbing g = chain({-2, -3});
  CHECK(h1_order(g.B) == 5);
  auto reps = h1_reps(g.B);
  CHECK(reps.size() == 5);
  // all distinct mod B Z^n: check via linking with generators or via snf keys
  auto spins = spin_structures(g.B);
  CHECK(spins.size() == 1); // odd determinant: unique spin structure
  for (auto &s : spins)
    for (long i = 0; i < g.n; ++i) {
      Int lhs = 0;
      for (long j = 0; j < g.n; ++j)
        lhs += g.B[i][j] * s[j];
      CHECK((lhs - g.B[i][i]) % 2 == 0);
    }
  auto sc = spinc_reps(g.B);
  CHECK((long)sc.size() == 5); // |spin^c| = |det B|
  Plumbing h = chain({-2}); // even determinant: two spin structures
  CHECK((long)spin_structures(h.B).size() == 2);
  CHECK((long)spinc_reps(h.B).size() == 2);
  Plumbing h2 = chain({-2, -4}); // det 7
  CHECK((long)spin_structures(h2.B).size() == 1);
  CHECK((long)spinc_reps(h2.B).size() == 7);
}

TEST_CASE("spin^c classes are residues mod 2B") {
  Plumbing g = chain({-2, -3});
  auto sc = spinc_reps(g.B);
  // shifting b by a full lattice vector B*m keeps the class
  IVec b = sc[0].first;
  auto s = sc[0].second;
  IVec b2 = b;
  for (long i = 0; i < g.n; ++i)
    b2[i] += g.B[i][0] * 3;
  CHECK(spinc_canonical(g.B, spinc_vector(g.B, b, s)) ==
        spinc_canonical(g.B, spinc_vector(g.B, b2, s)));
}

TEST_CASE("linking form") {
  Plumbing g = chain({-2, -3});
  QMat Binv = inverse_rational(g.B);
  IVec a{1, 0}, b{0, 1};
  Rat l = linking(Binv, a, b);
  CHECK(rat_den(l) == 5);
  // well-defined on H1: shift by column of B
  IVec a2{1 + (long)(-2), 0 + 1}; // a + B e_0
  IVec a2v{(long)-1, 1};
  CHECK(linking(Binv, a2v, b) == l);
  // symmetric
  CHECK(linking(Binv, a, b) == linking(Binv, b, a));
}

TEST_CASE("rokhlin residue") {
  Plumbing g = chain({-2, -3});
  auto spins = spin_structures(g.B);
  long mu = rokhlin_mu(g.B, spins[0]);
  CHECK(mu >= 0);
  CHECK(mu < 4);
}

TEST_CASE("omega enumeration") {
  Plumbing g = chain({-2, -3});
  for (long m : {1L, 2L}) {
    auto oms = enumerate_omegas(g.B, m);
    CHECK(oms.size() == 5);
    for (auto &al : oms)
      for (long i = 0; i < g.n; ++i) {
        Rat v = 0;
        for (long j = 0; j < g.n; ++j)
          v += Rat(g.B[i][j]) * al[j];
        CHECK(rat_mod(v, Rat(m)) == 0); // cocycle condition B*alpha = 0 mod m
      }
  }
}

TEST_CASE("weak negative definiteness") {
  CHECK(weakly_negative_definite(chain({-1})));
  CHECK(weakly_negative_definite(chain({-2, -3})));
  CHECK(weakly_negative_definite(e8()));
  // star with center -1 and three -2 legs: B^{-1} positive at the center
  Plumbing star = make_plumbing({-1, -2, -2, -2}, {{0, 1}, {0, 2}, {0, 3}});
  CHECK_FALSE(weakly_negative_definite(star));
  Plumbing star2 = make_plumbing({-2, -2, -2, -2}, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(weakly_negative_definite(star2));
  CHECK(h1_order(star2.B) == 4);
}
