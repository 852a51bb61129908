// Benchmark of the lattice-sum kernel: OpenMP table-driven backend against
// the literal serial re-evaluation kept as a test oracle.
//
//   bench_lattice [r] [repeats]

#include "qtop/cgp.hpp"

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qtop;
using Clock = std::chrono::steady_clock;

namespace {

Plumbing chain(std::vector<long> fr) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < (int)fr.size(); ++i)
    e.push_back({i, i + 1});
  return make_plumbing(fr, e);
}

OmegaClass generic_omega(const RootParams &par, const Plumbing &p) {
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
  throw std::runtime_error("no generic omega");
}

template <class F> double time_best(long repeats, F &&f) {
  double best = 1e300;
  for (long i = 0; i < repeats; ++i) {
    auto t0 = Clock::now();
    f();
    auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

} // namespace

int main(int argc, char **argv) {
  long r = argc > 1 ? std::atol(argv[1]) : 9;
  long repeats = argc > 2 ? std::atol(argv[2]) : 3;
  RootParams par = root_params(r);

  std::vector<Plumbing> graphs = {chain({-5}), chain({-2, -3}),
                                  chain({-2, -5}), chain({-2, -2, -3})};
#ifdef _OPENMP
  std::printf("r=%ld threads=%d repeats=%ld\n", r, omp_get_max_threads(),
              repeats);
#else
  std::printf("r=%ld threads=1 repeats=%ld\n", r, repeats);
#endif
  std::printf("%-16s %12s %12s %8s %10s\n", "graph", "parallel[s]",
              "serial[s]", "speedup", "|diff|");
  for (const auto &g : graphs) {
    OmegaClass w = generic_omega(par, g);
    std::complex<double> fast, slow;
    double tp = time_best(repeats, [&] { fast = cgp_invariant(par, g, w); });
    double ts =
        time_best(repeats, [&] { slow = cgp_invariant_serial(par, g, w); });
    char name[32];
    std::snprintf(name, sizeof(name), "chain/%ld", g.n);
    std::printf("%-16s %12.6f %12.6f %8.2f %10.2e\n", name, tp, ts, ts / tp,
                std::abs(fast - slow));
  }
  return 0;
}
