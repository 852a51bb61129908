#pragma once

#include "cyclotomic.hpp"
#include "laurent.hpp"

namespace qtop {

enum class RootFamily { Odd, TwoMod4, ZeroMod8, FourMod8 };

// Numerical shape of the chosen root of unity q = e^{2 pi i / r}.
struct RootParams {
  long r = 0;
  long rbar = 0; // nilpotency order: least n with <n> = 0 at v = q
  long t = 0;    // gcd(2, r)
  long eps = 0;  // 2 / t
  long rdot = 0; // r / t

  RootFamily family() const {
    if (r % 2)
      return RootFamily::Odd;
    if (r % 4 == 2)
      return RootFamily::TwoMod4;
    return r % 8 == 0 ? RootFamily::ZeroMod8 : RootFamily::FourMod8;
  }

  // index set of Verma weights entering modular sums; defined for the three
  // families with a ribbon structure
  std::vector<long> i_set() const;
};

// throws std::domain_error for r < 3 or r = 4
RootParams root_params(long r);

// super quantum integer <n> as a Laurent polynomial in v
Laurent super_bracket(long n);
// <n>! = <n><n-1>...<1>
Laurent super_factorial(long n);
// super binomial; zero outside 0 <= k <= n
Laurent super_binomial(long n, long k);

// evaluate a Laurent polynomial at v = q = e^{2 pi i / r}
Cyclo eval_at_q(const Laurent &p, const CtxPtr &ctx, const RootParams &par);

// q^z for rational z, as an exact root of unity
Cyclo q_pow(const RootParams &par, const CtxPtr &ctx, const Rat &z);

// context with conductor lcm(2r, extra)
CtxPtr make_context(const RootParams &par, long extra = 1);

} // namespace qtop
