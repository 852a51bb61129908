#include "qtop/qarith.hpp"

#include <mutex>

namespace qtop {

RootParams root_params(long r) {
  if (r < 3 || r == 4)
    throw std::domain_error("order r must be >= 3 and != 4");
  RootParams p;
  p.r = r;
  if (r % 2)
    p.rbar = 2 * r;
  else if (r % 4 == 2)
    p.rbar = r;
  else if (r % 8 == 0)
    p.rbar = r / 2;
  else
    p.rbar = r / 4;
  p.t = (r % 2) ? 1 : 2;
  p.eps = 2 / p.t;
  p.rdot = r / p.t;
  return p;
}

std::vector<long> RootParams::i_set() const {
  std::vector<long> ks;
  switch (family()) {
  case RootFamily::Odd:
  case RootFamily::TwoMod4:
    for (long i = 0; i < rdot; ++i)
      ks.push_back(-rbar + 1 + 2 * i);
    break;
  case RootFamily::ZeroMod8:
    for (long i = 0; i < r; ++i)
      ks.push_back(-rbar + 1 + i);
    break;
  case RootFamily::FourMod8:
    throw std::domain_error("no modular index set for r = 4 mod 8");
  }
  return ks;
}

Laurent super_bracket(long n) {
  if (n < 0)
    throw std::invalid_argument("super_bracket: negative argument");
  Laurent p;
  for (long i = 0; i < n; ++i)
    p.add_term(n - 1 - 2 * i, ((n + 1 + i) % 2) ? Int(-1) : Int(1));
  return p;
}

Laurent super_factorial(long n) {
  // memoized: binomials hit the same factorials over and over
  static std::mutex m;
  static std::vector<Laurent> cache = {Laurent::one()};
  std::lock_guard<std::mutex> lock(m);
  while ((long)cache.size() <= n)
    cache.push_back(cache.back() * super_bracket((long)cache.size()));
  return cache[n];
}

Laurent super_binomial(long n, long k) {
  if (k < 0 || k > n)
    return Laurent();
  if (k > n - k)
    k = n - k; // the quotient is symmetric in k <-> n - k
  static std::mutex m;
  static std::map<std::pair<long, long>, Laurent> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find({n, k});
  if (it != cache.end())
    return it->second;
  // <n>!/<n-k>! as a direct product keeps the intermediate small
  Laurent num = Laurent::one();
  for (long i = n - k + 1; i <= n; ++i)
    num *= super_bracket(i);
  Laurent b = divide_exact(num, super_factorial(k));
  cache[{n, k}] = b;
  return b;
}

Cyclo eval_at_q(const Laurent &p, const CtxPtr &ctx, const RootParams &par) {
  Cyclo s(ctx, Rat(0));
  for (auto &[e, c] : p.terms())
    s += Cyclo::root_of_unity(ctx, Int(e), Int(par.r), Rat(c));
  return s;
}

Cyclo q_pow(const RootParams &par, const CtxPtr &ctx, const Rat &z) {
  Rat w = z / par.r;
  w.canonicalize();
  return Cyclo::root_of_unity(ctx, w.get_num(), w.get_den());
}

CtxPtr make_context(const RootParams &par, long extra) {
  return CycloContext::make(lcm_long(2 * par.r, extra));
}

} // namespace qtop
