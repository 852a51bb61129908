#include "qtop/cyclotomic.hpp"

#include <cstdlib>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qtop {

long lcm_long(long a, long b) { return std::lcm(a, b); }

long CycloContext::conductor_cap() {
  if (const char *s = std::getenv("QTOP_CONDUCTOR_CAP")) {
    long v = std::atol(s);
    if (v > 0)
      return v;
  }
  return 100000;
}

// ---- cyclotomic polynomial ----

namespace {

// dense integer polynomial exact division (monic divisor not required but
// division must be exact)
std::vector<Int> zpoly_div_exact(const std::vector<Int> &a,
                                 const std::vector<Int> &b) {
  std::vector<Int> num = a;
  long da = (long)a.size() - 1, db = (long)b.size() - 1;
  std::vector<Int> quo(da - db + 1);
  for (long i = da - db; i >= 0; --i) {
    Int top = num[i + db];
    if (top == 0)
      continue;
    Int q = top / b[db];
    quo[i] = q;
    for (long j = 0; j <= db; ++j)
      num[i + j] -= q * b[j];
  }
  for (auto &c : num)
    if (c != 0)
      throw std::logic_error("inexact polynomial division");
  return quo;
}

std::map<long, std::vector<Int>> &phi_cache() {
  static std::map<long, std::vector<Int>> c;
  return c;
}
std::mutex phi_mutex;

} // namespace

std::vector<Int> cyclotomic_poly(long M) {
  std::lock_guard<std::mutex> lk(phi_mutex);
  auto &cache = phi_cache();
  // iterative: fill cache for all divisors of M in increasing order
  std::vector<long> divs;
  for (long d = 1; d <= M; ++d)
    if (M % d == 0)
      divs.push_back(d);
  for (long d : divs) {
    if (cache.count(d))
      continue;
    // x^d - 1 divided by product of Phi_e over proper divisors e of d
    std::vector<Int> p(d + 1);
    p[0] = -1;
    p[d] = 1;
    for (long e : divs) {
      if (e >= d || d % e != 0)
        continue;
      p = zpoly_div_exact(p, cache.at(e));
    }
    cache[d] = std::move(p);
  }
  return cache.at(M);
}

std::shared_ptr<const CycloContext> CycloContext::make(long M) {
  if (M < 1)
    throw std::invalid_argument("conductor must be positive");
  if (M > conductor_cap())
    throw std::domain_error("conductor " + std::to_string(M) +
                            " exceeds cap " + std::to_string(conductor_cap()) +
                            " (set QTOP_CONDUCTOR_CAP to raise)");
  auto ctx = std::make_shared<CycloContext>();
  ctx->M = M;
  ctx->phi = cyclotomic_poly(M);
  ctx->deg = (long)ctx->phi.size() - 1;
  if (M <= 4096) {
    // x^e mod Phi_M for e in [deg, M)
    long deg = ctx->deg;
    ctx->rows.resize(M - deg);
    std::vector<Int> cur(deg); // x^deg mod Phi = -phi[0..deg-1]
    for (long i = 0; i < deg; ++i)
      cur[i] = -ctx->phi[i];
    ctx->rows[0] = cur;
    for (long e = deg + 1; e < M; ++e) {
      std::vector<Int> nxt(deg);
      Int top = cur[deg - 1];
      for (long i = deg - 1; i >= 1; --i)
        nxt[i] = cur[i - 1] - top * ctx->phi[i];
      nxt[0] = -top * ctx->phi[0];
      ctx->rows[e - deg] = nxt;
      cur = std::move(nxt);
    }
    ctx->have_rows = true;
  }
  return ctx;
}

// ---- Cyclo ----

void Cyclo::add_term(long e, const Rat &c) {
  if (c == 0)
    return;
  auto it = t_.find(e);
  if (it == t_.end())
    t_[e] = c;
  else {
    it->second += c;
    if (it->second == 0)
      t_.erase(it);
  }
}

void Cyclo::merge_ctx(const Cyclo &o) {
  if (!ctx_)
    ctx_ = o.ctx_;
  else if (o.ctx_ && o.ctx_->M != ctx_->M)
    throw std::logic_error("cyclotomic context mismatch (conductors " +
                           std::to_string(ctx_->M) + " vs " +
                           std::to_string(o.ctx_->M) + ")");
}

Cyclo Cyclo::zeta_pow(CtxPtr ctx, long e, const Rat &c) {
  Cyclo r;
  r.ctx_ = std::move(ctx);
  long M = r.ctx_->M;
  e = ((e % M) + M) % M;
  if (c != 0)
    r.t_[e] = c;
  return r;
}

Cyclo Cyclo::root_of_unity(CtxPtr ctx, const Int &num, const Int &den,
                           const Rat &c) {
  if (den == 0)
    throw std::invalid_argument("root_of_unity: zero denominator");
  Rat z(num, den);
  z.canonicalize();
  long d = to_long(z.get_den());
  long M = ctx->M;
  if (M % d != 0)
    throw std::domain_error("root order " + std::to_string(d) +
                            " not available in conductor " +
                            std::to_string(M));
  Int e = z.get_num() * (M / d);
  long el = to_long(((e % M) + M) % M);
  return zeta_pow(std::move(ctx), el, c);
}

Cyclo &Cyclo::operator+=(const Cyclo &o) {
  merge_ctx(o);
  for (auto &[e, c] : o.t_)
    add_term(e, c);
  if (ctx_ && (long)t_.size() > ctx_->deg)
    reduce();
  return *this;
}

Cyclo &Cyclo::operator-=(const Cyclo &o) {
  merge_ctx(o);
  for (auto &[e, c] : o.t_)
    add_term(e, -c);
  if (ctx_ && (long)t_.size() > ctx_->deg)
    reduce();
  return *this;
}

Cyclo operator*(const Cyclo &a, const Cyclo &b) {
  Cyclo r;
  r.ctx_ = a.ctx_;
  r.merge_ctx(b);
  long M = r.ctx_ ? r.ctx_->M : 1;
  for (auto &[ea, ca] : a.t_)
    for (auto &[eb, cb] : b.t_)
      r.add_term((ea + eb) % M, ca * cb);
  if (r.ctx_ && (long)r.t_.size() > r.ctx_->deg)
    r.reduce();
  return r;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto &[e, c] : r.t_)
    c = -c;
  return r;
}

Cyclo &Cyclo::scale(const Rat &c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto &[e, v] : t_)
    v *= c;
  return *this;
}

void Cyclo::reduce() {
  if (!ctx_ || t_.empty())
    return;
  long deg = ctx_->deg, M = ctx_->M;
  if (t_.rbegin()->first < deg)
    return;
  std::vector<Rat> dense(deg);
  if (ctx_->have_rows) {
    for (auto &[e, c] : t_) {
      if (e < deg)
        dense[e] += c;
      else {
        const auto &row = ctx_->rows[e - deg];
        for (long i = 0; i < deg; ++i)
          if (row[i] != 0)
            dense[i] += c * row[i];
      }
    }
  } else {
    std::vector<Rat> full(M);
    for (auto &[e, c] : t_)
      full[e] += c;
    for (long e = M - 1; e >= deg; --e) {
      Rat c = full[e];
      if (c == 0)
        continue;
      full[e] = 0;
      for (long j = 0; j < deg; ++j)
        if (ctx_->phi[j] != 0)
          full[e - deg + j] -= c * ctx_->phi[j];
    }
    for (long i = 0; i < deg; ++i)
      dense[i] = full[i];
  }
  t_.clear();
  for (long i = 0; i < deg; ++i)
    if (dense[i] != 0)
      t_[i] = dense[i];
}

bool Cyclo::is_zero() const {
  if (t_.empty())
    return true;
  if (t_.size() == 1)
    return false; // a nonzero multiple of a root of unity
  if (!ctx_)
    return false;
  Cyclo c = *this;
  c.reduce();
  return c.t_.empty();
}

bool Cyclo::operator==(const Cyclo &o) const {
  if (t_ == o.t_)
    return true;
  return (*this - o).is_zero();
}

Cyclo Cyclo::pow(long e) const {
  if (e < 0)
    return inverse().pow(-e);
  Cyclo base = *this;
  Cyclo r = ctx_ ? Cyclo(ctx_, Rat(1)) : Cyclo(Rat(1));
  while (e > 0) {
    if (e & 1)
      r = r * base;
    if (e >>= 1)
      base = base * base;
  }
  return r;
}

namespace {

// polynomial division over Q: returns quotient, leaves remainder in a
std::vector<Rat> qpoly_divrem(std::vector<Rat> &a, const std::vector<Rat> &b) {
  long da = (long)a.size() - 1, db = (long)b.size() - 1;
  while (da >= 0 && a[da] == 0)
    --da;
  if (da < db)
    return {};
  std::vector<Rat> quo(da - db + 1);
  for (long i = da - db; i >= 0; --i) {
    Rat q = a[i + db] / b[db];
    if (q == 0)
      continue;
    quo[i] = q;
    for (long j = 0; j <= db; ++j)
      a[i + j] -= q * b[j];
  }
  return quo;
}

long qpoly_deg(const std::vector<Rat> &a) {
  for (long i = (long)a.size() - 1; i >= 0; --i)
    if (a[i] != 0)
      return i;
  return -1;
}

std::vector<Rat> qpoly_trim(std::vector<Rat> a) {
  a.resize(qpoly_deg(a) + 1);
  return a;
}

} // namespace

Cyclo Cyclo::inverse() const {
  if (t_.empty())
    throw std::domain_error("division by zero cyclotomic value");
  if (!ctx_ || t_.size() == 1) {
    // c * zeta^e inverts termwise
    Cyclo r;
    r.ctx_ = ctx_;
    auto [e, c] = *t_.begin();
    long M = ctx_ ? ctx_->M : 1;
    r.t_[(M - e) % M] = 1 / c;
    return r;
  }
  Cyclo a = *this;
  a.reduce();
  if (a.t_.empty())
    throw std::domain_error("division by zero cyclotomic value");
  long deg = ctx_->deg;
  std::vector<Rat> r0(deg + 1), r1(deg), t0, t1{Rat(1)};
  for (long i = 0; i <= deg; ++i)
    r0[i] = Rat(ctx_->phi[i]);
  for (auto &[e, c] : a.t_)
    r1[e] = c;
  r1 = qpoly_trim(r1);
  // extended Euclid maintaining r == t * a (mod Phi_M)
  while (qpoly_deg(r1) >= 0) {
    std::vector<Rat> rem = r0;
    std::vector<Rat> q = qpoly_divrem(rem, r1);
    rem = qpoly_trim(rem);
    // tnew = t0 - q*t1
    std::vector<Rat> tnew = t0;
    if (!q.empty() && !t1.empty()) {
      tnew.resize(std::max(tnew.size(), q.size() + t1.size() - 1));
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < t1.size(); ++j)
          tnew[i + j] -= q[i] * t1[j];
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = qpoly_trim(std::move(tnew));
  }
  if (qpoly_deg(r0) != 0)
    throw std::logic_error("cyclotomic inverse: gcd not constant");
  Cyclo inv;
  inv.ctx_ = ctx_;
  Rat c0 = r0[0];
  for (long i = 0; i < (long)t0.size(); ++i)
    if (t0[i] != 0)
      inv.t_[i] = t0[i] / c0;
  return inv;
}

Cyclo Cyclo::conj() const {
  Cyclo r;
  r.ctx_ = ctx_;
  long M = ctx_ ? ctx_->M : 1;
  for (auto &[e, c] : t_)
    r.add_term((M - e) % M, c);
  return r;
}

std::complex<double> Cyclo::eval() const {
  long M = ctx_ ? ctx_->M : 1;
  std::complex<double> s = 0;
  const double tau = 6.283185307179586476925286766559;
  for (auto &[e, c] : t_) {
    double a = tau * double(e) / double(M);
    s += c.get_d() * std::complex<double>(std::cos(a), std::sin(a));
  }
  return s;
}

std::string Cyclo::str() const {
  if (t_.empty())
    return "0";
  std::ostringstream os;
  long M = ctx_ ? ctx_->M : 1;
  bool first = true;
  for (auto &[e, c] : t_) {
    if (!first)
      os << " + ";
    first = false;
    os << "(" << c.get_str() << ")";
    if (e != 0)
      os << "*z" << M << "^" << e;
  }
  return os.str();
}

Cyclo exact_sqrt(CtxPtr ctx, long n) {
  if (n <= 0)
    throw std::invalid_argument("exact_sqrt of non-positive integer");
  Cyclo r(ctx, Rat(1));
  long M = ctx->M;
  auto zeta = [&](long num, long den) {
    if (M % den != 0)
      throw std::domain_error("exact_sqrt: conductor lacks order-" +
                              std::to_string(den) + " roots");
    long e = ((num * (M / den)) % M + M) % M;
    return Cyclo::zeta_pow(ctx, e);
  };
  for (long p = 2; p * p <= n; ++p) {
    if (n % p)
      continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i)
      r.scale(Rat(p));
    if (e & 1) {
      if (p == 2) {
        r = r * (zeta(1, 8) + zeta(-1, 8));
      } else {
        Cyclo g(ctx, Rat(0));
        for (long j = 0; j < p; ++j)
          g += zeta((j * j) % p, p);
        if (p % 4 == 3)
          g = g * zeta(-1, 4); // Gauss sum is i*sqrt(p) here
        r = r * g;
      }
    }
  }
  if (n > 1) { // leftover prime
    long p = n;
    if (p == 2)
      r = r * (zeta(1, 8) + zeta(-1, 8));
    else {
      Cyclo g(ctx, Rat(0));
      for (long j = 0; j < p; ++j)
        g += zeta((j * j) % p, p);
      if (p % 4 == 3)
        g = g * zeta(-1, 4);
      r = r * g;
    }
  }
  return r;
}

} // namespace qtop
