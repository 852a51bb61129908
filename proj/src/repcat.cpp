#include "qtop/repcat.hpp"

namespace qtop {

SpMat SpMat::eye(long n) {
  SpMat m(n, n);
  for (long j = 0; j < n; ++j)
    m.col[j][j] = Cyclo(Rat(1));
  return m;
}

void SpMat::add(long i, long j, const Cyclo &v) {
  if (v.structurally_zero())
    return;
  auto &c = col[j];
  auto it = c.find(i);
  if (it == c.end())
    c.emplace(i, v);
  else {
    it->second += v;
    it->second.reduce();
    if (it->second.structurally_zero())
      c.erase(it);
  }
}

Cyclo SpMat::get(long i, long j) const {
  auto it = col[j].find(i);
  return it == col[j].end() ? Cyclo() : it->second;
}

SpMat mat_mul(const SpMat &a, const SpMat &b) {
  if (a.nc != b.nr)
    throw std::invalid_argument("mat_mul: dimension mismatch");
  SpMat c(a.nr, b.nc);
  for (long j = 0; j < b.nc; ++j)
    for (auto &[k, bv] : b.col[j])
      for (auto &[i, av] : a.col[k])
        c.add(i, j, av * bv);
  return c;
}

SpMat mat_sub(const SpMat &a, const SpMat &b) {
  if (a.nr != b.nr || a.nc != b.nc)
    throw std::invalid_argument("mat_sub: dimension mismatch");
  SpMat c = a;
  for (long j = 0; j < b.nc; ++j)
    for (auto &[i, v] : b.col[j])
      c.add(i, j, -v);
  return c;
}

SpMat mat_scale(const Cyclo &s, const SpMat &a) {
  SpMat c(a.nr, a.nc);
  for (long j = 0; j < a.nc; ++j)
    for (auto &[i, v] : a.col[j])
      c.add(i, j, s * v);
  return c;
}

SpMat kron(const SpMat &a, const SpMat &b) {
  SpMat c(a.nr * b.nr, a.nc * b.nc);
  for (long ja = 0; ja < a.nc; ++ja)
    for (auto &[ia, va] : a.col[ja])
      for (long jb = 0; jb < b.nc; ++jb)
        for (auto &[ib, vb] : b.col[jb])
          c.add(ia * b.nr + ib, ja * b.nc + jb, va * vb);
  return c;
}

bool mat_is_zero(const SpMat &a) {
  for (auto &c : a.col)
    for (auto &[i, v] : c)
      if (!v.is_zero())
        return false;
  return true;
}

bool mat_equal(const SpMat &a, const SpMat &b) {
  return a.nr == b.nr && a.nc == b.nc && mat_is_zero(mat_sub(a, b));
}

static void fill_k(WeightModule &m) {
  m.K = SpMat(m.dim, m.dim);
  m.Kinv = SpMat(m.dim, m.dim);
  for (long i = 0; i < m.dim; ++i) {
    m.K.add(i, i, q_pow(m.par, m.ctx, m.wt[i]));
    m.Kinv.add(i, i, q_pow(m.par, m.ctx, -m.wt[i]));
  }
}

// (q^{mu + n} - (-1)^n q^{-mu - n}) / (q - q^{-1})
static Cyclo k_bracket(const RootParams &par, const CtxPtr &ctx, const Rat &mu,
                       long n) {
  Cyclo num = q_pow(par, ctx, mu + n);
  Cyclo other = q_pow(par, ctx, -(mu + n));
  if (((n % 2) + 2) % 2 == 1)
    num += other;
  else
    num -= other;
  Cyclo den = q_pow(par, ctx, Rat(1)) - q_pow(par, ctx, Rat(-1));
  return num * den.inverse();
}

WeightModule verma(const RootParams &par, const CtxPtr &ctx, const Rat &lambda,
                   int parity) {
  WeightModule m;
  m.par = par;
  m.ctx = ctx;
  m.dim = par.rbar;
  Rat top = lambda + (par.rbar - 1);
  for (long n = 0; n < m.dim; ++n) {
    m.wt.push_back(top - 2 * n);
    m.parity.push_back((parity + n) % 2);
  }
  m.E = SpMat(m.dim, m.dim);
  m.F = SpMat(m.dim, m.dim);
  for (long n = 0; n + 1 < m.dim; ++n)
    m.F.add(n + 1, n, Cyclo(ctx, Rat(1)));
  for (long n = 1; n < m.dim; ++n) {
    Cyclo c = eval_at_q(super_bracket(n), ctx, par) *
              k_bracket(par, ctx, top, -n + 1);
    m.E.add(n - 1, n, c);
  }
  fill_k(m);
  return m;
}

bool is_typical(const RootParams &par, const Rat &lambda) {
  for (long n = 1; n < par.rbar; ++n) {
    // lambda = (r/4)(2m + p_n + 1) - rbar + n for some integer m?
    Rat c = (lambda + par.rbar - n) * 4 / par.r;
    if (!is_integer(c))
      continue;
    Int residue = rat_num(c) - (n % 2) - 1;
    if (residue % 2 == 0)
      return false;
  }
  return true;
}

WeightModule dual_module(const WeightModule &m) {
  WeightModule d;
  d.par = m.par;
  d.ctx = m.ctx;
  d.dim = m.dim;
  for (long i = 0; i < m.dim; ++i) {
    d.wt.push_back(-m.wt[i]);
    d.parity.push_back(m.parity[i]);
  }
  // S(E) = -E K^{-1}, S(F) = -K F; both odd
  SpMat se = mat_scale(Cyclo(Rat(-1)), mat_mul(m.E, m.Kinv));
  SpMat sf = mat_scale(Cyclo(Rat(-1)), mat_mul(m.K, m.F));
  d.E = SpMat(d.dim, d.dim);
  d.F = SpMat(d.dim, d.dim);
  for (long j = 0; j < m.dim; ++j)
    for (auto &[i, v] : se.col[j]) {
      Cyclo t = v;
      if (m.parity[j])
        t = -t; // (-1)^{|f_j||E|}
      d.E.add(j, i, t);
    }
  for (long j = 0; j < m.dim; ++j)
    for (auto &[i, v] : sf.col[j]) {
      Cyclo t = v;
      if (m.parity[j])
        t = -t;
      d.F.add(j, i, t);
    }
  fill_k(d);
  return d;
}

WeightModule tensor_module(const WeightModule &a, const WeightModule &b) {
  WeightModule t;
  t.par = a.par;
  t.ctx = a.ctx;
  t.dim = a.dim * b.dim;
  for (long i = 0; i < a.dim; ++i)
    for (long j = 0; j < b.dim; ++j) {
      t.wt.push_back(a.wt[i] + b.wt[j]);
      t.parity.push_back((a.parity[i] + b.parity[j]) % 2);
    }
  // (x (x) y)(v (x) w) = (-1)^{|y||v|} xv (x) yw
  auto act = [&](const SpMat &x, const SpMat &y, int y_par) {
    SpMat out(t.dim, t.dim);
    for (long i = 0; i < a.dim; ++i)
      for (long j = 0; j < b.dim; ++j) {
        long cidx = i * b.dim + j;
        int sign = (y_par * a.parity[i]) % 2;
        for (auto &[ip, xv] : x.col[i])
          for (auto &[jp, yv] : y.col[j]) {
            Cyclo v = xv * yv;
            if (sign)
              v = -v;
            out.add(ip * b.dim + jp, cidx, v);
          }
      }
    return out;
  };
  SpMat ida = SpMat::eye(a.dim), idb = SpMat::eye(b.dim);
  // coproducts: E -> 1 (x) E + E (x) K, F -> K^{-1} (x) F + F (x) 1
  SpMat e1 = act(ida, b.E, 1), e2 = act(a.E, b.K, 0);
  t.E = SpMat(t.dim, t.dim);
  for (long j = 0; j < t.dim; ++j) {
    for (auto &[i, v] : e1.col[j])
      t.E.add(i, j, v);
    for (auto &[i, v] : e2.col[j])
      t.E.add(i, j, v);
  }
  SpMat f1 = act(a.Kinv, b.F, 1), f2 = act(a.F, idb, 0);
  t.F = SpMat(t.dim, t.dim);
  for (long j = 0; j < t.dim; ++j) {
    for (auto &[i, v] : f1.col[j])
      t.F.add(i, j, v);
    for (auto &[i, v] : f2.col[j])
      t.F.add(i, j, v);
  }
  fill_k(t);
  return t;
}

WeightModule simple_module(const RootParams &par, const CtxPtr &ctx,
                           const Rat &lambda, int parity) {
  if (is_typical(par, lambda))
    return verma(par, ctx, lambda, parity);
  long n_found = 0;
  for (long n = 1; n < par.rbar; ++n) {
    Rat c = (lambda + par.rbar - n) * 4 / par.r;
    if (!is_integer(c))
      continue;
    Int residue = rat_num(c) - (n % 2) - 1;
    if (residue % 2 == 0) {
      n_found = n;
      break;
    }
  }
  WeightModule v = verma(par, ctx, lambda, parity);
  WeightModule s;
  s.par = par;
  s.ctx = ctx;
  s.dim = n_found;
  s.wt.assign(v.wt.begin(), v.wt.begin() + n_found);
  s.parity.assign(v.parity.begin(), v.parity.begin() + n_found);
  s.E = SpMat(s.dim, s.dim);
  s.F = SpMat(s.dim, s.dim);
  for (long n = 0; n + 1 < s.dim; ++n)
    s.F.add(n + 1, n, Cyclo(ctx, Rat(1)));
  for (long n = 1; n < s.dim; ++n)
    s.E.add(n - 1, n, v.E.get(n - 1, n));
  fill_k(s);
  return s;
}

WeightModule one_dim_module(const RootParams &par, const CtxPtr &ctx,
                            const Rat &weight, int parity) {
  Rat ratio = weight * 2 / par.r;
  if (!is_integer(ratio))
    throw std::domain_error("one dimensional weight must lie in (r/2) Z");
  WeightModule m;
  m.par = par;
  m.ctx = ctx;
  m.dim = 1;
  m.wt.push_back(weight);
  m.parity.push_back(parity % 2);
  m.E = SpMat(1, 1);
  m.F = SpMat(1, 1);
  fill_k(m);
  return m;
}

WeightModule sigma_module(const RootParams &par, const CtxPtr &ctx, long k,
                          int parity) {
  return one_dim_module(par, ctx, Rat(par.eps * k * par.r), parity);
}

SpMat braiding_matrix(const WeightModule &v, const WeightModule &w) {
  const RootParams &par = v.par;
  const CtxPtr &ctx = v.ctx;
  Cyclo qm = q_pow(par, ctx, Rat(1)) - q_pow(par, ctx, Rat(-1));
  SpMat out(w.dim * v.dim, v.dim * w.dim);
  SpMat el = SpMat::eye(v.dim), fl = SpMat::eye(w.dim);
  std::map<Rat, Cyclo> ups_cache;
  auto ups = [&](const Rat &z) -> const Cyclo & {
    auto it = ups_cache.find(z);
    if (it == ups_cache.end())
      it = ups_cache.emplace(z, q_pow(par, ctx, z)).first;
    return it->second;
  };
  for (long l = 0; l < par.rbar; ++l) {
    if (l > 0) {
      el = mat_mul(v.E, el);
      fl = mat_mul(w.F, fl);
    }
    // (-1)^l q^{l(l-1)/2} (q - q^{-1})^l / <l>!
    Cyclo coeff = q_pow(par, ctx, Rat(l * (l - 1) / 2)) * qm.pow(l) *
                  eval_at_q(super_factorial(l), ctx, par).inverse();
    if (l % 2)
      coeff = -coeff;
    for (long i = 0; i < v.dim; ++i)
      for (long j = 0; j < w.dim; ++j) {
        int rsign = (l * v.parity[i]) % 2; // Koszul sign of (E^l (x) F^l)
        for (auto &[ip, ev] : el.col[i])
          for (auto &[jp, fv] : fl.col[j]) {
            int sign = (rsign + v.parity[ip] * w.parity[jp]) % 2; // swap sign
            Cyclo val = coeff * ev * fv * ups(v.wt[ip] * w.wt[jp] / 2);
            if (sign)
              val = -val;
            out.add(jp * v.dim + ip, i * w.dim + j, val);
          }
      }
  }
  return out;
}

SpMat twist_matrix(const WeightModule &v) {
  SpMat c = braiding_matrix(v, v);
  long d = v.dim;
  SpMat th(d, d);
  for (long a = 0; a < d; ++a)
    for (long i = 0; i < d; ++i) {
      // pivotal right trace with s = rbar
      Cyclo piv = q_pow(v.par, v.ctx, (1 - v.par.rbar) * v.wt[i]);
      if (v.parity[i])
        piv = -piv;
      for (auto &[row, val] : c.col[a * d + i]) {
        if (row % d != i)
          continue;
        th.add(row / d, a, piv * val);
      }
    }
  return th;
}

Cyclo twist_value(const RootParams &par, const CtxPtr &ctx,
                  const Rat &lambda) {
  Rat e = (lambda + par.rbar - 1) * (lambda - par.rbar + 1) / 2;
  return q_pow(par, ctx, e);
}

Cyclo qdim(const WeightModule &m, long s) {
  Cyclo sum(m.ctx, Rat(0));
  for (long i = 0; i < m.dim; ++i) {
    Cyclo term = q_pow(m.par, m.ctx, (1 - s) * m.wt[i]);
    if (m.parity[i])
      term = -term;
    sum += term;
  }
  return sum;
}

Cyclo mdim(const RootParams &par, const CtxPtr &ctx, const Rat &lambda) {
  // denominator q^{rbar l} - q^{-rbar l} vanishes iff 2 rbar l = 0 mod r
  if (rat_mod(2 * par.rbar * lambda, Rat(par.r)) == 0)
    throw std::domain_error("modified dimension pole");
  Cyclo num = q_pow(par, ctx, lambda) + q_pow(par, ctx, -lambda);
  Cyclo den =
      q_pow(par, ctx, par.rbar * lambda) - q_pow(par, ctx, -par.rbar * lambda);
  return num * den.inverse();
}

Cyclo mdim_signed(const RootParams &par, const CtxPtr &ctx, const Rat &lambda,
                  int parity) {
  Cyclo d = mdim(par, ctx, lambda);
  return (parity % 2) ? -d : d;
}

Cyclo S_scalar(const RootParams &par, const CtxPtr &ctx, const Rat &l1,
               const Rat &l2) {
  return q_pow(par, ctx, l1 * l2);
}

Cyclo T_scalar(const RootParams &par, const CtxPtr &ctx, const Rat &l) {
  return q_pow(par, ctx, (l * l - Rat((par.rbar - 1) * (par.rbar - 1))) / 2);
}

Cyclo open_hopf(const RootParams &par, const CtxPtr &ctx, const Rat &lambda_p,
                int parity_p, const Rat &lambda, int parity) {
  (void)parity; // cancels against the sign hidden in the modified dimension
  Cyclo pre = q_pow(par, ctx, lambda * lambda_p);
  if (parity_p % 2)
    pre = -pre;
  // lambda in (r/4)(2Z + rbar + 1)?
  Rat c = lambda * 4 / par.r - (par.rbar + 1);
  bool degenerate = is_integer(c) && rat_num(c) % 2 == 0;
  if (degenerate)
    return pre * Cyclo(ctx, Rat(par.rbar));
  Cyclo num =
      q_pow(par, ctx, par.rbar * lambda) - q_pow(par, ctx, -par.rbar * lambda);
  Cyclo den = q_pow(par, ctx, lambda);
  Cyclo other = q_pow(par, ctx, -lambda);
  if (par.rbar % 2)
    den -= other;
  else
    den += other;
  return pre * num * den.inverse();
}

Cyclo psi_value(const RootParams &par, const CtxPtr &ctx, const Rat &lambda,
                long k) {
  return q_pow(par, ctx, Rat(par.eps * k * par.r) * lambda);
}

bool ribbon_check(const RootParams &par) {
  CtxPtr ctx = make_context(par);
  return q_pow(par, ctx, Rat(2 * par.rbar)) == Cyclo(ctx, Rat(1));
}

CtxPtr ribbon_context(const RootParams &par, long extra) {
  return CycloContext::make(lcm_long(lcm_long(2 * par.r, 8), extra));
}

// stabilization coefficient from the defining sum over the index set,
// evaluated at a generic weight lambda (denominator 3 keeps every shift
// typical)
static Cyclo delta_brute(const RootParams &par, const CtxPtr &ctx, int b) {
  Rat lam(1, 3);
  Rat mu = lam - (par.rbar - 1); // weight opened by the Hopf links
  Cyclo sum(ctx, Rat(0));
  for (long k : par.i_set()) {
    Rat lk = lam + k;
    Cyclo term = mdim(par, ctx, lk);
    Cyclo tw = T_scalar(par, ctx, mu) * T_scalar(par, ctx, lk);
    term = term * ((b > 0) ? tw : tw.inverse());
    // positive stabilization links the dual Verma, of odd parity
    Cyclo hopf = (b > 0) ? open_hopf(par, ctx, -lk, 1, mu, 0)
                         : open_hopf(par, ctx, lk, 0, mu, 0);
    sum += term * hopf;
  }
  return sum;
}

static Cyclo delta_gauss(const RootParams &par, const CtxPtr &ctx, int b) {
  Cyclo g(ctx, Rat(0));
  if (par.family() == RootFamily::ZeroMod8) {
    for (long i = 0; i < par.r; ++i) {
      Cyclo t = q_pow(par, ctx, Rat(i) + Rat(b * i * i, 2));
      g += (i % 2) ? -t : t;
    }
  } else {
    for (long i = 0; i < par.rdot; ++i)
      g += q_pow(par, ctx, Rat(2 * i + 2 * b * i * i));
  }
  long e = (par.rbar - 1) * (par.rbar - 1);
  // the sign -b carries the odd parity of the dual highest weight vector in
  // the defining sum; it is what makes delta_+ delta_- = zeta
  Cyclo d = q_pow(par, ctx, Rat(-b * e)) * g;
  return (b > 0) ? -d : d;
}

static Cyclo delta_closed(const RootParams &par, const CtxPtr &ctx, int b) {
  // sqrt(rdot or r) q^{-3/2} times a fourth or eighth root of unity.  The
  // unit is pinned by the defining sum (equivalently by the Gauss-sum
  // expression): +1, -i, -i, -1, -1, +i for r = 1, 2, 3, 5, 6, 7 mod 8 and
  // e^{pi i/4} for r = 0 mod 8.
  Cyclo d;
  if (par.family() == RootFamily::ZeroMod8) {
    d = exact_sqrt(ctx, par.r) * Cyclo::root_of_unity(ctx, 1, 8) *
        q_pow(par, ctx, Rat(-3, 2));
  } else {
    Cyclo unit;
    switch (par.r % 8) {
    case 1:
      unit = Cyclo(ctx, Rat(1));
      break;
    case 5:
    case 6:
      unit = Cyclo(ctx, Rat(-1));
      break;
    case 2:
    case 3:
      unit = Cyclo::root_of_unity(ctx, -1, 4); // -i
      break;
    case 7:
      unit = Cyclo::root_of_unity(ctx, 1, 4);
      break;
    default:
      throw std::domain_error("no closed form for r = 4 mod 8");
    }
    d = exact_sqrt(ctx, par.rdot) * q_pow(par, ctx, Rat(-3, 2)) * unit;
  }
  if (b < 0)
    d = -d.conj();
  return d;
}

ModularData modular_data(const RootParams &par, const CtxPtr &ctx) {
  if (par.family() == RootFamily::FourMod8)
    throw std::domain_error("category not ribbon");
  if (ctx->M % lcm_long(2 * par.r, 8) != 0)
    throw std::domain_error("conductor too small for modular data");
  ModularData md;
  md.kirby_index_set = par.i_set();
  md.zeta = (par.family() == RootFamily::ZeroMod8) ? -par.r : -par.rdot;

  md.delta_plus = delta_closed(par, ctx, +1);
  md.delta_minus = delta_closed(par, ctx, -1);
  if (md.delta_plus != delta_gauss(par, ctx, +1) ||
      md.delta_minus != delta_gauss(par, ctx, -1))
    throw std::logic_error("stabilization coefficients: Gauss sum mismatch");

  // cross-check the defining sum in a context that also contains the
  // generic-weight products
  CtxPtr check = ribbon_context(par, 9 * par.r);
  if (delta_brute(par, check, +1) != delta_closed(par, check, +1) ||
      delta_brute(par, check, -1) != delta_closed(par, check, -1))
    throw std::logic_error("stabilization coefficients: defining sum mismatch");

  if (md.delta_plus * md.delta_minus != Cyclo(ctx, Rat(md.zeta)))
    throw std::logic_error("relative modularity parameter mismatch");
  return md;
}

} // namespace qtop
