#include "qtop/cgp.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>

namespace qtop {

namespace {

Rat rat_of(long num, long den) {
  Rat x(num, den);
  x.canonicalize();
  return x;
}

// q^z = e^{2 pi i z / r} in doubles
std::complex<double> qpow_f(const RootParams &par, const Rat &z) {
  return std::polar(1.0, 2.0 * M_PI * z.get_d() / par.r);
}

std::complex<double> d_value(const RootParams &par, const Rat &lam) {
  std::complex<double> num = qpow_f(par, lam) + qpow_f(par, -lam);
  Rat rl = Rat(par.rbar) * lam;
  std::complex<double> den = qpow_f(par, rl) - qpow_f(par, -rl);
  return num / den;
}

std::complex<double> t_value(const RootParams &par, const Rat &lam) {
  Rat e = (lam * lam - rat_of((par.rbar - 1) * (par.rbar - 1), 1)) / 2;
  return qpow_f(par, e);
}

std::complex<double> s_value(const RootParams &par, const Rat &a,
                             const Rat &b) {
  return qpow_f(par, a * b);
}

std::complex<double> ipow(long e) {
  switch (((e % 4) + 4) % 4) {
  case 0:
    return {1, 0};
  case 1:
    return {0, 1};
  case 2:
    return {-1, 0};
  default:
    return {0, -1};
  }
}

void require_ribbon(const RootParams &par) {
  if (par.family() == RootFamily::FourMod8)
    throw std::domain_error("not ribbon");
}

void check_omega(const RootParams &par, const Plumbing &p,
                 const OmegaClass &w) {
  if (static_cast<long>(w.alpha.size()) != p.n)
    throw std::invalid_argument("omega size mismatch");
  long want = par.family() == RootFamily::ZeroMod8 ? 1 : 2;
  if (w.modulus != want)
    throw std::invalid_argument("omega modulus does not match the grading");
  if (!omega_cocycle(p, w))
    throw std::invalid_argument("omega is not a cocycle");
  if (!omega_admissible(par, p, w))
    throw std::domain_error("colour in X");
}

// common denominator of the alpha values
long alpha_denominator(const OmegaClass &w) {
  long d = 1;
  for (const Rat &a : w.alpha)
    d = lcm_long(d, to_long(rat_den(a)));
  return d;
}

// product over the graph of d^{2-deg} T^{f} and edge S factors at the
// colours alpha + k, evaluated through the supplied scalar hooks
template <typename Scal, typename DFn, typename TFn, typename SFn,
          typename PowFn>
Scal lattice_term(const Plumbing &p, const std::vector<Rat> &alpha,
                  const std::vector<long> &k, const Scal &one, const DFn &d,
                  const TFn &t, const SFn &s, const PowFn &powfn) {
  Scal out = one;
  std::vector<Rat> lam(p.n);
  for (long v = 0; v < p.n; ++v)
    lam[v] = alpha[v] + Rat(Int(k[v]));
  for (long v = 0; v < p.n; ++v) {
    out = out * powfn(d(lam[v]), 2 - p.deg[v]);
    out = out * powfn(t(lam[v]), p.framing[v]);
  }
  for (const auto &[v1, v2] : p.edges)
    out = out * s(lam[v1], lam[v2]);
  return out;
}

} // namespace

OmegaClass omega_from_json(const std::string &text) {
  nlohmann::json j = nlohmann::json::parse(text);
  OmegaClass w;
  w.modulus = j.at("modulus").get<long>();
  if (w.modulus != 1 && w.modulus != 2)
    throw std::invalid_argument("omega modulus must be 1 or 2");
  for (const auto &a : j.at("alpha"))
    w.alpha.push_back(parse_rat(a.get<std::string>()));
  return w;
}

OmegaClass omega_from_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return omega_from_json(text);
}

std::string omega_to_json(const OmegaClass &w) {
  std::string out = "{\"modulus\":" + std::to_string(w.modulus) +
                    ",\"alpha\":[";
  for (size_t i = 0; i < w.alpha.size(); ++i) {
    if (i)
      out += ",";
    out += "\"" + rat_str(w.alpha[i]) + "\"";
  }
  return out + "]}";
}

bool omega_cocycle(const Plumbing &p, const OmegaClass &w) {
  for (long i = 0; i < p.n; ++i) {
    Rat row(0);
    for (long j = 0; j < p.n; ++j)
      row += Rat(p.B[i][j]) * w.alpha[j];
    row /= Rat(Int(w.modulus));
    if (!is_integer(row))
      return false;
  }
  return true;
}

bool omega_admissible(const RootParams &par, const Plumbing &p,
                      const OmegaClass &w) {
  (void)p;
  for (const Rat &a : w.alpha) {
    // pole of d at 2 rbar lambda = 0 mod r, stable under integer shifts
    Rat x = Rat(2 * par.rbar) * a / Rat(par.r);
    if (is_integer(x))
      return false;
  }
  return true;
}

std::complex<double> delta_plus_value(const RootParams &par) {
  require_ribbon(par);
  std::complex<double> q32 = qpow_f(par, rat_of(-3, 2));
  if (par.family() == RootFamily::ZeroMod8)
    return std::sqrt(static_cast<double>(par.r)) *
           std::polar(1.0, M_PI / 4) * q32;
  double root = std::sqrt(static_cast<double>(par.rdot));
  std::complex<double> unit;
  switch (par.r % 8) {
  case 1:
    unit = {1, 0};
    break;
  case 2:
  case 3:
    unit = {0, -1};
    break;
  case 5:
  case 6:
    unit = {-1, 0};
    break;
  default: // 7
    unit = {0, 1};
    break;
  }
  return root * unit * q32;
}

std::complex<double> delta_minus_value(const RootParams &par) {
  return -std::conj(delta_plus_value(par));
}

std::complex<double> cgp_invariant(const RootParams &par, const Plumbing &p,
                                   const OmegaClass &w) {
  require_ribbon(par);
  check_omega(par, p, w);
  std::vector<long> iset = par.i_set();
  long m = iset.size(), n = p.n;

  // per-vertex factor tables d^{2-deg} T^{f} over the index set
  std::vector<std::vector<std::complex<double>>> vtab(
      n, std::vector<std::complex<double>>(m));
  for (long v = 0; v < n; ++v)
    for (long a = 0; a < m; ++a) {
      Rat lam = w.alpha[v] + Rat(Int(iset[a]));
      vtab[v][a] = std::pow(d_value(par, lam), 2 - p.deg[v]) *
                   std::pow(t_value(par, lam),
                            static_cast<double>(p.framing[v]));
    }
  // per-edge S tables
  std::vector<std::vector<std::complex<double>>> etab(
      p.edges.size(), std::vector<std::complex<double>>(m * m));
  for (size_t e = 0; e < p.edges.size(); ++e) {
    auto [v1, v2] = p.edges[e];
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b)
        etab[e][a * m + b] = s_value(par, w.alpha[v1] + Rat(Int(iset[a])),
                                     w.alpha[v2] + Rat(Int(iset[b])));
  }

  long total = 1;
  for (long v = 0; v < n; ++v)
    total *= m;
  double re = 0, im = 0;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
  for (long idx = 0; idx < total; ++idx) {
    std::vector<long> a(n);
    long rest = idx;
    for (long v = 0; v < n; ++v) {
      a[v] = rest % m;
      rest /= m;
    }
    std::complex<double> term(1, 0);
    for (long v = 0; v < n; ++v)
      term *= vtab[v][a[v]];
    for (size_t e = 0; e < p.edges.size(); ++e) {
      auto [v1, v2] = p.edges[e];
      term *= etab[e][a[v1] * m + a[v2]];
    }
    re += term.real();
    im += term.imag();
  }

  Inertia in = inertia(p.B);
  std::complex<double> norm =
      std::pow(delta_plus_value(par), -static_cast<double>(in.pos)) *
      std::pow(delta_minus_value(par), -static_cast<double>(in.neg));
  return norm * std::complex<double>(re, im);
}

std::complex<double> cgp_invariant_serial(const RootParams &par,
                                          const Plumbing &p,
                                          const OmegaClass &w) {
  require_ribbon(par);
  check_omega(par, p, w);
  std::vector<long> iset = par.i_set();
  std::complex<double> sum(0, 0);
  std::vector<long> k(p.n);
  // literal evaluation of the defining sum, innermost index first
  std::function<void(long)> rec = [&](long v) {
    if (v < 0) {
      sum += lattice_term(
          p, w.alpha, k, std::complex<double>(1, 0),
          [&](const Rat &l) { return d_value(par, l); },
          [&](const Rat &l) { return t_value(par, l); },
          [&](const Rat &a, const Rat &b) { return s_value(par, a, b); },
          [](const std::complex<double> &c, long e) {
            return std::pow(c, static_cast<double>(e));
          });
      return;
    }
    for (long kv : iset) {
      k[v] = kv;
      rec(v - 1);
    }
  };
  rec(p.n - 1);
  Inertia in = inertia(p.B);
  for (long i = 0; i < in.pos; ++i)
    sum /= delta_plus_value(par);
  for (long i = 0; i < in.neg; ++i)
    sum /= delta_minus_value(par);
  return sum;
}

CtxPtr cgp_context(const RootParams &par, const OmegaClass &w) {
  long d = alpha_denominator(w);
  return ribbon_context(par, 2 * d * d);
}

Cyclo cgp_invariant_exact(const RootParams &par, const CtxPtr &ctx,
                          const Plumbing &p, const OmegaClass &w) {
  require_ribbon(par);
  check_omega(par, p, w);
  ModularData md = modular_data(par, ctx);
  Cyclo sum(ctx, Rat(0));
  std::vector<long> k(p.n);
  Rat half(1, 2);
  Rat shift = rat_of(-(par.rbar - 1) * (par.rbar - 1), 2);
  auto d_exact = [&](const Rat &l) {
    Cyclo num = q_pow(par, ctx, l) + q_pow(par, ctx, -l);
    Cyclo den =
        q_pow(par, ctx, Rat(par.rbar) * l) - q_pow(par, ctx, -Rat(par.rbar) * l);
    return num * den.inverse();
  };
  auto t_exact = [&](const Rat &l) {
    return q_pow(par, ctx, l * l * half + shift);
  };
  auto s_exact = [&](const Rat &a, const Rat &b) {
    return q_pow(par, ctx, a * b);
  };
  std::function<void(long)> rec = [&](long v) {
    if (v == p.n) {
      sum += lattice_term(p, w.alpha, k, Cyclo(ctx, Rat(1)), d_exact, t_exact,
                          s_exact,
                          [](const Cyclo &c, long e) { return c.pow(e); });
      return;
    }
    for (long kv : md.kirby_index_set) {
      k[v] = kv;
      rec(v + 1);
    }
  };
  rec(0);
  Inertia in = inertia(p.B);
  return sum * md.delta_plus.pow(-in.pos) * md.delta_minus.pow(-in.neg);
}

std::complex<double>
verlinde_value(const RootParams &par, long g,
               const std::vector<std::pair<Rat, int>> &points,
               const Rat &lambda_bar) {
  require_ribbon(par);
  if (g < 1)
    throw std::invalid_argument("genus must be at least 1");
  long s = points.size();
  Rat mu(0);
  long parity = 0;
  for (const auto &[mi, pi] : points) {
    mu += mi - Rat(par.rbar - 1);
    parity += pi;
  }
  double zeta = -static_cast<double>(
      par.family() == RootFamily::ZeroMod8 ? par.r : par.rdot);
  std::complex<double> sum(0, 0);
  for (long k : par.i_set()) {
    Rat lam = lambda_bar + Rat(Int(k));
    Rat rl = Rat(par.rbar) * lam;
    std::complex<double> num = qpow_f(par, rl) - qpow_f(par, -rl);
    std::complex<double> den = qpow_f(par, lam) + qpow_f(par, -lam);
    long e = 2 * g - 2 - s;
    std::complex<double> pw(1, 0);
    if (e != 0) {
      if (std::abs(den) < 1e-12)
        throw std::domain_error("specialization hits pole");
      pw = std::pow(num / den, static_cast<double>(e));
    }
    sum += qpow_f(par, mu * lam) * pw;
  }
  double sgn = parity % 2 ? -1.0 : 1.0;
  return sgn * std::pow(zeta, static_cast<double>(g - 1)) * sum;
}

Rat euler_char(const RootParams &par, long g) {
  require_ribbon(par);
  if (g < 1)
    throw std::invalid_argument("genus must be at least 1");
  bool zero8 = par.family() == RootFamily::ZeroMod8;
  if (g == 1)
    return Rat(Int(zero8 ? par.r : par.rdot));
  if (!zero8)
    return Rat(0);
  return rat_of(1, 1 << (2 * g - 3)) * Rat(int_pow(Int(par.r), 3 * g - 3));
}

Rat total_dim(const RootParams &par, long g) {
  require_ribbon(par);
  if (g < 1)
    throw std::invalid_argument("genus must be at least 1");
  bool zero8 = par.family() == RootFamily::ZeroMod8;
  if (g == 1)
    return Rat(Int(zero8 ? par.r : par.rdot));
  Rat base(int_pow(Int(par.r), 3 * g - 3));
  switch (par.family()) {
  case RootFamily::Odd:
    return base * Rat(Int(1) << (2 * g - 2));
  case RootFamily::TwoMod4:
    return base / Rat(Int(1) << (g - 1));
  default: // ZeroMod8: even parity forces dim = euler characteristic
    return euler_char(par, g);
  }
}

VerlindeLimitReport verlinde_limit_check(const RootParams &par, long g,
                                         double tolerance) {
  require_ribbon(par);
  VerlindeLimitReport rep;
  rep.tolerance = tolerance;
  rep.euler_closed = euler_char(par, g);
  rep.dim_closed = total_dim(par, g);

  auto limit_at = [&](const Rat &target) {
    // geometric approach sequence with Neville extrapolation to h = 0
    std::vector<double> h;
    std::vector<std::complex<double>> val;
    Rat step(1, 1000);
    for (int j = 0; j < 4; ++j) {
      h.push_back(step.get_d());
      val.push_back(verlinde_value(par, g, {}, target + step));
      step /= 10;
    }
    std::vector<std::complex<double>> t = val;
    for (size_t j = 1; j < t.size(); ++j)
      for (size_t i = 0; i + j < t.size(); ++i)
        t[i] = (h[i + j] * t[i] - h[i] * t[i + 1]) / (h[i + j] - h[i]);
    return t[0];
  };

  std::complex<double> euler = limit_at(Rat(0));
  Rat dim_target = par.family() == RootFamily::ZeroMod8
                       ? Rat(0)
                       : rat_of(1, 2 * par.eps);
  std::complex<double> dim = limit_at(dim_target);
  rep.euler_numeric = euler.real();
  rep.dim_numeric = dim.real();
  // tolerance is relative: the closed forms grow like r^{3g-3}
  double escale = std::max(1.0, std::abs(rep.euler_closed.get_d()));
  double dscale = std::max(1.0, std::abs(rep.dim_closed.get_d()));
  rep.pass =
      std::abs(euler - std::complex<double>(rep.euler_closed.get_d(), 0)) <
          tolerance * escale &&
      std::abs(dim - std::complex<double>(rep.dim_closed.get_d(), 0)) <
          tolerance * dscale &&
      std::abs(euler.imag()) < tolerance * escale &&
      std::abs(dim.imag()) < tolerance * dscale;
  return rep;
}

} // namespace qtop
