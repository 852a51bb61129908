#include "qtop/compare.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

namespace qtop {

namespace {

using Cplx = std::complex<double>;

Rat rat_of(long num, long den) {
  Rat x(num, den);
  x.canonicalize();
  return x;
}

Cplx exp2pi(const Rat &x) { return std::polar(1.0, 2.0 * M_PI * x.get_d()); }

Cplx ipow(Cplx z, long e) {
  if (e < 0)
    return 1.0 / ipow(z, -e);
  Cplx out(1.0, 0.0);
  while (e) {
    if (e & 1)
      out *= z;
    z *= z;
    e >>= 1;
  }
  return out;
}

long trace_of(const IMat &B) {
  Int t(0);
  for (size_t i = 0; i < B.size(); ++i)
    t += B[i][i];
  return to_long(t);
}

// (x + 1/x)^{2 - deg} at x = e^{2 pi i e}, guarding the zero x = -1/x
Cplx fplus_value(const Rat &e, int deg) {
  Cplx x = exp2pi(e);
  Cplx base = x + 1.0 / x;
  if (std::abs(base) < 1e-9 && deg > 2)
    throw std::domain_error("non-generic omega");
  return ipow(base, 2 - deg);
}

// q^{(alpha+k)^t B (alpha+k)/2} exponent as a rational multiple of 2 pi
Rat quad_exponent(const Plumbing &p, const std::vector<Rat> &lam, long r) {
  Rat quad(0);
  for (long i = 0; i < p.n; ++i) {
    Rat row(0);
    for (long j = 0; j < p.n; ++j)
      row += Rat(p.B[i][j]) * lam[j];
    quad += row * lam[i];
  }
  return quad / (2 * Rat(r));
}

Rat omega_eval(const OmegaClass &w, const IVec &a) {
  Rat out(0);
  for (size_t i = 0; i < a.size(); ++i)
    out += w.alpha[i] * Rat(a[i]);
  return out;
}

IVec ivec_add(const IVec &a, const IVec &b, long bsign) {
  IVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] + bsign * b[i];
  return out;
}

void check_compare_inputs(const RootParams &par, const Plumbing &p,
                          const OmegaClass &w) {
  long m = par.family() == RootFamily::ZeroMod8 ? 1 : 2;
  if (w.modulus != m)
    throw std::invalid_argument("omega modulus does not match the root");
  if (static_cast<long>(w.alpha.size()) != p.n)
    throw std::invalid_argument("omega size mismatch");
}

// congruence family data: r = delta mod 8 (odd) or r = 2 delta mod 8 (even);
// +-3 mod 8 and 0 mod 8 have no comparison coefficients
struct Family {
  int delta;
  bool even_case;
};

Family comparison_family(const RootParams &par) {
  switch (par.family()) {
  case RootFamily::Odd:
    switch (par.r % 8) {
    case 1:
      return {1, false};
    case 7:
      return {-1, false};
    default:
      throw std::domain_error(
          "family not covered: no universal topological relation for "
          "r = +-3 mod 8");
    }
  case RootFamily::TwoMod4:
    return {par.r % 8 == 2 ? 1 : -1, true};
  case RootFamily::ZeroMod8:
    throw std::domain_error(
        "family not covered: non-topological terms for r = 0 mod 8; "
        "see the diagnostic");
  default:
    throw std::domain_error("not ribbon");
  }
}

} // namespace

std::complex<double> torsion_factor(const RootParams &par, const Plumbing &p,
                                    const OmegaClass &w) {
  check_compare_inputs(par, p, w);
  Rat scale = rat_of(par.rbar, par.r); // 2, 1 or 1/2
  Cplx out(1.0, 0.0);
  for (long v = 0; v < p.n; ++v) {
    Cplx x = exp2pi(scale * w.alpha[v]);
    Cplx z = x - 1.0 / x;
    if (std::abs(z) < 1e-9)
      throw std::domain_error("non-generic omega");
    out *= ipow(z, p.deg[v] - 2);
  }
  return out;
}

FactorizationReport factorization_check(const RootParams &par,
                                        const Plumbing &p, const OmegaClass &w,
                                        double tolerance) {
  if (par.family() == RootFamily::ZeroMod8)
    throw std::domain_error(
        "factorization_check covers r != 0 mod 8; use the diagnostic");
  check_compare_inputs(par, p, w);
  FactorizationReport rep;
  rep.tolerance = tolerance;
  rep.invariant = cgp_invariant(par, p, w);

  long trB = trace_of(p.B);
  Inertia in = inertia(p.B);

  Cplx dp = delta_plus_value(par), dm = delta_minus_value(par);
  rep.a_factor = exp2pi(rat_of(-(par.rbar - 1) * (par.rbar - 1) * trB, 2) /
                        Rat(par.r)) /
                 (ipow(dp, in.pos) * ipow(dm, in.neg));
  rep.b_factor = torsion_factor(par, p, w);

  std::vector<long> iset = par.i_set();
  std::vector<Rat> lam(p.n);
  Cplx csum(0.0, 0.0);
  std::function<void(long, Cplx)> rec = [&](long v, Cplx acc) {
    if (v == p.n) {
      csum += acc * exp2pi(quad_exponent(p, lam, par.r));
      return;
    }
    for (long k : iset) {
      lam[v] = w.alpha[v] + k;
      rec(v + 1, acc * fplus_value(lam[v] / Rat(par.r), p.deg[v]));
    }
  };
  rec(0, Cplx(1.0, 0.0));
  rep.c_factor = csum;

  rep.product = rep.a_factor * rep.b_factor * rep.c_factor;
  rep.pass = std::abs(rep.invariant - rep.product) <
             tolerance * std::max(1.0, std::abs(rep.invariant));

  // audit of the simplified closed forms of the a-factor
  long sigma = in.sigma();
  long nv = p.n;
  bool odd = par.family() == RootFamily::Odd;
  int delta = odd ? (par.r % 8 == 1 || par.r % 8 == 3 ? 1 : -1)
                  : (par.r % 8 == 2 ? 1 : -1);
  rep.a_simplified_defined = !odd || par.r % 8 == 1 || par.r % 8 == 7;
  if (rep.a_simplified_defined) {
    Rat phase = odd ? (delta == 1 ? rat_of(sigma, 2) : rat_of(sigma, 4))
                    : (delta == 1 ? rat_of(-sigma, 4) : Rat(0));
    Cplx unit =
        exp2pi(phase) * exp2pi(rat_of(3 * sigma - trB, 2) / Rat(par.r));
    double base = odd ? double(par.r) : par.r / 2.0;
    rep.a_printed_half_powers = odd ? -2 * nv : -nv;
    rep.a_reconciled_half_powers = 0;
    rep.a_printed_match = false;
    for (long j = -3 * nv; j <= 3 * nv; ++j) {
      Cplx cand = std::pow(base, j / 2.0) * unit;
      if (std::abs(rep.a_factor - cand) < 1e-6 * std::abs(cand)) {
        rep.a_reconciled_half_powers = j;
        rep.a_printed_match = (j == rep.a_printed_half_powers);
        break;
      }
    }
  }
  return rep;
}

GaussReciprocityReport gauss_reciprocity_check(const IMat &B, const IVec &pvec,
                                               long r, double tolerance) {
  if (r <= 0 || r % 2)
    throw std::invalid_argument("reciprocity requires even positive r");
  long n = B.size();
  GaussReciprocityReport rep;
  rep.tolerance = tolerance;

  IVec nvec(n, Int(0));
  Cplx lhs(0.0, 0.0);
  std::function<void(long)> rec = [&](long v) {
    if (v == n) {
      Int e(0);
      for (long i = 0; i < n; ++i) {
        Int row(0);
        for (long j = 0; j < n; ++j)
          row += B[i][j] * nvec[j];
        e += (row + pvec[i]) * nvec[i];
      }
      lhs += exp2pi(Rat(e) / Rat(r));
      return;
    }
    for (long k = 0; k < r; ++k) {
      nvec[v] = k;
      rec(v + 1);
    }
  };
  rec(0);
  rep.lhs = lhs;

  IMat B2(n, IVec(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      B2[i][j] = 2 * B[i][j];
  QMat binv = inverse_rational(B);
  Cplx rhs(0.0, 0.0);
  for (const IVec &a : h1_reps(B2)) {
    std::vector<Rat> wv(n);
    for (long i = 0; i < n; ++i) {
      wv[i] = Rat(a[i]) + Rat(pvec[i]) / Rat(r);
      wv[i].canonicalize();
    }
    Rat x(0);
    for (long i = 0; i < n; ++i) {
      Rat row(0);
      for (long j = 0; j < n; ++j)
        row += binv[i][j] * wv[j];
      x += row * wv[i];
    }
    rhs += exp2pi(-Rat(r) * x / 4);
  }
  long sigma = inertia(B).sigma();
  double det = std::abs(det_int(B).get_d());
  rhs *= exp2pi(rat_of(sigma, 8)) * std::pow(r / 2.0, n / 2.0) /
         std::sqrt(det);
  rep.rhs = rhs;
  rep.pass = std::abs(rep.lhs - rep.rhs) <
             tolerance * std::max(1.0, std::abs(rep.lhs));
  return rep;
}

SltwoOspReport sltwo_osp_relation_check(const Plumbing &p, const IVec &b,
                                        const std::vector<int> &s,
                                        const Rat &order) {
  SltwoOspReport rep;
  IVec spinc = spinc_vector(p.B, b, s);
  rep.delta = zhat_delta(p, spinc);
  Int total(0);
  for (const Int &x : spinc)
    total += x;
  long mod4 = to_long(((total % 4) + 4) % 4);
  if (mod4 % 2)
    throw std::logic_error("spin^c vector with odd coordinate sum");
  rep.c_sign = mod4 == 0 ? -1 : 1; // -(sqrt-1)^{spinc^t 1}

  QSeries osp = zhat_series(Algebra::Osp, p, b, s, order);
  QSeries sl2 = zhat_series(Algebra::Sl2, p, b, s, order);

  rep.pass = true;
  // all exponents must sit on the integer grid above the sector exponent
  for (const auto *ser : {&osp, &sl2})
    for (const auto &[inc, c] : ser->terms)
      if (!is_integer(ser->offset + inc - rep.delta))
        rep.pass = false;
  long n_max = to_long(rat_floor(order));
  for (long n = 0; n < n_max; ++n) {
    Rat e = rep.delta + n;
    Rat lhs = osp.coeff(e);
    Rat rhs = Rat(rep.c_sign) * (n % 2 ? -sl2.coeff(e) : sl2.coeff(e));
    if (lhs != rhs)
      rep.pass = false;
    ++rep.terms_checked;
  }
  return rep;
}

std::complex<double> comparison_coefficient(const RootParams &par,
                                            const Plumbing &p,
                                            const OmegaClass &w, const IVec &b,
                                            const std::vector<int> &s) {
  check_compare_inputs(par, p, w);
  Family fam = comparison_family(par);
  Inertia in = inertia(p.B);
  Cplx torsion = (in.pos % 2 ? -1.0 : 1.0) * torsion_factor(par, p, w);
  QMat binv = inverse_rational(p.B);
  double h1 = std::abs(det_int(p.B).get_d());
  long mu = rokhlin_mu(p.B, s); // sigma - s^t B s mod 4
  Cplx mu_phase = fam.even_case ? exp2pi(rat_of(-fam.delta * mu, 4))
                                : exp2pi(rat_of(mu, 2));
  long quad_mult = fam.even_case ? (par.r - 2 * fam.delta) / 8
                                 : (par.r - fam.delta) / 8;
  std::vector<IVec> reps = h1_reps(p.B);
  Cplx sum(0.0, 0.0);
  for (const IVec &a : reps)
    for (const IVec &f : reps) {
      Rat x = -Rat(quad_mult) * linking(binv, a, a) - omega_eval(w, a) / 2;
      if (fam.even_case)
        x += -linking(binv, a, ivec_add(b, f, fam.delta)) +
             Rat(fam.delta) * linking(binv, f, f);
      else
        x += -linking(binv, a, ivec_add(b, f, 1)) +
             Rat(2 * fam.delta) * linking(binv, f, f);
      sum += exp2pi(x);
    }
  return mu_phase * torsion / h1 * sum;
}

ComparisonCoefficients comparison_coefficients(const RootParams &par,
                                               const Plumbing &p,
                                               const OmegaClass &w) {
  check_compare_inputs(par, p, w);
  Family fam = comparison_family(par);
  ComparisonCoefficients cc;
  cc.delta = fam.delta;
  cc.even_case = fam.even_case;
  cc.torsion_multiplier = fam.even_case ? 2 : 4;
  Inertia in = inertia(p.B);
  cc.torsion = (in.pos % 2 ? -1.0 : 1.0) * torsion_factor(par, p, w);
  cc.s = spin_structures(p.B).front();
  cc.b_reps = h1_reps(p.B);
  for (const IVec &b : cc.b_reps)
    cc.coeff.push_back(comparison_coefficient(par, p, w, b, cc.s));
  return cc;
}

CgpZhatReport cgp_vs_zhat_check(const RootParams &par, const Plumbing &p,
                                const OmegaClass &w,
                                const std::string &strategy,
                                double tolerance) {
  ComparisonCoefficients cc = comparison_coefficients(par, p, w);
  CgpZhatReport rep;
  rep.tolerance = tolerance;
  rep.lhs = cgp_invariant(par, p, w);
  rep.rhs = Cplx(0.0, 0.0);
  for (size_t i = 0; i < cc.b_reps.size(); ++i) {
    SpincContribution sc;
    sc.b = cc.b_reps[i];
    sc.s = cc.s;
    sc.coeff = cc.coeff[i];
    sc.zhat_eval =
        zhat_root_eval(p, sc.b, sc.s, Algebra::Osp, par.r, strategy);
    rep.rhs += sc.coeff * sc.zhat_eval;
    rep.per_spinc.push_back(sc);
  }
  rep.pass =
      std::abs(rep.lhs - rep.rhs) < tolerance * std::max(1.0, std::abs(rep.lhs));
  return rep;
}

namespace {

std::string cplx_json(const Cplx &z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "[%.12g,%.12g]", z.real(), z.imag());
  return buf;
}

} // namespace

std::string cgp_zhat_report_json(const CgpZhatReport &rep) {
  std::string out = "{\"lhs\":" + cplx_json(rep.lhs) +
                    ",\"rhs\":" + cplx_json(rep.rhs) + ",\"per_spinc\":[";
  bool first = true;
  for (const auto &sc : rep.per_spinc) {
    if (!first)
      out += ",";
    first = false;
    out += "{\"b\":[";
    for (size_t i = 0; i < sc.b.size(); ++i)
      out += (i ? "," : "") + sc.b[i].get_str();
    out += "],\"s\":[";
    for (size_t i = 0; i < sc.s.size(); ++i)
      out += (i ? "," : "") + std::to_string(sc.s[i]);
    out += "],\"coeff\":" + cplx_json(sc.coeff) +
           ",\"zhat_eval\":" + cplx_json(sc.zhat_eval) + "}";
  }
  char tol[40];
  std::snprintf(tol, sizeof(tol), "%.12g", rep.tolerance);
  out += std::string("],\"pass\":") + (rep.pass ? "true" : "false") +
         ",\"tolerance\":" + tol + "}";
  return out;
}

ZeroMod8Report zero_mod8_diagnostic(const RootParams &par, const Plumbing &p,
                                    const OmegaClass &w) {
  if (par.family() != RootFamily::ZeroMod8)
    throw std::invalid_argument("diagnostic applies to r = 0 mod 8 only");
  check_compare_inputs(par, p, w);
  ZeroMod8Report rep;
  rep.invariant = cgp_invariant(par, p, w);

  long trB = trace_of(p.B);
  Inertia in = inertia(p.B);
  Cplx dp = delta_plus_value(par), dm = delta_minus_value(par);
  rep.a_factor = exp2pi(rat_of(-(par.rbar - 1) * (par.rbar - 1) * trB, 2) /
                        Rat(par.r)) /
                 (ipow(dp, in.pos) * ipow(dm, in.neg));
  rep.b_factor = torsion_factor(par, p, w);

  // sign-corrected lattice sum: alternating factor (-1)^{sum n_v deg v}
  // compensates the half-integer scaling of the vertex arguments
  std::vector<Rat> atil(p.n);
  for (long v = 0; v < p.n; ++v)
    atil[v] = w.alpha[v] - (par.rbar - 1);
  std::vector<Rat> lam(p.n);
  IVec nvec(p.n, Int(0));
  Cplx csum(0.0, 0.0);
  std::function<void(long, Cplx, long)> rec = [&](long v, Cplx acc,
                                                  long degsum) {
    if (v == p.n) {
      Cplx term = acc * exp2pi(quad_exponent(p, lam, par.r));
      csum += (degsum % 2 ? -term : term);
      return;
    }
    for (long k = 0; k < par.r; ++k) {
      lam[v] = atil[v] + k;
      rec(v + 1, acc * fplus_value(lam[v] / Rat(par.r), p.deg[v]),
          degsum + k * p.deg[v]);
    }
  };
  rec(0, Cplx(1.0, 0.0), 0);
  rep.c_factor = csum;
  rep.product = rep.a_factor * rep.b_factor * rep.c_factor;
  rep.factorization_ok = std::abs(rep.invariant - rep.product) <
                         1e-9 * std::max(1.0, std::abs(rep.invariant));

  // the candidate comparison coefficient carries the phase
  // e^{-pi i alpha^t B (s+1)}, which changes with the spin representative
  auto spins = spin_structures(p.B);
  if (spins.size() < 2)
    throw std::domain_error(
        "diagnostic needs a graph with at least two spin structures");
  const auto &s0 = spins[0];
  const auto &s1 = spins[1];
  IVec b0(p.n, Int(0)), b1(p.n);
  for (long i = 0; i < p.n; ++i) {
    Int acc(0);
    for (long j = 0; j < p.n; ++j)
      acc += p.B[i][j] * (s0[j] - s1[j]);
    if (acc % 2 != 0)
      throw std::logic_error("spin difference not in 2Z after B");
    b1[i] = acc / 2;
  }
  if (spinc_canonical(p.B, spinc_vector(p.B, b0, s0)) !=
      spinc_canonical(p.B, spinc_vector(p.B, b1, s1)))
    throw std::logic_error("representatives disagree on the spin^c class");

  QMat binv = inverse_rational(p.B);
  double h1 = std::abs(det_int(p.B).get_d());
  Cplx torsion = (in.pos % 2 ? -1.0 : 1.0) * rep.b_factor;
  // prefactor: everything in the candidate coefficient outside the sum over
  // H_1 (which depends only on the spin^c class, not the representative)
  auto prefactor = [&](const std::vector<int> &s) {
    Rat sterm(0);
    for (long i = 0; i < p.n; ++i) {
      Rat row(0);
      for (long j = 0; j < p.n; ++j)
        row += Rat(p.B[i][j]) * Rat(s[j] + 1);
      sterm += w.alpha[i] * row;
    }
    long mu = rokhlin_mu(p.B, s);
    return exp2pi(rat_of(-mu, 2)) * exp2pi(-sterm / 2) * torsion / h1;
  };
  auto a_sum = [&](const IVec &b) {
    Cplx sum(0.0, 0.0);
    for (const IVec &a : h1_reps(p.B)) {
      Rat x = -Rat(par.r / 2) * linking(binv, a, a) -
              2 * linking(binv, a, b) - omega_eval(w, a);
      sum += exp2pi(x);
    }
    return sum;
  };
  rep.coeff_first = prefactor(s0);
  rep.coeff_second = prefactor(s1);
  rep.a_sum_invariant = std::abs(a_sum(b0) - a_sum(b1)) < 1e-9;
  rep.representative_independent =
      std::abs(rep.coeff_first - rep.coeff_second) <
      1e-9 * std::max(1.0, std::abs(rep.coeff_first));
  return rep;
}

} // namespace qtop
