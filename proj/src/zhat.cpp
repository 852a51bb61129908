#include "qtop/zhat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qtop {

namespace {

Rat binom(long n, long k) {
  if (k < 0 || k > n)
    return Rat(0);
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rat(b);
}

// support of (x + sign/x)^{2-deg} up to |j| <= -(2-deg) + 2*box for the
// infinite expansions; pairs (j, coefficient), ascending in j
std::vector<std::pair<long, Rat>> vertex_support(int sign, long deg,
                                                 long box) {
  std::vector<std::pair<long, Rat>> out;
  long m = 2 - deg;
  if (m >= 0) {
    for (long j = -m; j <= m; j += 2)
      out.emplace_back(j, vertex_coeff(sign, deg, j));
  } else {
    long cap = -m + 2 * box;
    for (long j = -cap; j <= cap; ++j) {
      Rat c = vertex_coeff(sign, deg, j);
      if (c != 0)
        out.emplace_back(j, c);
    }
  }
  return out;
}

struct SectorTerm {
  IVec l;
  IVec k;   // l = spinc + 2 B k
  Rat coeff;
  Rat quad; // l^t B^{-1} l
};

// Integer form of B^{-1}: adj / det, so membership and quadratic-form work
// inside the lattice walk stays in integer arithmetic.
struct AdjData {
  IMat adj;
  Int det;
};

AdjData adjugate(const IMat &B) {
  AdjData a;
  a.det = det_int(B);
  QMat binv = inverse_rational(B);
  long n = B.size();
  a.adj.assign(n, IVec(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      Rat x = binv[i][j] * Rat(a.det);
      if (!is_integer(x))
        throw std::logic_error("adjugate not integral");
      a.adj[i][j] = rat_num(x);
    }
  return a;
}

// All l in the support box with l congruent to spinc mod 2 B Z^V.
void enumerate_sector(const Plumbing &p, int sign, const IVec &spinc,
                      const AdjData &ad, long box,
                      const std::function<void(const SectorTerm &)> &fn) {
  long n = p.n;
  std::vector<std::vector<std::pair<long, Rat>>> sup(n);
  for (long v = 0; v < n; ++v)
    sup[v] = vertex_support(sign, p.deg[v], box);

  Int twodet = 2 * ad.det;
  IVec l(n);
  std::function<void(long, const Rat &)> rec = [&](long v, const Rat &acc) {
    if (acc == 0)
      return;
    if (v == n) {
      // membership: (1/2) B^{-1} (l - spinc) integral
      IVec k(n);
      for (long i = 0; i < n; ++i) {
        Int y(0);
        for (long j = 0; j < n; ++j)
          y += ad.adj[i][j] * (l[j] - spinc[j]);
        if (y % twodet != 0)
          return;
        k[i] = y / twodet;
      }
      SectorTerm t;
      t.l = l;
      t.k = k;
      t.coeff = acc;
      Int q(0);
      for (long i = 0; i < n; ++i) {
        Int row(0);
        for (long j = 0; j < n; ++j)
          row += ad.adj[i][j] * l[j];
        q += row * l[i];
      }
      t.quad = Rat(q) / Rat(ad.det);
      fn(t);
      return;
    }
    for (const auto &[j, c] : sup[v]) {
      l[v] = j;
      rec(v + 1, acc * c);
    }
  };
  rec(0, Rat(1));
}

void check_preconditions(const Plumbing &p) {
  if (det_int(p.B) == 0)
    throw std::domain_error("degenerate linking matrix");
  if (!weakly_negative_definite(p))
    throw std::domain_error("not weakly negative definite");
}

bool has_infinite_support(const Plumbing &p) {
  return std::any_of(p.deg.begin(), p.deg.end(),
                     [](int d) { return d > 2; });
}

Rat rat_of(long num, long den) {
  Rat x(num, den);
  x.canonicalize();
  return x;
}

long trace_of(const IMat &B) {
  Int t(0);
  for (size_t i = 0; i < B.size(); ++i)
    t += B[i][i];
  return to_long(t);
}

// Neville extrapolation to x = 0; returns value and a crude error estimate
std::pair<std::complex<double>, double>
neville_zero(const std::vector<double> &x,
             const std::vector<std::complex<double>> &y) {
  size_t n = x.size();
  std::vector<std::complex<double>> t = y;
  std::complex<double> prev = t[0];
  for (size_t j = 1; j < n; ++j) {
    if (j + 1 == n)
      prev = t[0]; // extrapolant through the first n-1 points
    for (size_t i = 0; i + j < n; ++i)
      t[i] = (x[i + j] * t[i] - x[i] * t[i + 1]) / (x[i + j] - x[i]);
  }
  return {t[0], std::abs(t[0] - prev)};
}

} // namespace

Rat QSeries::coeff(const Rat &e) const {
  auto it = terms.find(e - offset);
  return it == terms.end() ? Rat(0) : it->second;
}

QSeries make_qseries(const std::map<Rat, Rat> &abs_terms, const Rat &cutoff) {
  QSeries s;
  s.offset = 0;
  bool first = true;
  for (const auto &[e, c] : abs_terms) {
    if (c == 0 || e >= cutoff)
      continue;
    if (first) {
      s.offset = e;
      first = false;
    }
    s.terms[e - s.offset] = c;
  }
  s.order = cutoff - s.offset;
  return s;
}

std::string qseries_to_json(const QSeries &s) {
  std::string out = "{\"delta\":\"" + rat_str(s.offset) + "\",\"coeffs\":[";
  bool first = true;
  for (const auto &[inc, c] : s.terms) {
    if (!first)
      out += ",";
    first = false;
    out += "[\"" + rat_str(inc) + "\",\"" + rat_str(c) + "\"]";
  }
  out += "]}";
  return out;
}

Rat vertex_coeff(int sign, long degree, long j) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("sign must be +1 or -1");
  long m = 2 - degree;
  if (((j - m) % 2 + 2) % 2 != 0)
    return Rat(0);
  if (m >= 0) {
    if (j < -m || j > m)
      return Rat(0);
    long i = (m - j) / 2;
    Rat c = binom(m, i);
    if (sign == -1 && i % 2)
      c = -c;
    return c;
  }
  long mn = -m;
  Rat half(1, 2);
  Rat res(0);
  if ((m - j) / 2 >= 0) { // expansion at x -> infinity: j = m - 2k
    long k = (m - j) / 2;
    Rat c = binom(mn + k - 1, k);
    if ((-sign == -1 ? k % 2 : 0)) // (-sign)^k
      c = -c;
    res += half * c;
  }
  if ((j + m) / 2 >= 0) { // expansion at x -> 0: j = -m + 2k
    long k = (j + m) / 2;
    Rat c = binom(mn + k - 1, k);
    long neg = 0;
    if (sign == -1)
      neg += mn; // sign^{mn}
    if (-sign == -1)
      neg += k; // (-sign)^k
    if (neg % 2)
      c = -c;
    res += half * c;
  }
  return res;
}

Rat f_coeff(const Plumbing &p, int sign, const IVec &l) {
  if (static_cast<long>(l.size()) != p.n)
    throw std::invalid_argument("index vector size mismatch");
  Rat out(1);
  for (long v = 0; v < p.n; ++v) {
    out *= vertex_coeff(sign, p.deg[v], to_long(l[v]));
    if (out == 0)
      return out;
  }
  return out;
}

Rat zhat_delta(const Plumbing &p, const IVec &spinc) {
  QMat binv = inverse_rational(p.B);
  Rat quad(0);
  for (long i = 0; i < p.n; ++i) {
    Rat row(0);
    for (long j = 0; j < p.n; ++j)
      row += binv[i][j] * Rat(spinc[j]);
    quad += row * Rat(spinc[i]);
  }
  Inertia in = inertia(p.B);
  return rat_of(3 * in.sigma() - trace_of(p.B), 4) - quad / 4;
}

QSeries zhat_series(Algebra alg, const Plumbing &p, const IVec &b,
                    const std::vector<int> &s, const Rat &order) {
  check_preconditions(p);
  int sign = (alg == Algebra::Osp) ? 1 : -1;
  IVec spinc = spinc_vector(p.B, b, s);
  AdjData ad = adjugate(p.B);
  Inertia in = inertia(p.B);
  Rat pre = rat_of(3 * in.sigma() - trace_of(p.B), 4);
  Rat cutoff = zhat_delta(p, spinc) + order;
  bool odd_bplus = in.pos % 2;

  std::map<Rat, Rat> acc, last;
  long stable = 0;
  for (long box = 4; stable < 2; box *= 2) {
    acc.clear();
    enumerate_sector(p, sign, spinc, ad, box, [&](const SectorTerm &t) {
      Rat e = pre - t.quad / 4;
      if (e >= cutoff)
        return;
      acc[e] += odd_bplus ? -t.coeff : t.coeff;
    });
    for (auto it = acc.begin(); it != acc.end();)
      it = (it->second == 0) ? acc.erase(it) : std::next(it);
    if (box > 4 && acc == last)
      ++stable;
    else
      stable = 0;
    last = acc;
    if (box > (1L << 24))
      throw std::runtime_error("lattice box did not stabilize");
  }
  return make_qseries(acc, cutoff);
}

std::complex<double> zhat_root_eval(const Plumbing &p, const IVec &b,
                                    const std::vector<int> &s, Algebra alg,
                                    long r, const std::string &strategy,
                                    double tolerance) {
  check_preconditions(p);
  int sign = (alg == Algebra::Osp) ? 1 : -1;
  IVec spinc = spinc_vector(p.B, b, s);
  AdjData ad = adjugate(p.B);
  Inertia in = inertia(p.B);
  Rat pre = rat_of(3 * in.sigma() - trace_of(p.B), 4);
  double prefac = in.pos % 2 ? -1.0 : 1.0;

  // q^x at q = e^{4 pi i / r}
  auto phase = [&](const Rat &x) {
    return std::polar(1.0, 4.0 * M_PI * x.get_d() / static_cast<double>(r));
  };

  // damped lattice sum at a fixed t, box enlarged until stable
  auto damped_sum = [&](double t) {
    std::complex<double> total(0.0, 0.0);
    long stable = 0;
    long box_cap = has_infinite_support(p)
                       ? static_cast<long>(std::log(1e-14) / std::log(t)) + 16
                       : 64;
    for (long box = 4; stable < 2 && box <= box_cap; box *= 2) {
      std::complex<double> sum(0.0, 0.0);
      enumerate_sector(p, sign, spinc, ad, box, [&](const SectorTerm &t2) {
        double norm1 = 0;
        for (const Int &ki : t2.k)
          norm1 += std::abs(ki.get_d());
        sum += t2.coeff.get_d() * std::pow(t, norm1) *
               phase(pre - t2.quad / 4);
      });
      if (std::abs(sum - total) < 1e-13 * std::max(1.0, std::abs(sum)))
        ++stable;
      else
        stable = 0;
      total = sum;
    }
    return prefac * total;
  };

  if (strategy == "gauss") {
    if (has_infinite_support(p))
      throw std::domain_error(
          "gauss strategy needs all vertex degrees at most two");
    return damped_sum(1.0); // finite support: exact finite sum
  }
  if (strategy != "abel")
    throw std::invalid_argument("unknown strategy: " + strategy);

  const std::vector<double> ts = {0.90, 0.95, 0.99, 0.999};
  std::vector<double> us;
  std::vector<std::complex<double>> vals;
  for (double t : ts) {
    us.push_back(1.0 - t);
    vals.push_back(damped_sum(t));
  }
  auto [value, err] = neville_zero(us, vals);
  if (err > tolerance)
    throw std::runtime_error("regularization did not converge");
  return value;
}

} // namespace qtop
