#include "qtop/plumbing.hpp"

#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <numeric>

namespace qtop {

Plumbing make_plumbing(const std::vector<long> &framings,
                       const std::vector<std::pair<int, int>> &edges) {
  Plumbing p;
  p.n = (long)framings.size();
  if (p.n == 0)
    throw std::invalid_argument("plumbing graph has no vertices");
  p.framing = framings;
  p.edges = edges;
  p.deg.assign(p.n, 0);
  p.B.assign(p.n, std::vector<Int>(p.n));
  for (long i = 0; i < p.n; ++i)
    p.B[i][i] = framings[i];
  // union-find for connectivity
  std::vector<int> root(p.n);
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return root[x] == x ? x : root[x] = find(root[x]);
  };
  for (auto &[a, b] : edges) {
    if (a < 0 || b < 0 || a >= p.n || b >= p.n || a == b)
      throw std::invalid_argument("bad edge in plumbing graph");
    if (p.B[a][b] != 0)
      throw std::invalid_argument("multi-edge in plumbing graph");
    p.B[a][b] = p.B[b][a] = 1;
    p.deg[a]++;
    p.deg[b]++;
    root[find(a)] = find(b);
  }
  if ((long)edges.size() != p.n - 1)
    throw std::invalid_argument("plumbing graph is not a tree");
  for (long i = 0; i < p.n; ++i)
    if (find(i) != find(0))
      throw std::invalid_argument("plumbing graph is not connected");
  return p;
}

Plumbing plumbing_from_json(const std::string &text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::map<long, int> idx;
  std::vector<long> fr;
  for (auto &v : j.at("vertices")) {
    long id = v.at("id").get<long>();
    if (idx.count(id))
      throw std::invalid_argument("duplicate vertex id");
    idx[id] = (int)fr.size();
    fr.push_back(v.at("framing").get<long>());
  }
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges"))
    for (auto &e : j.at("edges")) {
      long a = e.at(0).get<long>(), b = e.at(1).get<long>();
      if (!idx.count(a) || !idx.count(b))
        throw std::invalid_argument("edge references unknown vertex");
      edges.emplace_back(idx[a], idx[b]);
    }
  return make_plumbing(fr, edges);
}

Plumbing plumbing_from_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return plumbing_from_json(text);
}

std::string plumbing_to_json(const Plumbing &p) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::json::array();
  for (long i = 0; i < p.n; ++i)
    j["vertices"].push_back({{"id", i}, {"framing", p.framing[i]}});
  j["edges"] = nlohmann::json::array();
  for (auto &[a, b] : p.edges)
    j["edges"].push_back({a, b});
  return j.dump();
}

// ---- integer linear algebra ----

namespace {

IMat identity_mat(long n) {
  IMat I(n, IVec(n));
  for (long i = 0; i < n; ++i)
    I[i][i] = 1;
  return I;
}

} // namespace

Snf snf(const IMat &A0) {
  IMat A = A0;
  long m = (long)A.size(), n = m ? (long)A[0].size() : 0;
  Snf s;
  s.U = identity_mat(m);
  s.Uinv = identity_mat(m);
  s.V = identity_mat(n);

  auto swap_rows = [&](long i, long j) {
    std::swap(A[i], A[j]);
    std::swap(s.U[i], s.U[j]);
    for (long k = 0; k < m; ++k)
      std::swap(s.Uinv[k][i], s.Uinv[k][j]);
  };
  auto swap_cols = [&](long i, long j) {
    for (long k = 0; k < m; ++k)
      std::swap(A[k][i], A[k][j]);
    for (long k = 0; k < n; ++k)
      std::swap(s.V[k][i], s.V[k][j]);
  };
  auto add_row = [&](long dst, long src, const Int &c) { // row dst += c*src
    for (long k = 0; k < n; ++k)
      A[dst][k] += c * A[src][k];
    for (long k = 0; k < m; ++k)
      s.U[dst][k] += c * s.U[src][k];
    for (long k = 0; k < m; ++k)
      s.Uinv[k][src] -= c * s.Uinv[k][dst];
  };
  auto add_col = [&](long dst, long src, const Int &c) {
    for (long k = 0; k < m; ++k)
      A[k][dst] += c * A[k][src];
    for (long k = 0; k < n; ++k)
      s.V[k][dst] += c * s.V[k][src];
  };
  auto negate_row = [&](long i) {
    for (long k = 0; k < n; ++k)
      A[i][k] = -A[i][k];
    for (long k = 0; k < m; ++k)
      s.U[i][k] = -s.U[i][k];
    for (long k = 0; k < m; ++k)
      s.Uinv[k][i] = -s.Uinv[k][i];
  };

  long t = 0;
  long rank = std::min(m, n);
  while (t < rank) {
    // find pivot: smallest nonzero |entry| in A[t.., t..]
    long pi = -1, pj = -1;
    Int best;
    for (long i = t; i < m; ++i)
      for (long j = t; j < n; ++j)
        if (A[i][j] != 0 && (pi < 0 || abs(A[i][j]) < best)) {
          best = abs(A[i][j]);
          pi = i;
          pj = j;
        }
    if (pi < 0)
      break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (long i = t + 1; i < m; ++i)
        if (A[i][t] != 0) {
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
          add_row(i, t, -q);
          if (A[i][t] != 0) {
            swap_rows(t, i);
            dirty = true;
          }
        }
      for (long j = t + 1; j < n; ++j)
        if (A[t][j] != 0) {
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
          add_col(j, t, -q);
          if (A[t][j] != 0) {
            swap_cols(t, j);
            dirty = true;
          }
        }
    }
    if (A[t][t] < 0)
      negate_row(t);
    ++t;
  }
  // enforce divisibility chain
  for (long i = 0; i + 1 < t; ++i) {
    for (long j = i + 1; j < t; ++j) {
      if (A[j][j] % A[i][i] != 0) {
        // fold A[j][j] into position i and redo from i
        add_col(i, j, 1);
        // re-run elimination at i
        bool dirty = true;
        while (dirty) {
          dirty = false;
          for (long k = i; k < t; ++k) {
            if (k != i && A[k][i] != 0) {
              Int q;
              mpz_fdiv_q(q.get_mpz_t(), A[k][i].get_mpz_t(),
                         A[i][i].get_mpz_t());
              add_row(k, i, -q);
              if (A[k][i] != 0) {
                swap_rows(i, k);
                dirty = true;
              }
            }
          }
          for (long k = i; k < t; ++k) {
            if (k != i && A[i][k] != 0) {
              Int q;
              mpz_fdiv_q(q.get_mpz_t(), A[i][k].get_mpz_t(),
                         A[i][i].get_mpz_t());
              add_col(k, i, -q);
              if (A[i][k] != 0) {
                swap_cols(i, k);
                dirty = true;
              }
            }
          }
        }
        if (A[i][i] < 0)
          negate_row(i);
        j = i; // recheck the chain from i
      }
    }
  }
  // the chain fix-up can leave a negative pivot below the re-run position
  for (long i = 0; i < t; ++i)
    if (A[i][i] < 0)
      negate_row(i);
  s.d.resize(std::min(m, n));
  for (long i = 0; i < (long)s.d.size(); ++i)
    s.d[i] = A[i][i];
  return s;
}

Int det_int(const IMat &A) {
  long n = (long)A.size();
  // fraction-free Gaussian elimination (Bareiss)
  IMat M = A;
  Int prev = 1;
  int sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (M[k][k] == 0) {
      long p = -1;
      for (long i = k + 1; i < n; ++i)
        if (M[i][k] != 0) {
          p = i;
          break;
        }
      if (p < 0)
        return 0;
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j) {
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
      }
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

QMat inverse_rational(const IMat &A) {
  long n = (long)A.size();
  QMat M(n, std::vector<Rat>(n)), I(n, std::vector<Rat>(n));
  for (long i = 0; i < n; ++i) {
    I[i][i] = 1;
    for (long j = 0; j < n; ++j)
      M[i][j] = Rat(A[i][j]);
  }
  for (long k = 0; k < n; ++k) {
    long p = -1;
    for (long i = k; i < n; ++i)
      if (M[i][k] != 0) {
        p = i;
        break;
      }
    if (p < 0)
      throw std::domain_error("matrix is singular");
    std::swap(M[k], M[p]);
    std::swap(I[k], I[p]);
    Rat piv = M[k][k];
    for (long j = 0; j < n; ++j) {
      M[k][j] /= piv;
      I[k][j] /= piv;
    }
    for (long i = 0; i < n; ++i)
      if (i != k && M[i][k] != 0) {
        Rat c = M[i][k];
        for (long j = 0; j < n; ++j) {
          M[i][j] -= c * M[k][j];
          I[i][j] -= c * I[k][j];
        }
      }
  }
  return I;
}

Inertia inertia(const IMat &B) {
  long n = (long)B.size();
  QMat M(n, std::vector<Rat>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      M[i][j] = Rat(B[i][j]);
  Inertia in;
  std::vector<bool> used(n, false);
  for (long step = 0; step < n; ++step) {
    // pick a nonzero diagonal pivot
    long p = -1;
    for (long i = 0; i < n; ++i)
      if (!used[i] && M[i][i] != 0) {
        p = i;
        break;
      }
    if (p < 0) {
      // look for an off-diagonal entry; fold it onto the diagonal
      long a = -1, b = -1;
      for (long i = 0; i < n && a < 0; ++i)
        if (!used[i])
          for (long j = i + 1; j < n; ++j)
            if (!used[j] && M[i][j] != 0) {
              a = i;
              b = j;
              break;
            }
      if (a < 0)
        break; // remaining block is zero
      for (long k = 0; k < n; ++k)
        M[a][k] += M[b][k];
      for (long k = 0; k < n; ++k)
        M[k][a] += M[k][b];
      p = a;
    }
    Rat piv = M[p][p];
    (piv > 0 ? in.pos : in.neg)++;
    used[p] = true;
    for (long i = 0; i < n; ++i) {
      if (used[i] || M[i][p] == 0)
        continue;
      Rat c = M[i][p] / piv;
      for (long k = 0; k < n; ++k)
        M[i][k] -= c * M[p][k];
      for (long k = 0; k < n; ++k)
        M[k][i] -= c * M[k][p];
    }
  }
  return in;
}

Int h1_order(const IMat &B) { return abs(det_int(B)); }

std::vector<IVec> h1_reps(const IMat &B) {
  Int d = det_int(B);
  if (d == 0)
    throw std::domain_error("linking matrix is singular");
  Snf s = snf(B);
  long n = (long)B.size();
  std::vector<IVec> reps;
  IVec t(n);
  // enumerate tuples 0 <= t_i < d_i; rep = Uinv * t
  std::function<void(long)> rec = [&](long i) {
    if (i == n) {
      IVec x(n);
      for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
          x[a] += s.Uinv[a][b] * t[b];
      reps.push_back(x);
      return;
    }
    for (Int v = 0; v < s.d[i]; ++v) {
      t[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return reps;
}

std::vector<std::vector<int>> spin_structures(const IMat &B) {
  long n = (long)B.size();
  // solve B s = diag(B) over F2
  std::vector<std::vector<int>> M(n, std::vector<int>(n + 1));
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j)
      M[i][j] = (int)mpz_tstbit(B[i][j].get_mpz_t(), 0);
    M[i][n] = (int)mpz_tstbit(B[i][i].get_mpz_t(), 0);
  }
  std::vector<long> pivcol;
  long row = 0;
  for (long col = 0; col < n && row < n; ++col) {
    long p = -1;
    for (long i = row; i < n; ++i)
      if (M[i][col]) {
        p = i;
        break;
      }
    if (p < 0)
      continue;
    std::swap(M[row], M[p]);
    for (long i = 0; i < n; ++i)
      if (i != row && M[i][col])
        for (long j = col; j <= n; ++j)
          M[i][j] ^= M[row][j];
    pivcol.push_back(col);
    ++row;
  }
  for (long i = row; i < n; ++i)
    if (M[i][n])
      return {}; // inconsistent; cannot happen for symmetric B over F2
  std::vector<bool> is_pivot(n, false);
  for (long c : pivcol)
    is_pivot[c] = true;
  std::vector<long> freecols;
  for (long c = 0; c < n; ++c)
    if (!is_pivot[c])
      freecols.push_back(c);
  std::vector<std::vector<int>> sols;
  long k = (long)freecols.size();
  for (long mask = 0; mask < (1L << k); ++mask) {
    std::vector<int> s(n, 0);
    for (long i = 0; i < k; ++i)
      s[freecols[i]] = (mask >> i) & 1;
    for (long i = (long)pivcol.size() - 1; i >= 0; --i) {
      int v = M[i][n];
      for (long j = pivcol[i] + 1; j < n; ++j)
        v ^= M[i][j] & s[j];
      s[pivcol[i]] = v;
    }
    sols.push_back(s);
  }
  return sols;
}

IVec spinc_vector(const IMat &B, const IVec &b, const std::vector<int> &s) {
  long n = (long)B.size();
  IVec l(n);
  for (long i = 0; i < n; ++i) {
    l[i] = 2 * b[i];
    for (long j = 0; j < n; ++j)
      l[i] += B[i][j] * Int(s[j] - 1);
  }
  return l;
}

IVec spinc_canonical(const IMat &B, const IVec &l) {
  long n = (long)B.size();
  IMat B2(n, IVec(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      B2[i][j] = 2 * B[i][j];
  Snf s = snf(B2);
  IVec t(n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      t[i] += s.U[i][j] * l[j];
  for (long i = 0; i < n; ++i) {
    if (s.d[i] != 0)
      mpz_fdiv_r(t[i].get_mpz_t(), t[i].get_mpz_t(), s.d[i].get_mpz_t());
  }
  return t;
}

std::vector<std::pair<IVec, std::vector<int>>> spinc_reps(const IMat &B) {
  std::vector<std::pair<IVec, std::vector<int>>> out;
  std::map<IVec, bool> seen;
  auto spins = spin_structures(B);
  auto bs = h1_reps(B);
  for (auto &s : spins)
    for (auto &b : bs) {
      IVec key = spinc_canonical(B, spinc_vector(B, b, s));
      if (seen.count(key))
        continue;
      seen[key] = true;
      out.push_back({b, s});
    }
  return out;
}

Rat linking(const QMat &Binv, const IVec &a, const IVec &b) {
  long n = (long)Binv.size();
  Rat s = 0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      s += Rat(a[i]) * Binv[i][j] * Rat(b[j]);
  return rat_mod(s, Rat(1));
}

long rokhlin_mu(const IMat &B, const std::vector<int> &s) {
  Inertia in = inertia(B);
  Int q = 0;
  long n = (long)B.size();
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      q += Int(s[i]) * B[i][j] * Int(s[j]);
  Int mu = Int(in.sigma()) - q;
  mpz_fdiv_r_ui(mu.get_mpz_t(), mu.get_mpz_t(), 4);
  return to_long(mu);
}

std::vector<std::vector<Rat>> enumerate_omegas(const IMat &B, long modulus) {
  QMat Binv = inverse_rational(B);
  auto reps = h1_reps(B);
  std::vector<std::vector<Rat>> out;
  long n = (long)B.size();
  for (auto &k : reps) {
    std::vector<Rat> alpha(n);
    for (long i = 0; i < n; ++i) {
      Rat v = 0;
      for (long j = 0; j < n; ++j)
        v += Binv[i][j] * Rat(k[j]);
      alpha[i] = rat_mod(Rat(modulus) * v, Rat(modulus));
    }
    out.push_back(alpha);
  }
  return out;
}

bool weakly_negative_definite(const Plumbing &p) {
  if (det_int(p.B) == 0)
    return false;
  QMat Binv = inverse_rational(p.B);
  std::vector<long> I;
  for (long i = 0; i < p.n; ++i)
    if (p.deg[i] >= 3)
      I.push_back(i);
  if (I.empty())
    return true;
  // negative definite <=> leading principal minors alternate starting negative
  long m = (long)I.size();
  QMat S(m, std::vector<Rat>(m));
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < m; ++b)
      S[a][b] = -Binv[I[a]][I[b]]; // test -S positive definite
  // Cholesky-style: all pivots positive
  for (long k = 0; k < m; ++k) {
    if (S[k][k] <= 0)
      return false;
    for (long i = k + 1; i < m; ++i) {
      Rat c = S[i][k] / S[k][k];
      for (long j = k; j < m; ++j)
        S[i][j] -= c * S[k][j];
    }
  }
  return true;
}

} // namespace qtop
