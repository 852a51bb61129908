#pragma once

#include "rational.hpp"

#include <utility>
#include <vector>

namespace qtop {

// Plumbing tree of framed unknots together with its linking matrix
// B[i][i] = framing, B[i][j] = 1 when {i,j} is an edge.
struct Plumbing {
  long n = 0;
  std::vector<long> framing;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> deg;
  std::vector<std::vector<Int>> B;
};

Plumbing make_plumbing(const std::vector<long> &framings,
                       const std::vector<std::pair<int, int>> &edges);

// JSON format: {"vertices":[{"id":..,"framing":..},..],"edges":[[id,id],..]}
Plumbing plumbing_from_json(const std::string &text);
Plumbing plumbing_from_file(const std::string &path);
std::string plumbing_to_json(const Plumbing &p);

using IMat = std::vector<std::vector<Int>>;
using IVec = std::vector<Int>;
using QMat = std::vector<std::vector<Rat>>;

// Smith normal form U*A*V = D with U, V unimodular
struct Snf {
  IMat U, V, Uinv;
  IVec d; // diagonal, non-negative, d[i] | d[i+1]
};
Snf snf(const IMat &A);

Int det_int(const IMat &A);
QMat inverse_rational(const IMat &A); // throws std::domain_error if singular

// signature data of the symmetric matrix B
struct Inertia {
  long pos = 0, neg = 0;
  long sigma() const { return pos - neg; }
};
Inertia inertia(const IMat &B);

// coset representatives of Z^n / B Z^n (first homology); throws if B singular
std::vector<IVec> h1_reps(const IMat &B);
Int h1_order(const IMat &B);

// all solutions of B s = diag(B) over F_2 (spin structures), entries 0/1
std::vector<std::vector<int>> spin_structures(const IMat &B);

// the integer vector 2b + B(s - 1) representing the spin^c structure
IVec spinc_vector(const IMat &B, const IVec &b, const std::vector<int> &s);
// canonical residue mod 2B Z^n, usable as a dictionary key
IVec spinc_canonical(const IMat &B, const IVec &l);
// one (b, s) pair per spin^c structure
std::vector<std::pair<IVec, std::vector<int>>> spinc_reps(const IMat &B);

// linking pairing a^t B^{-1} b reduced into [0,1)
Rat linking(const QMat &Binv, const IVec &a, const IVec &b);

// Rokhlin-type invariant (sigma - s^t B s) mod 4, in [0,4)
long rokhlin_mu(const IMat &B, const std::vector<int> &s);

// cohomology classes with coefficients in (1/m)Z/mZ ... listed as the vertex
// value vectors m * B^{-1} k mod m over homology representatives k
std::vector<std::vector<Rat>> enumerate_omegas(const IMat &B, long modulus);

// B invertible and B^{-1} negative definite on vertices of valency >= 3
bool weakly_negative_definite(const Plumbing &p);

} // namespace qtop
