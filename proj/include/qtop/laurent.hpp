#pragma once

#include "rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace qtop {

// Sparse Laurent polynomial in one variable with integer coefficients.
// Used for the formal (v-variable) layer of the quantum arithmetic: super
// quantum integers, factorials and binomials all live here before any root
// of unity is chosen.
class Laurent {
public:
  Laurent() = default;
  static Laurent mono(const Int &c, long e) {
    Laurent p;
    if (c != 0)
      p.c_[e] = c;
    return p;
  }
  static Laurent one() { return mono(1, 0); }

  bool is_zero() const { return c_.empty(); }
  const std::map<long, Int> &terms() const { return c_; }

  Int coeff(long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Int(0) : it->second;
  }

  Laurent &operator+=(const Laurent &o) {
    for (auto &[e, c] : o.c_)
      add_term(e, c);
    return *this;
  }
  Laurent &operator-=(const Laurent &o) {
    for (auto &[e, c] : o.c_)
      add_term(e, -c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent &b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent &b) { return a -= b; }

  friend Laurent operator*(const Laurent &a, const Laurent &b) {
    Laurent r;
    for (auto &[ea, ca] : a.c_)
      for (auto &[eb, cb] : b.c_)
        r.add_term(ea + eb, ca * cb);
    return r;
  }
  Laurent &operator*=(const Laurent &o) { return *this = *this * o; }

  bool operator==(const Laurent &o) const { return c_ == o.c_; }

  long min_exp() const { return c_.begin()->first; }
  long max_exp() const { return c_.rbegin()->first; }

  // Exact division; throws if the division leaves a remainder.
  friend Laurent divide_exact(const Laurent &a, const Laurent &b);

  void add_term(long e, const Int &c) {
    if (c == 0)
      return;
    auto it = c_.find(e);
    if (it == c_.end())
      c_[e] = c;
    else {
      it->second += c;
      if (it->second == 0)
        c_.erase(it);
    }
  }

  std::string str(const std::string &var = "v") const;

private:
  std::map<long, Int> c_;
};

} // namespace qtop
