#include "qtop/laurent.hpp"

#include <sstream>

namespace qtop {

Laurent divide_exact(const Laurent &a, const Laurent &b) {
  if (b.is_zero())
    throw std::domain_error("Laurent division by zero");
  if (a.is_zero())
    return Laurent();
  // shift both to ordinary polynomials
  long sa = a.min_exp(), sb = b.min_exp();
  long da = a.max_exp() - sa, db = b.max_exp() - sb;
  if (da < db)
    throw std::domain_error("Laurent division not exact");
  std::vector<Int> num(da + 1), den(db + 1);
  for (auto &[e, c] : a.terms())
    num[e - sa] = c;
  for (auto &[e, c] : b.terms())
    den[e - sb] = c;
  const Int &lead = den[db];
  std::vector<Int> quo(da - db + 1);
  for (long i = da - db; i >= 0; --i) {
    Int top = num[i + db];
    if (top == 0)
      continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
      throw std::domain_error("Laurent division not exact");
    Int q = top / lead;
    quo[i] = q;
    for (long j = 0; j <= db; ++j)
      num[i + j] -= q * den[j];
  }
  for (auto &c : num)
    if (c != 0)
      throw std::domain_error("Laurent division not exact");
  Laurent r;
  for (long i = 0; i < (long)quo.size(); ++i)
    r.add_term(i + sa - sb, quo[i]);
  return r;
}

std::string Laurent::str(const std::string &var) const {
  if (c_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    Int c = it->second;
    if (!first)
      os << (c > 0 ? " + " : " - ");
    else if (c < 0)
      os << "-";
    first = false;
    Int ac = abs(c);
    long e = it->first;
    if (ac != 1 || e == 0)
      os << ac.get_str();
    if (e != 0) {
      if (ac != 1)
        os << "*";
      os << var;
      if (e != 1)
        os << "^" << e;
    }
  }
  return os.str();
}

} // namespace qtop
