#include "tightcert/cf.hpp"

namespace tightcert {

void validate_expansion(const CFExpansion& terms) {
  require(!terms.empty(), "empty continued fraction expansion");
  for (const Int& t : terms) require(t >= 2, "continued fraction term < 2");
}

Rational cf_eval(const CFExpansion& terms) {
  validate_expansion(terms);
  Rational acc(terms.back());
  for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it)
    acc = Rational(*it) - inverse(acc);
  return acc;
}

CFExpansion cf_expand(const Rational& r) {
  require(r > Rational(1), "cf_expand requires r > 1");
  CFExpansion out;
  Rational cur = r;
  while (true) {
    Int t = cur.ceil();
    out.push_back(t);
    Rational rem = Rational(t) - cur;
    if (rem.is_zero()) break;
    cur = inverse(rem);  // rem in (0,1), so cur > 1 and the next term is >= 2
  }
  return out;
}

CFExpansion riemenschneider_dual(const CFExpansion& terms) {
  Rational r = inverse(cf_eval(terms));  // r in (0,1)
  return cf_expand(inverse(Rational(1) - r));
}

}  // namespace tightcert
