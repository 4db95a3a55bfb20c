#include "tightcert/seifert.hpp"

#include <algorithm>

namespace tightcert {

namespace {

void sort_descending(std::vector<Rational>& ratios) {
  std::sort(ratios.begin(), ratios.end(), [](const Rational& a, const Rational& b) {
    if (a != b) return a > b;
    if (a.num() != b.num()) return a.num() < b.num();
    return a.den() < b.den();
  });
}

}  // namespace

SeifertInvariants make_seifert(Int e0, std::vector<Rational> ratios) {
  for (const Rational& r : ratios)
    require(r > Rational(0) && r < Rational(1), "Seifert ratio outside (0,1): " + r.str());
  sort_descending(ratios);
  return SeifertInvariants{std::move(e0), std::move(ratios)};
}

SeifertInvariants normalize(const Int& e0, const std::vector<Rational>& raw) {
  Int e = e0;
  std::vector<Rational> ratios;
  for (const Rational& r : raw) {
    Int fl = r.floor();
    e += fl;
    Rational frac = r - Rational(fl);
    if (!frac.is_zero()) ratios.push_back(frac);
  }
  return make_seifert(std::move(e), std::move(ratios));
}

Rational euler_number(const SeifertInvariants& si) {
  Rational e(si.e0);
  for (const Rational& r : si.ratios) e += r;
  return e;
}

SeifertInvariants reverse_orientation(const SeifertInvariants& si) {
  std::vector<Rational> flipped;
  flipped.reserve(si.ratios.size());
  for (const Rational& r : si.ratios) flipped.push_back(Rational(1) - r);
  return make_seifert(-Int(si.ratios.size()) - si.e0, std::move(flipped));
}

std::optional<RealizabilityWitness> realizable(const SeifertInvariants& si) {
  require(si.ratios.size() == 3, "realizability test requires exactly 3 ratios");
  Rational inv1 = inverse(si.ratios[0]);
  Rational inv2 = inverse(si.ratios[1]);
  Rational inv3 = inverse(si.ratios[2]);
  // 1/r3 > m bounds the search; m > a > 0 needs m >= 2.
  for (Int m = 2; Rational(m) < inv3; ++m) {
    for (Int a = 1; a < m; ++a) {
      if (boost::multiprecision::gcd(m, a) != 1) continue;
      if (inv1 > Rational(m, a) && inv2 > Rational(m, m - a))
        return RealizabilityWitness{m, a};
    }
  }
  return std::nullopt;
}

}  // namespace tightcert
