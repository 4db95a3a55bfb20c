#pragma once

#include <optional>
#include <vector>

#include "tightcert/rational.hpp"

namespace tightcert {

// Normalized Seifert invariants Y(e0; r1,...,rk) of a Seifert fibered
// rational homology sphere over S^2: every ratio in (0,1), sorted descending.
struct SeifertInvariants {
  Int e0;
  std::vector<Rational> ratios;

  friend bool operator==(const SeifertInvariants&, const SeifertInvariants&) = default;
};

// Validates ratios in (0,1), sorts descending (ties resolved by the stored
// reduced (numerator, denominator) pair, which equal values share).
SeifertInvariants make_seifert(Int e0, std::vector<Rational> ratios);

// Canonicalizes arbitrary input: folds integer parts of the ratios into e0,
// drops zero entries, sorts.  Represents the same manifold.
SeifertInvariants normalize(const Int& e0, const std::vector<Rational>& raw);

// e0 + sum of ratios.
Rational euler_number(const SeifertInvariants& si);

// Y(-k-e0; 1-r1,...,1-rk), re-sorted.  Flips the sign of euler_number.
SeifertInvariants reverse_orientation(const SeifertInvariants& si);

// Witness that the triple of ratios admits a transverse contact structure:
// coprime m > a > 0 with 1/r1 > m/a, 1/r2 > m/(m-a), 1/r3 > m (all strict).
struct RealizabilityWitness {
  Int m;
  Int a;

  friend bool operator==(const RealizabilityWitness&, const RealizabilityWitness&) = default;
};

// Requires k = 3.  Returns the lexicographically least witness (by m, then a),
// or absent when none exists.  Finite search: the third inequality bounds m.
std::optional<RealizabilityWitness> realizable(const SeifertInvariants& si);

}  // namespace tightcert
