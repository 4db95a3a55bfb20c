#pragma once

#include <vector>

#include "tightcert/rational.hpp"

namespace tightcert {

// Negative ("minus") continued fraction [x1,...,xn] = x1 - 1/(x2 - 1/(... - 1/xn)),
// all terms >= 2.  Always evaluates to a rational > 1.
using CFExpansion = std::vector<Int>;

// Throws input_error unless terms is non-empty with every term >= 2.
void validate_expansion(const CFExpansion& terms);

// Exact right-to-left evaluation of the nested fraction.
Rational cf_eval(const CFExpansion& terms);

// The unique all-terms->=2 expansion of r, by the greedy ceiling algorithm:
// emit t = ceil(r), recurse on 1/(t - r).  Requires r > 1.
CFExpansion cf_expand(const Rational& r);

// Expansion of 1/(1-r) where r = 1/cf_eval(terms).  An involution.
CFExpansion riemenschneider_dual(const CFExpansion& terms);

}  // namespace tightcert
