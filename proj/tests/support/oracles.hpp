#pragma once

// Independent cross-checks for the test suite.  Everything here is
// implemented from first principles, without calling the library routines it
// is used to check.

#include <optional>
#include <string>
#include <vector>

#include "tightcert/cf.hpp"
#include "tightcert/classify.hpp"
#include "tightcert/embedding.hpp"
#include "tightcert/lattice.hpp"
#include "tightcert/plumbing.hpp"
#include "tightcert/seifert.hpp"

namespace tightcert::testing {

// Classical point-rule construction of the dual expansion: lay out rows of
// a_i - 1 dots, each row starting under the last dot of the previous one,
// and read columns.
CFExpansion point_rule_dual(const CFExpansion& terms);

// Realizability by brute force over all coprime pairs m > a > 0 with
// m < 1/r3, in lexicographic order.
std::optional<RealizabilityWitness> naive_realizable(const SeifertInvariants& y);

struct OracleGenerator {
  Rational degree;
  long long initial_count = 0;
};

// Generator structure by exhaustive search: enumerates every characteristic
// vector in the box, follows every legal push sequence without memoization,
// and merges initial vectors whose reachable live sets intersect.  Exact
// cofactor arithmetic for degrees.  Only for very small lattices.
std::vector<OracleGenerator> exhaustive_generator_oracle(const IntersectionLattice& lattice);

// All first-family trees at desk scale: leading-2 run k <= 3, third-leg
// weight c1 <= k+5, leg lengths <= 4, tail entries <= 3, positive Euler
// number.  Canonical vertex ids, legs in ratio order.
std::vector<PlumbingTree> family_a_sweep();

// All second-family trees with s <= 4, m in 3..6.
std::vector<PlumbingTree> family_b_sweep();

// Parameters recoverable from a sweep tree's star shape.
struct FamilyAParams {
  int k = 0;
  Int c1;
};
FamilyAParams family_a_params(const PlumbingTree& tree);

struct FamilyBParams {
  Int s;
  Int m;
};
FamilyBParams family_b_params(const PlumbingTree& tree);

// Plumbing description of (2n-1)-surgery on the (2,2n+1) torus knot:
// center -1, legs [-2], [-3,-2 x (n-1)], [-(2n+3)].
PlumbingTree torus_knot_surgery_tree(int n);

// Checks the thirteen expected evaluations of the characteristic class on
// the vertex groups of a first-family instance (both trees).  Empty string
// on success, diagnostic otherwise.
std::string check_family_a_values(const EmbeddingModel& model, const CharClassC& c, int k,
                                  const Int& c1);

// Checks the two expected value matrices of a second-family instance.
std::string check_family_b_values(const EmbeddingModel& model, const CharClassC& c,
                                  const Int& s, const Int& m);

// Deterministic stream of raw Seifert descriptions for randomized endpoint
// tests; excludes the torus-knot surgeries.
std::vector<SeifertInput> random_seifert_inputs(int count, unsigned seed);

}  // namespace tightcert::testing
