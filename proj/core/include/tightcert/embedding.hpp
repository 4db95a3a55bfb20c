#pragma once

#include <map>
#include <vector>

#include "tightcert/plumbing.hpp"
#include "tightcert/rational.hpp"

namespace tightcert {

// Second-homology class of a projective plane blown up N times, written
// against the standard generators: h (square +1) and exceptional classes
// e_1..e_N (square -1 each, mutually orthogonal).  e[i] is the coefficient
// of e_{i+1}.
struct HomologyClass {
  Int h = 0;
  std::vector<Int> e;

  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

// h_a*h_b - sum_i e_a[i]*e_b[i].  Both classes must share one ambient rank.
Int pairing(const HomologyClass& a, const HomologyClass& b);

enum class Side { Gamma, GammaDual };

// Disjoint embedding of a star-shaped plumbing tree (center -1, three legs)
// and its dual tree into a blown-up projective plane: one homology class per
// vertex, reproducing each tree's intersection form on its own side and
// orthogonal across sides.
struct EmbeddingModel {
  PlumbingTree gamma;       // canonical vertex ids: center 0, legs consecutive
  PlumbingTree gamma_dual;  // same layout
  int exceptional_count = 0;

  std::map<int, HomologyClass> gamma_classes;  // vertex id -> class
  std::map<int, HomologyClass> dual_classes;

  int gamma_center_id = 0;
  int dual_center_id = 0;
  std::vector<std::vector<int>> gamma_leg_ids;  // per leg, center outward
  std::vector<std::vector<int>> dual_leg_ids;   // per leg, dual center outward

  const HomologyClass& class_of(Side side, int vertex_id) const;
};

// Builds the model by a deterministic blow-up schedule: the three lines
// through a common point are separated first, then each Gamma-leg /
// dual-leg pair grows inside its own corridor, one blow-up per unit of
// weight.  The result is checked against both intersection forms and
// cross-side orthogonality; if that verification ever failed the builder
// would fall back to a bounded exhaustive search before giving up.
// Requires: star shape, center weight -1, exactly three legs, and positive
// Euler number of the boundary.
EmbeddingModel embed_union(const PlumbingTree& gamma);

// The fallback search, exposed for direct testing: assigns classes of the
// constrained shapes (center e_1, dual center h-e_2-e_3-e_4, leg heads
// h-e_1-e_{i+1}-..., tails e_j-...) by depth-first search with a node
// budget.  Throws check_error when the budget or the ambient rank cap is
// exceeded, or when no assignment exists.
EmbeddingModel embed_union_exhaustive(const PlumbingTree& gamma, long long node_budget);

// Characteristic class on the ambient blown-up plane together with its
// evaluations on every embedded vertex class.
struct CharClassC {
  HomologyClass pd;
  std::map<int, Int> gamma_values;  // vertex id -> <c, class>
  std::map<int, Int> dual_values;
};

// Class for the family with first leg [2 x k, ...], second leg head k+2,
// third leg a single vertex: PD(c) = h - sum(E) + 2*sum(S) + 2*sum(T) where
// S holds the exceptional classes meeting the second dual leg only past its
// first k vertices, and T those meeting the third dual leg away from its
// outermost vertex.
CharClassC build_class_c_A(const EmbeddingModel& model, int k);

// Class for the family with legs [2], [3, 2 x s, m], [2s+5]: same T, and S'
// holds the exceptional classes meeting the second dual leg away from its
// first two vertices but meeting neither of those two.
CharClassC build_class_c_B(const EmbeddingModel& model, const Int& s, const Int& m);

// Exact pairing of pd with the vertex class; cross-checked against the cache.
Int evaluate(const CharClassC& c, const EmbeddingModel& model, Side side, int vertex_id);

// k^T Q_side^{-1} k where k is the value vector of c on that side.
Rational restrict_square(const CharClassC& c, const EmbeddingModel& model, Side side);

// True iff pd is characteristic on the standard basis (h odd, every e-coeff
// odd), every e-coefficient is +1 or -1, and pd.pd = 1 - N (the ambient
// signature).
bool verify_char_and_signature(const CharClassC& c, const EmbeddingModel& model);

}  // namespace tightcert
