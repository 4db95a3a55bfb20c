#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tightcert/rational.hpp"
#include "tightcert/seifert.hpp"

namespace tightcert {

// Weighted tree prescribing a plumbed 4-manifold; its boundary is the
// plumbed 3-manifold.  Vertex ids are arbitrary but unique; edges are
// unordered id pairs forming a tree.
struct PlumbingTree {
  struct Vertex {
    int id;
    Int weight;

    friend bool operator==(const Vertex&, const Vertex&) = default;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;

  friend bool operator==(const PlumbingTree&, const PlumbingTree&) = default;
};

// Throws input_error unless vertices are non-empty with unique ids and the
// edges form a tree on them.
void validate_tree(const PlumbingTree& tree);

// Star decomposition: one center, legs read from the center outward.
// Leg entries are vertex weights (each <= -2).
struct StarShape {
  Int center_weight;
  std::vector<std::vector<Int>> legs;

  friend bool operator==(const StarShape&, const StarShape&) = default;
};

// Decomposes a star-shaped tree: at most one vertex of valency >= 3 (the
// center), every other vertex of weight <= -2.  For chains the center is the
// unique vertex of weight >= -1 when present, otherwise the lowest-id
// endpoint.  Legs are ordered by their first vertex id.  Throws input_error
// on trees admitting no such decomposition.
StarShape star_shape_of(const PlumbingTree& tree);

// Canonical star tree: center id 0, then each leg's ids consecutive from the
// center outward.
PlumbingTree tree_from_star(const StarShape& star);

// Center weight e0; leg i carries the weights -a1,...,-an where
// 1/ri = [a1,...,an], in ratio order.
PlumbingTree star_tree_from_seifert(const SeifertInvariants& si);

// Left inverse of star_tree_from_seifert up to leg reordering.
SeifertInvariants seifert_from_star_tree(const PlumbingTree& tree);

// For a star tree with center -1 and three legs: the plumbing description of
// the reversed-orientation boundary.  Center -2; each leg replaced by its
// Riemenschneider dual chain.  Canonical ids.
PlumbingTree dual_tree(const PlumbingTree& tree);

// Symmetric intersection matrix (weights on the diagonal, 1 on edges), its
// determinant, and the exact signature, all over the tree's vertex order.
struct IntersectionLattice {
  std::vector<std::vector<Int>> q;
  std::vector<int> ids;  // row/column -> vertex id
  Int det;
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;
};

IntersectionLattice intersection_lattice(const PlumbingTree& tree);

bool is_negative_definite(const IntersectionLattice& lattice);

// Vertices whose valency exceeds the absolute value of their weight.
std::vector<int> bad_vertices(const PlumbingTree& tree);

// Recognizes the plumbing description of (2n-1)-surgery on the (2,2n+1)
// torus knot: center -1 with legs [-2], [-2n-3], [-3,-2,...,-2] (n-1
// trailing -2's), up to leg permutation.  These are the only Seifert fibered
// spaces carrying no positive tight contact structure.
std::optional<Int> recognize_torus_knot_surgery(const PlumbingTree& tree);

// Star tree with three legs, ordered by the sorted Seifert ratios: replaces
// the third leg (smallest ratio) by its first vertex alone.  The boundary's
// third ratio becomes 1/c1.  Output in canonical ids with legs re-sorted.
PlumbingTree truncate_third_leg(const PlumbingTree& tree);

}  // namespace tightcert
