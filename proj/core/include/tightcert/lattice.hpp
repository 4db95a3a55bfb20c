#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tightcert/plumbing.hpp"
#include "tightcert/rational.hpp"

namespace tightcert {

// Integer covector of evaluations on the lattice's vertices, in row order:
// values[i] = <K, v_i>.  Characteristic when values[i] = Q[i][i] (mod 2).
struct CharVector {
  std::vector<Int> values;

  friend bool operator==(const CharVector&, const CharVector&) = default;
};

// A legal push sequence from an initial vector to a terminal vector.
// pushed[i] is the vertex id pushed between steps[i] and steps[i+1].
// Every step has the same degree, recorded once.
struct FullPath {
  std::vector<CharVector> steps;
  std::vector<int> pushed;
  Rational degree;

  friend bool operator==(const FullPath&, const FullPath&) = default;
};

// Canonical label of K mod 2*Q*Z^n: residues of U*K against the diagonal of
// a deterministic diagonalization U*(2Q)*V = D, entry i reduced into
// [0, |D_ii|).  Two characteristic vectors get equal labels iff their
// difference lies in the integer column span of 2Q.
struct SpinCClass {
  std::vector<Int> residues;

  friend bool operator==(const SpinCClass&, const SpinCClass&) = default;
  friend bool operator<(const SpinCClass& a, const SpinCClass& b) {
    return a.residues < b.residues;
  }
};

struct Generator {
  Rational degree;
  FullPath witness;
  CharVector representative;  // least good initial vector of the class
  long long initial_count = 0;
};

struct GeneratorTable {
  std::map<SpinCClass, std::vector<Generator>> by_class;
  Int det;
  std::vector<Int> moduli;  // diagonal of the 2Q diagonalization, for context

  long long total_generators() const {
    long long n = 0;
    for (const auto& [cls, gens] : by_class) n += static_cast<long long>(gens.size());
    return n;
  }
};

bool is_characteristic(const IntersectionLattice& lattice, const CharVector& k);

// Counts rows whose off-diagonal support exceeds |diagonal| (the lattice-side
// view of bad vertices).
int bad_row_count(const IntersectionLattice& lattice);

// K + 2*PD(v): requires <K, v> = -v.v; the value at v becomes v.v, each
// neighbor's value grows by 2.  Vertex given by id.
CharVector push(const IntersectionLattice& lattice, const CharVector& k, int vertex_id);

// k^T Q^{-1} k, exact.  Requires det(Q) != 0.
Rational square(const IntersectionLattice& lattice, const CharVector& k);

// (square(K) + vertex count)/4.
Rational degree(const IntersectionLattice& lattice, const CharVector& k);

// Searches forward (pushes) to a terminal vector and backward (inverse
// pushes) to an initial vector; returns the concatenated full path through K
// or absent.  Vertices tried in ascending row order.  Requires K
// characteristic and the lattice negative definite with at most one bad row.
std::optional<FullPath> find_full_path_through(const IntersectionLattice& lattice,
                                               const CharVector& k);

SpinCClass spinc_class(const IntersectionLattice& lattice, const CharVector& k);

// Enumerates the initial box (v.v + 2 <= value <= -v.v per coordinate),
// finds which initial vectors admit a full path, and groups them into
// generators by the equivalence generated by co-membership in a common full
// path.  Requires negative definite, at most one bad row; rejects lattices
// whose state space exceeds the built-in enumeration bound.
GeneratorTable enumerate_generators(const IntersectionLattice& lattice);

// True iff total generator count = |det(Q)|.
bool is_L_space(const IntersectionLattice& lattice);

// The unique generator degree per spin^c class.  Rejects tables where any
// class fails to have exactly one generator.
std::map<SpinCClass, Rational> correction_terms(const IntersectionLattice& lattice);

}  // namespace tightcert
