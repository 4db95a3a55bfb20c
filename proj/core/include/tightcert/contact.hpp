#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tightcert/embedding.hpp"
#include "tightcert/lattice.hpp"
#include "tightcert/plumbing.hpp"
#include "tightcert/rational.hpp"

namespace tightcert {

// Rotation number of a Legendrian front with the given cusp counts:
// (down - up)/2.  Total cusp count must be even and at least 2.
Int rot_from_cusps(const Int& up, const Int& down);

// Expansion of a negative contact-surgery coefficient into a chain of
// (-1)-surgeries: the unique continued-fraction form r = [x1,...,xn] with
// every xi <= -2, plus the per-component stabilization counts |xi + 2|.
// Defined for r < -1 (no such expansion exists on [-1, 0)); r >= 0 rejected.
struct NegSurgeryExpansion {
  std::vector<Int> terms;           // all <= -2
  std::vector<Int> stabilizations;  // |terms[i] + 2|

  friend bool operator==(const NegSurgeryExpansion&, const NegSurgeryExpansion&) = default;
};
NegSurgeryExpansion expand_negative_contact_surgery(const Rational& r);

// One component of a contact (+1)/(-1)-surgery diagram.
struct SurgeryComponent {
  Int tb;
  Int rot;
  int contact_coeff = -1;  // +1 or -1
};

// Contact surgery presentation: components plus the full symmetric linking
// matrix, whose diagonal entries are the smooth framings tb + contact_coeff.
struct SurgeryPresentation {
  std::vector<SurgeryComponent> components;
  std::vector<std::vector<Int>> linking;
};

// (1/4)(rot^T L^{-1} rot - 3*sigma(L) - 2*b2(L)) + q, where q is the number
// of components with contact coefficient +1.  Empty presentations give 0.
// Requires a valid presentation with nonsingular linking matrix.
Rational d3_from_diagram(const SurgeryPresentation& p);

// (1/4)(c_square - 3*sigma - 2*b2) + 1.
Rational d3_from_restriction(const Rational& c_square, int sigma, int b2);

enum class Family { A, B };

struct TightnessCertificate {
  Family family = Family::A;
  EmbeddingModel model;
  CharClassC c;
  FullPath path;  // full path on the dual side containing c's restriction
  Rational d3;
  Rational d_minus_y;
};

enum class Outcome { TightWithCertificate, TightByCitation, NoTight, Inconclusive };

struct TightnessVerdict {
  Outcome outcome = Outcome::Inconclusive;
  std::string reason;           // stable reason code, or diagnostics when inconclusive
  std::optional<Int> m_index;   // n with "no tight structure", for NoTight
  std::optional<TightnessCertificate> certificate;
};

// Certified tightness test for a star-shaped tree in one of the two
// supported families.  Builds the embedding and the characteristic class,
// verifies the class, computes d3 by restriction, checks that the dual side
// is an L-space and that the class's dual restriction lies on a full path,
// and confirms d3 + d(-Y) = 0.  Returns TightWithCertificate on success and
// Inconclusive (with diagnostics in `reason`) when any check fails; it never
// claims tightness without a verified certificate.  Shape violations, a
// nonpositive boundary Euler number, or transverse realizability are
// rejected as input errors.
TightnessVerdict tightness_criterion(const PlumbingTree& gamma, Family family);

}  // namespace tightcert
