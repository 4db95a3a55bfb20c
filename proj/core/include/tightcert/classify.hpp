#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tightcert/contact.hpp"
#include "tightcert/plumbing.hpp"
#include "tightcert/seifert.hpp"

namespace tightcert {

struct BaseSurface {
  int genus = 0;
  bool orientable = true;
};

// Raw Seifert description: base surface plus unnormalized invariants.
struct SeifertInput {
  BaseSurface base;
  Int e0;
  std::vector<Rational> ratios;
};

// Exactly one of the two variants must be present.
struct ClassifierInput {
  std::optional<SeifertInput> seifert;
  std::optional<PlumbingTree> tree;
};

struct BranchStep {
  std::string rule;    // stable rule code
  std::string detail;  // instance-specific specifics
};

struct Report {
  ClassifierInput input;  // echo of what was asked
  std::optional<SeifertInvariants> normalized;
  std::vector<BranchStep> trace;
  TightnessVerdict verdict;
};

// Decides tightness for the given closed oriented Seifert fibered space.
// Branches, in order: shapes outside the undecided family (base, e0, leg
// count) conclude tight by citation; nonpositive Euler number concludes
// tight by citation; leg expansions outside the surviving pattern (first
// weight 2, second leg head k+2 for the leading-2 run k) conclude tight by
// citation; transversely realizable triples conclude tight by citation;
// otherwise the third leg is truncated to length one and the instance is
// dispatched to the certified criterion for its family, with the
// torus-knot surgeries M_n recognized as the only manifolds with no tight
// structure.  Certificate-bearing verdicts are re-verified before the
// report is returned.
Report classify(const ClassifierInput& input);

// Re-checks a certificate from scratch: embedding pairings, the
// characteristic/signature conditions, cached evaluations, path legality
// and degree constancy, membership of the class restriction in the path,
// and the zero sum d3 + d(-Y).  True only if every check passes.  Requires
// the report to carry a certificate.
bool verify_certificate(const Report& report);

}  // namespace tightcert
