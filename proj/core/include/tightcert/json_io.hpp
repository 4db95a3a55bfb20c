#pragma once

#include <map>
#include <string>

#include "tightcert/classify.hpp"
#include "tightcert/lattice.hpp"

namespace tightcert {

// JSON text interface.  Serializers emit two-space-indented JSON with keys in
// sorted order, so equal values always produce identical bytes.  Integers are
// emitted as JSON numbers when they fit in 64 bits and as decimal strings
// otherwise; parsers accept either form.  Rationals travel as "p/q" strings
// ("p" when integral).  Parsers throw input_error on malformed documents.

std::string seifert_to_json(const SeifertInvariants& y);
SeifertInvariants seifert_from_json(const std::string& text);

// {"base": {"genus": g, "orientable": b}, "e0": n, "ratios": [...]};
// base may be omitted (sphere).
SeifertInput seifert_input_from_json(const std::string& text);

// Emits {"vertices": [{"id", "weight"}...], "edges": [[a, b]...]} plus a
// redundant {"star": {"center", "legs"}} block when the tree is star-shaped.
// Parsing accepts either the vertex/edge form or a bare star block.
std::string tree_to_json(const PlumbingTree& tree);
PlumbingTree tree_from_json(const std::string& text);

std::string char_vector_to_json(const CharVector& k);
CharVector char_vector_from_json(const std::string& text);

std::string path_to_json(const FullPath& path);
FullPath path_from_json(const std::string& text);

// Generator table plus the derived flags: {"det", "moduli", "l_space",
// "total_generators", "classes": [{"class", "generators": [{"degree",
// "representative", "initial_count"}]}], "correction_terms": [...] } with
// correction_terms present only when every class has exactly one generator.
std::string generator_table_to_json(const GeneratorTable& table);

std::string report_to_json(const Report& report);
Report report_from_json(const std::string& text);

}  // namespace tightcert
