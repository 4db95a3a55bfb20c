#include "tightcert/json_io.hpp"

#include <cstdint>
#include <limits>

#include "json.hpp"

namespace tightcert {

namespace {

using nlohmann::json;

// ---- primitives ------------------------------------------------------------

json int_out(const Int& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() &&
      n <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(n);
  return n.str();
}

Int int_in(const json& j, const char* what) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw input_error(std::string(what) + ": not an integer");
    }
  }
  throw input_error(std::string(what) + ": expected an integer or decimal string");
}

json rational_out(const Rational& r) { return r.str(); }

Rational rational_in(const json& j, const char* what) {
  if (j.is_number_integer()) return Rational(Int(j.get<std::int64_t>()));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw input_error(std::string(what) + ": expected \"p/q\" or an integer");
}

json parse_document(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error("malformed JSON");
  return j;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw input_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int small_int_in(const json& j, const char* what) {
  Int n = int_in(j, what);
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max())
    throw input_error(std::string(what) + ": out of range");
  return static_cast<int>(n);
}

// ---- seifert ---------------------------------------------------------------

json seifert_out(const SeifertInvariants& y) {
  json j;
  j["e0"] = int_out(y.e0);
  json rs = json::array();
  for (const Rational& r : y.ratios) rs.push_back(rational_out(r));
  j["ratios"] = rs;
  return j;
}

SeifertInvariants seifert_in(const json& j) {
  SeifertInvariants y;
  y.e0 = int_in(field(j, "e0"), "e0");
  for (const json& r : field(j, "ratios")) y.ratios.push_back(rational_in(r, "ratio"));
  return make_seifert(y.e0, y.ratios);
}

json seifert_input_out(const SeifertInput& in) {
  json j;
  j["base"] = {{"genus", in.base.genus}, {"orientable", in.base.orientable}};
  j["e0"] = int_out(in.e0);
  json rs = json::array();
  for (const Rational& r : in.ratios) rs.push_back(rational_out(r));
  j["ratios"] = rs;
  return j;
}

SeifertInput seifert_input_in(const json& j) {
  SeifertInput in;
  if (j.contains("base")) {
    const json& b = j.at("base");
    in.base.genus = small_int_in(field(b, "genus"), "genus");
    if (!field(b, "orientable").is_boolean()) throw input_error("orientable: expected a bool");
    in.base.orientable = b.at("orientable").get<bool>();
  }
  in.e0 = int_in(field(j, "e0"), "e0");
  for (const json& r : field(j, "ratios")) in.ratios.push_back(rational_in(r, "ratio"));
  return in;
}

// ---- trees -----------------------------------------------------------------

json tree_out(const PlumbingTree& tree) {
  json j;
  json vs = json::array();
  for (const auto& v : tree.vertices) vs.push_back({{"id", v.id}, {"weight", int_out(v.weight)}});
  j["vertices"] = vs;
  json es = json::array();
  for (const auto& [a, b] : tree.edges) es.push_back(json::array({a, b}));
  j["edges"] = es;
  try {
    StarShape s = star_shape_of(tree);
    json legs = json::array();
    for (const auto& leg : s.legs) {
      json l = json::array();
      for (const Int& w : leg) l.push_back(int_out(w));
      legs.push_back(l);
    }
    j["star"] = {{"center", int_out(s.center_weight)}, {"legs", legs}};
  } catch (const input_error&) {
    // not star-shaped: vertex/edge form only
  }
  return j;
}

PlumbingTree tree_in(const json& j) {
  PlumbingTree tree;
  if (j.contains("vertices")) {
    for (const json& v : j.at("vertices"))
      tree.vertices.push_back({small_int_in(field(v, "id"), "vertex id"),
                               int_in(field(v, "weight"), "vertex weight")});
    if (j.contains("edges"))
      for (const json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw input_error("edge: expected [a, b]");
        tree.edges.emplace_back(small_int_in(e.at(0), "edge end"),
                                small_int_in(e.at(1), "edge end"));
      }
  } else if (j.contains("star")) {
    const json& s = j.at("star");
    StarShape shape;
    shape.center_weight = int_in(field(s, "center"), "star center");
    for (const json& leg : field(s, "legs")) {
      std::vector<Int> weights;
      for (const json& w : leg) weights.push_back(int_in(w, "leg weight"));
      shape.legs.push_back(std::move(weights));
    }
    tree = tree_from_star(shape);
  } else {
    throw input_error("tree: expected \"vertices\"/\"edges\" or \"star\"");
  }
  validate_tree(tree);
  return tree;
}

// ---- lattice vectors and paths ----------------------------------------------

json char_vector_out(const CharVector& k) {
  json j = json::array();
  for (const Int& v : k.values) j.push_back(int_out(v));
  return j;
}

CharVector char_vector_in(const json& j) {
  if (!j.is_array()) throw input_error("vector: expected an array");
  CharVector k;
  for (const json& v : j) k.values.push_back(int_in(v, "vector entry"));
  return k;
}

json path_out(const FullPath& path) {
  json j;
  json steps = json::array();
  for (const CharVector& s : path.steps) steps.push_back(char_vector_out(s));
  j["steps"] = steps;
  j["pushed"] = path.pushed;
  j["degree"] = rational_out(path.degree);
  return j;
}

FullPath path_in(const json& j) {
  FullPath p;
  for (const json& s : field(j, "steps")) p.steps.push_back(char_vector_in(s));
  for (const json& v : field(j, "pushed")) p.pushed.push_back(small_int_in(v, "pushed id"));
  p.degree = rational_in(field(j, "degree"), "degree");
  return p;
}

// ---- embedding model and characteristic class --------------------------------

json homology_class_out(const HomologyClass& c) {
  json j;
  j["h"] = int_out(c.h);
  json e = json::array();
  for (const Int& v : c.e) e.push_back(int_out(v));
  j["e"] = e;
  return j;
}

HomologyClass homology_class_in(const json& j) {
  HomologyClass c;
  c.h = int_in(field(j, "h"), "h");
  for (const json& v : field(j, "e")) c.e.push_back(int_in(v, "e entry"));
  return c;
}

json class_map_out(const std::map<int, HomologyClass>& m) {
  json j = json::object();
  for (const auto& [id, c] : m) j[std::to_string(id)] = homology_class_out(c);
  return j;
}

std::map<int, HomologyClass> class_map_in(const json& j) {
  if (!j.is_object()) throw input_error("classes: expected an object");
  std::map<int, HomologyClass> m;
  for (const auto& [key, val] : j.items()) {
    try {
      m[std::stoi(key)] = homology_class_in(val);
    } catch (const input_error&) {
      throw;
    } catch (const std::exception&) {
      throw input_error("classes: non-integer vertex key");
    }
  }
  return m;
}

json leg_ids_out(const std::vector<std::vector<int>>& legs) {
  json j = json::array();
  for (const auto& leg : legs) j.push_back(leg);
  return j;
}

std::vector<std::vector<int>> leg_ids_in(const json& j) {
  std::vector<std::vector<int>> legs;
  for (const json& leg : j) {
    std::vector<int> ids;
    for (const json& v : leg) ids.push_back(small_int_in(v, "leg id"));
    legs.push_back(std::move(ids));
  }
  return legs;
}

json model_out(const EmbeddingModel& m) {
  json j;
  j["gamma"] = tree_out(m.gamma);
  j["gamma_dual"] = tree_out(m.gamma_dual);
  j["exceptional_count"] = m.exceptional_count;
  j["gamma_classes"] = class_map_out(m.gamma_classes);
  j["dual_classes"] = class_map_out(m.dual_classes);
  j["gamma_center"] = m.gamma_center_id;
  j["dual_center"] = m.dual_center_id;
  j["gamma_legs"] = leg_ids_out(m.gamma_leg_ids);
  j["dual_legs"] = leg_ids_out(m.dual_leg_ids);
  return j;
}

EmbeddingModel model_in(const json& j) {
  EmbeddingModel m;
  m.gamma = tree_in(field(j, "gamma"));
  m.gamma_dual = tree_in(field(j, "gamma_dual"));
  m.exceptional_count = small_int_in(field(j, "exceptional_count"), "exceptional_count");
  m.gamma_classes = class_map_in(field(j, "gamma_classes"));
  m.dual_classes = class_map_in(field(j, "dual_classes"));
  m.gamma_center_id = small_int_in(field(j, "gamma_center"), "gamma_center");
  m.dual_center_id = small_int_in(field(j, "dual_center"), "dual_center");
  m.gamma_leg_ids = leg_ids_in(field(j, "gamma_legs"));
  m.dual_leg_ids = leg_ids_in(field(j, "dual_legs"));
  return m;
}

json value_map_out(const std::map<int, Int>& m) {
  json j = json::object();
  for (const auto& [id, v] : m) j[std::to_string(id)] = int_out(v);
  return j;
}

std::map<int, Int> value_map_in(const json& j) {
  if (!j.is_object()) throw input_error("values: expected an object");
  std::map<int, Int> m;
  for (const auto& [key, val] : j.items()) {
    try {
      m[std::stoi(key)] = int_in(val, "value");
    } catch (const input_error&) {
      throw;
    } catch (const std::exception&) {
      throw input_error("values: non-integer vertex key");
    }
  }
  return m;
}

json class_c_out(const CharClassC& c) {
  json j;
  j["pd"] = homology_class_out(c.pd);
  j["gamma_values"] = value_map_out(c.gamma_values);
  j["dual_values"] = value_map_out(c.dual_values);
  return j;
}

CharClassC class_c_in(const json& j) {
  CharClassC c;
  c.pd = homology_class_in(field(j, "pd"));
  c.gamma_values = value_map_in(field(j, "gamma_values"));
  c.dual_values = value_map_in(field(j, "dual_values"));
  return c;
}

// ---- verdicts, certificates, reports -----------------------------------------

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::TightWithCertificate: return "tight-with-certificate";
    case Outcome::TightByCitation: return "tight-by-citation";
    case Outcome::NoTight: return "no-tight";
    case Outcome::Inconclusive: return "inconclusive";
  }
  throw check_error("unknown outcome");
}

Outcome outcome_in(const std::string& s) {
  if (s == "tight-with-certificate") return Outcome::TightWithCertificate;
  if (s == "tight-by-citation") return Outcome::TightByCitation;
  if (s == "no-tight") return Outcome::NoTight;
  if (s == "inconclusive") return Outcome::Inconclusive;
  throw input_error("unknown outcome \"" + s + "\"");
}

json certificate_out(const TightnessCertificate& cert) {
  json j;
  j["family"] = cert.family == Family::A ? "A" : "B";
  j["model"] = model_out(cert.model);
  j["class"] = class_c_out(cert.c);
  j["path"] = path_out(cert.path);
  j["d3"] = rational_out(cert.d3);
  j["d_minus_y"] = rational_out(cert.d_minus_y);
  return j;
}

TightnessCertificate certificate_in(const json& j) {
  TightnessCertificate cert;
  std::string fam = field(j, "family").get<std::string>();
  if (fam == "A")
    cert.family = Family::A;
  else if (fam == "B")
    cert.family = Family::B;
  else
    throw input_error("unknown family \"" + fam + "\"");
  cert.model = model_in(field(j, "model"));
  cert.c = class_c_in(field(j, "class"));
  cert.path = path_in(field(j, "path"));
  cert.d3 = rational_in(field(j, "d3"), "d3");
  cert.d_minus_y = rational_in(field(j, "d_minus_y"), "d_minus_y");
  return cert;
}

json verdict_out(const TightnessVerdict& v) {
  json j;
  j["outcome"] = outcome_name(v.outcome);
  j["reason"] = v.reason;
  if (v.m_index) j["m_index"] = int_out(*v.m_index);
  if (v.certificate) j["certificate"] = certificate_out(*v.certificate);
  return j;
}

TightnessVerdict verdict_in(const json& j) {
  TightnessVerdict v;
  v.outcome = outcome_in(field(j, "outcome").get<std::string>());
  v.reason = field(j, "reason").get<std::string>();
  if (j.contains("m_index")) v.m_index = int_in(j.at("m_index"), "m_index");
  if (j.contains("certificate")) v.certificate = certificate_in(j.at("certificate"));
  return v;
}

}  // namespace

// ---- public API ---------------------------------------------------------------

std::string seifert_to_json(const SeifertInvariants& y) { return seifert_out(y).dump(2); }

SeifertInvariants seifert_from_json(const std::string& text) {
  return seifert_in(parse_document(text));
}

SeifertInput seifert_input_from_json(const std::string& text) {
  return seifert_input_in(parse_document(text));
}

std::string tree_to_json(const PlumbingTree& tree) { return tree_out(tree).dump(2); }

PlumbingTree tree_from_json(const std::string& text) { return tree_in(parse_document(text)); }

std::string char_vector_to_json(const CharVector& k) { return char_vector_out(k).dump(2); }

CharVector char_vector_from_json(const std::string& text) {
  return char_vector_in(parse_document(text));
}

std::string path_to_json(const FullPath& path) { return path_out(path).dump(2); }

FullPath path_from_json(const std::string& text) { return path_in(parse_document(text)); }

std::string generator_table_to_json(const GeneratorTable& table) {
  json j;
  j["det"] = int_out(table.det);
  json moduli = json::array();
  for (const Int& m : table.moduli) moduli.push_back(int_out(m));
  j["moduli"] = moduli;
  json classes = json::array();
  bool unique = true;
  for (const auto& [cls, gens] : table.by_class) {
    json c;
    json residues = json::array();
    for (const Int& r : cls.residues) residues.push_back(int_out(r));
    c["class"] = residues;
    json gs = json::array();
    for (const Generator& g : gens) {
      gs.push_back({{"degree", rational_out(g.degree)},
                    {"representative", char_vector_out(g.representative)},
                    {"initial_count", g.initial_count}});
    }
    c["generators"] = gs;
    classes.push_back(c);
    if (gens.size() != 1) unique = false;
  }
  j["classes"] = classes;
  j["total_generators"] = table.total_generators();
  Int det_abs = table.det < 0 ? Int(-table.det) : table.det;
  j["l_space"] = Int(table.total_generators()) == det_abs;
  if (unique) {
    json ds = json::array();
    for (const auto& [cls, gens] : table.by_class) {
      json residues = json::array();
      for (const Int& r : cls.residues) residues.push_back(int_out(r));
      ds.push_back({{"class", residues}, {"d", rational_out(gens.front().degree)}});
    }
    j["correction_terms"] = ds;
  }
  return j.dump(2);
}

std::string report_to_json(const Report& report) {
  json j;
  j["schema"] = 1;
  json input = json::object();
  if (report.input.seifert) input["seifert"] = seifert_input_out(*report.input.seifert);
  if (report.input.tree) input["tree"] = tree_out(*report.input.tree);
  j["input"] = input;
  j["normalized"] = report.normalized ? seifert_out(*report.normalized) : json(nullptr);
  json trace = json::array();
  for (const BranchStep& s : report.trace)
    trace.push_back({{"rule", s.rule}, {"detail", s.detail}});
  j["trace"] = trace;
  j["verdict"] = verdict_out(report.verdict);
  j["provenance"] = report.verdict.reason;
  return j.dump(2);
}

Report report_from_json(const std::string& text) {
  json j = parse_document(text);
  Int schema = int_in(field(j, "schema"), "schema");
  if (schema != 1) throw input_error("unsupported schema " + schema.str());
  Report r;
  const json& input = field(j, "input");
  if (input.contains("seifert")) r.input.seifert = seifert_input_in(input.at("seifert"));
  if (input.contains("tree")) r.input.tree = tree_in(input.at("tree"));
  if (j.contains("normalized") && !j.at("normalized").is_null())
    r.normalized = seifert_in(j.at("normalized"));
  if (j.contains("trace"))
    for (const json& s : j.at("trace"))
      r.trace.push_back({field(s, "rule").get<std::string>(),
                         field(s, "detail").get<std::string>()});
  r.verdict = verdict_in(field(j, "verdict"));
  return r;
}

}  // namespace tightcert
