#include "tightcert/classify.hpp"

#include <algorithm>
#include <set>

#include "tightcert/cf.hpp"
#include "tightcert/lattice.hpp"

namespace tightcert {

namespace {

std::string ratios_str(const SeifertInvariants& y) {
  std::string s = "e0=" + y.e0.str() + " ratios=";
  for (std::size_t i = 0; i < y.ratios.size(); ++i)
    s += (i ? "," : "") + y.ratios[i].str();
  return s;
}

std::string leg_str(const std::vector<Int>& weights) {
  std::string s = "[";
  for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + weights[i].str();
  return s + "]";
}

TightnessVerdict cite(const std::string& reason) {
  TightnessVerdict v;
  v.outcome = Outcome::TightByCitation;
  v.reason = reason;
  return v;
}

}  // namespace

Report classify(const ClassifierInput& input) {
  require(input.seifert.has_value() != input.tree.has_value(),
          "exactly one of the seifert and tree input variants must be present");
  Report rep;
  rep.input = input;

  BaseSurface base;
  Int e0;
  std::vector<Rational> raw;
  if (input.tree) {
    StarShape shape = star_shape_of(*input.tree);
    e0 = shape.center_weight;
    for (const auto& leg : shape.legs) {
      CFExpansion terms;
      for (const Int& w : leg) terms.push_back(-w);
      raw.push_back(inverse(cf_eval(terms)));
    }
    rep.trace.push_back({"tree-to-seifert", "center " + e0.str() + ", " +
                                                std::to_string(shape.legs.size()) + " legs"});
  } else {
    base = input.seifert->base;
    e0 = input.seifert->e0;
    raw = input.seifert->ratios;
  }

  if (base.genus != 0 || !base.orientable) {
    rep.trace.push_back({"outside-undecided-family",
                         "base surface is not the 2-sphere (genus " +
                             std::to_string(base.genus) + ", " +
                             (base.orientable ? "orientable" : "non-orientable") + ")"});
    rep.verdict = cite("outside-undecided-family");
    return rep;
  }

  SeifertInvariants y = normalize(e0, raw);
  rep.normalized = y;
  rep.trace.push_back({"normalize", ratios_str(y)});

  const std::size_t k_legs = y.ratios.size();
  if (y.e0 != -1 || k_legs <= 2 || k_legs >= 4) {
    rep.trace.push_back({"outside-undecided-family",
                         "e0 = " + y.e0.str() + ", " + std::to_string(k_legs) +
                             " exceptional fibers"});
    rep.verdict = cite("outside-undecided-family");
    return rep;
  }

  Rational e = euler_number(y);
  if (e.sign() <= 0) {
    rep.trace.push_back({"fillable-euler-nonpositive", "e(Y) = " + e.str()});
    rep.verdict = cite("fillable-euler-nonpositive");
    return rep;
  }

  std::vector<CFExpansion> legs;
  for (const Rational& r : y.ratios) legs.push_back(cf_expand(inverse(r)));
  {
    std::string d;
    for (std::size_t i = 0; i < legs.size(); ++i) {
      std::vector<Int> neg;
      for (const Int& t : legs[i]) neg.push_back(-t);
      d += (i ? " " : "") + leg_str(neg);
    }
    rep.trace.push_back({"sort-expand-legs", d});
  }

  const Int a1 = legs[0][0];
  int k_run = 0;
  for (const Int& t : legs[0]) {
    if (t != 2) break;
    ++k_run;
  }
  const Int b1 = legs[1][0];
  if (a1 >= 3 || b1 != Int(k_run + 2)) {
    rep.trace.push_back({"blowdown-shape", "a1 = " + a1.str() + ", b1 = " + b1.str() +
                                               ", leading-2 run k = " + std::to_string(k_run)});
    rep.verdict = cite("blowdown-shape");
    return rep;
  }

  if (auto w = realizable(y)) {
    rep.trace.push_back({"transverse-realizable",
                         "witness m = " + w->m.str() + ", a = " + w->a.str()});
    rep.verdict = cite("transverse-realizable");
    return rep;
  }

  PlumbingTree gamma = star_tree_from_seifert(y);
  const bool third_leg_was_single = legs[2].size() == 1;
  PlumbingTree trimmed = truncate_third_leg(gamma);
  SeifertInvariants y_trimmed = seifert_from_star_tree(trimmed);
  ensure(euler_number(y_trimmed) > Rational(0),
         "third-leg truncation produced a nonpositive Euler number");
  ensure(!realizable(y_trimmed).has_value(),
         "third-leg truncation produced a realizable triple");
  StarShape shape = star_shape_of(trimmed);
  rep.trace.push_back({"truncate-third-leg", "third leg now [" + shape.legs[2][0].str() + "]"});

  auto finish_with = [&](TightnessVerdict v, bool demote_to_citation) {
    if (v.outcome == Outcome::TightWithCertificate && demote_to_citation)
      v.outcome = Outcome::TightByCitation;
    rep.verdict = std::move(v);
    if (rep.verdict.certificate)
      ensure(verify_certificate(rep), "issued certificate failed re-verification");
    return rep;
  };

  if (shape.legs[0].size() > 1) {
    rep.trace.push_back({"family-a-criterion", "first leg length " +
                                                   std::to_string(shape.legs[0].size())});
    return finish_with(tightness_criterion(trimmed, Family::A), false);
  }

  // First leg [-2]: second leg starts with -3; s is its trailing-2 run.
  const auto& l2 = shape.legs[1];
  std::size_t s = 0;
  while (1 + s < l2.size() && l2[1 + s] == -2) ++s;
  const Int c1 = -shape.legs[2][0];
  if (c1 != Int(2 * s + 5)) {
    rep.trace.push_back({"gamma-mismatch", "c1 = " + c1.str() + ", 2s+5 = " +
                                               std::to_string(2 * s + 5)});
    rep.verdict = cite("gamma-mismatch");
    return rep;
  }

  const std::size_t n2 = l2.size();
  if (n2 == s + 1) {
    auto idx = recognize_torus_knot_surgery(trimmed);
    ensure(idx.has_value() && *idx == Int(s + 1),
           "all-2 second-leg tail did not recognize as a torus-knot surgery");
    rep.trace.push_back({"recognize-torus-knot-surgery", "index n = " + idx->str()});
    if (third_leg_was_single) {
      TightnessVerdict v;
      v.outcome = Outcome::NoTight;
      v.reason = "torus-knot-surgery";
      v.m_index = *idx;
      rep.verdict = std::move(v);
      return rep;
    }
    rep.trace.push_back({"truncation-changed-manifold",
                         "original third leg longer than 1: surgery coefficient not an integer"});
    rep.verdict = cite("truncation-changed-manifold");
    return rep;
  }

  if (n2 > s + 2) {
    StarShape reduced = shape;
    reduced.legs[1].assign(l2.begin(), l2.begin() + static_cast<long>(s) + 2);
    rep.trace.push_back({"reduce-second-leg", "second leg cut to " + leg_str(reduced.legs[1])});
    PlumbingTree gamma_reduced = tree_from_star(reduced);
    SeifertInvariants y_reduced = seifert_from_star_tree(gamma_reduced);
    ensure(euler_number(y_reduced) > Rational(0),
           "second-leg reduction produced a nonpositive Euler number");
    ensure(!realizable(y_reduced).has_value(),
           "second-leg reduction produced a realizable triple");
    rep.trace.push_back({"family-b-criterion", "on the reduced tree"});
    return finish_with(tightness_criterion(gamma_reduced, Family::B), true);
  }

  rep.trace.push_back({"family-b-criterion", "second leg " + leg_str(l2)});
  return finish_with(tightness_criterion(trimmed, Family::B), false);
}

bool verify_certificate(const Report& report) {
  require(report.verdict.certificate.has_value(), "report carries no certificate");
  const TightnessCertificate& cert = *report.verdict.certificate;
  try {
    const EmbeddingModel& m = cert.model;
    validate_tree(m.gamma);
    validate_tree(m.gamma_dual);

    // the certificate must belong to this report's manifold: re-derive the
    // truncated tree from the echoed input and compare shapes
    SeifertInvariants y;
    if (report.input.seifert && !report.input.tree) {
      const SeifertInput& si = *report.input.seifert;
      if (si.base.genus != 0 || !si.base.orientable) return false;
      y = normalize(si.e0, si.ratios);
    } else if (report.input.tree && !report.input.seifert) {
      SeifertInvariants raw = seifert_from_star_tree(*report.input.tree);
      y = normalize(raw.e0, raw.ratios);
    } else {
      return false;
    }
    if (!report.normalized || *report.normalized != y) return false;
    StarShape expect = star_shape_of(truncate_third_leg(star_tree_from_seifert(y)));
    StarShape got = star_shape_of(m.gamma);
    if (expect.legs.size() != 3 || got.legs.size() != 3) return false;
    if (got.center_weight != expect.center_weight) return false;
    if (got.legs[0] != expect.legs[0] || got.legs[2] != expect.legs[2]) return false;
    if (report.verdict.outcome == Outcome::TightWithCertificate) {
      if (got.legs[1] != expect.legs[1]) return false;
    } else if (report.verdict.outcome == Outcome::TightByCitation) {
      // reduced-companion certificate: second leg a proper prefix
      if (cert.family != Family::B) return false;
      if (got.legs[1].size() >= expect.legs[1].size()) return false;
      if (!std::equal(got.legs[1].begin(), got.legs[1].end(), expect.legs[1].begin()))
        return false;
    } else {
      return false;
    }
    if ((cert.family == Family::A) != (got.legs[0].size() > 1)) return false;
    const char* want_reason =
        cert.family == Family::A ? "family-a-certificate" : "family-b-certificate";
    if (report.verdict.reason != want_reason) return false;

    auto check_side = [&](const PlumbingTree& tree, const std::map<int, HomologyClass>& cls) {
      std::set<std::pair<int, int>> edges;
      for (const auto& [a, b] : tree.edges) {
        edges.insert({a, b});
        edges.insert({b, a});
      }
      for (const auto& v : tree.vertices)
        if (!cls.count(v.id)) return false;
      for (const auto& [ida, ca] : cls) {
        if (static_cast<int>(ca.e.size()) != m.exceptional_count) return false;
        for (const auto& [idb, cb] : cls) {
          Int want = 0;
          if (ida == idb) {
            for (const auto& v : tree.vertices)
              if (v.id == ida) want = v.weight;
          } else if (edges.count({ida, idb})) {
            want = 1;
          }
          if (pairing(ca, cb) != want) return false;
        }
      }
      return true;
    };
    if (!check_side(m.gamma, m.gamma_classes)) return false;
    if (!check_side(m.gamma_dual, m.dual_classes)) return false;
    for (const auto& [ida, ca] : m.gamma_classes)
      for (const auto& [idb, cb] : m.dual_classes)
        if (pairing(ca, cb) != 0) return false;

    if (!verify_char_and_signature(cert.c, m)) return false;
    for (const auto& v : m.gamma.vertices)
      evaluate(cert.c, m, Side::Gamma, v.id);  // throws on cache desync
    for (const auto& v : m.gamma_dual.vertices)
      evaluate(cert.c, m, Side::GammaDual, v.id);

    IntersectionLattice side_g = intersection_lattice(m.gamma);
    int b2_g = static_cast<int>(side_g.q.size());
    int sigma_g = side_g.n_pos - side_g.n_neg;
    if (d3_from_restriction(restrict_square(cert.c, m, Side::Gamma), sigma_g, b2_g) != cert.d3)
      return false;

    IntersectionLattice side_d = intersection_lattice(m.gamma_dual);
    const std::size_t n = side_d.q.size();
    const FullPath& path = cert.path;
    if (path.steps.empty() || path.steps.size() != path.pushed.size() + 1) return false;
    if (path.degree != cert.d_minus_y) return false;
    for (const CharVector& stepv : path.steps) {
      if (stepv.values.size() != n) return false;
      if (!is_characteristic(side_d, stepv)) return false;
      for (std::size_t i = 0; i < n; ++i)
        if (stepv.values[i] < side_d.q[i][i] || stepv.values[i] > -side_d.q[i][i])
          return false;
      if (degree(side_d, stepv) != cert.d_minus_y) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (path.steps.front().values[i] == side_d.q[i][i]) return false;   // not initial
      if (path.steps.back().values[i] == -side_d.q[i][i]) return false;   // not terminal
    }
    for (std::size_t i = 0; i + 1 < path.steps.size(); ++i)
      if (push(side_d, path.steps[i], path.pushed[i]) != path.steps[i + 1]) return false;

    CharVector restriction;
    for (int id : side_d.ids) restriction.values.push_back(cert.c.dual_values.at(id));
    if (std::find(path.steps.begin(), path.steps.end(), restriction) == path.steps.end())
      return false;

    return cert.d3 + cert.d_minus_y == Rational(0);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace tightcert
