#include "tightcert/contact.hpp"

#include "tightcert/cf.hpp"
#include "tightcert/seifert.hpp"

namespace tightcert {

namespace {

// Signature of a symmetric integer matrix by rational congruence; mirrors
// the intersection-lattice computation but for standalone linking matrices.
std::pair<int, int> symmetric_signature(std::vector<std::vector<Rational>> a) {
  const int n = static_cast<int>(a.size());
  int pos = 0, neg = 0;
  for (int t = 0; t < n; ++t) {
    if (a[t][t].is_zero()) {
      int swap_row = -1;
      for (int j = t + 1; j < n && swap_row < 0; ++j)
        if (!a[j][j].is_zero()) swap_row = j;
      if (swap_row >= 0) {
        std::swap(a[t], a[swap_row]);
        for (int i = 0; i < n; ++i) std::swap(a[i][t], a[i][swap_row]);
      } else {
        int k = -1;
        for (int j = t + 1; j < n && k < 0; ++j)
          if (!a[t][j].is_zero()) k = j;
        if (k < 0) continue;  // zero row from t on: zero eigenvalue
        for (int i = 0; i < n; ++i) a[t][i] += a[k][i];
        for (int i = 0; i < n; ++i) a[i][t] += a[i][k];
      }
    }
    if (a[t][t].is_zero()) continue;
    if (a[t][t].sign() > 0)
      ++pos;
    else
      ++neg;
    for (int i = t + 1; i < n; ++i) {
      if (a[i][t].is_zero()) continue;
      Rational f = a[i][t] / a[t][t];
      for (int j = 0; j < n; ++j) a[i][j] -= f * a[t][j];
      for (int j = 0; j < n; ++j) a[j][i] -= f * a[j][t];
    }
  }
  return {pos, neg};
}

void validate_presentation(const SurgeryPresentation& p) {
  const std::size_t n = p.components.size();
  require(p.linking.size() == n, "linking matrix size does not match component count");
  for (std::size_t i = 0; i < n; ++i) {
    require(p.linking[i].size() == n, "linking matrix is not square");
    require(p.components[i].contact_coeff == 1 || p.components[i].contact_coeff == -1,
            "contact coefficient must be +1 or -1");
    require(p.linking[i][i] == p.components[i].tb + p.components[i].contact_coeff,
            "diagonal entry differs from smooth framing tb + coeff at component " +
                std::to_string(i));
    for (std::size_t j = 0; j < n; ++j)
      require(p.linking[i][j] == p.linking[j][i], "linking matrix not symmetric");
  }
}

}  // namespace

Int rot_from_cusps(const Int& up, const Int& down) {
  require(up >= 0 && down >= 0, "cusp counts must be nonnegative");
  require(up + down >= 2, "a front has at least two cusps");
  require((up + down) % 2 == 0, "total cusp count must be even");
  return (down - up) / 2;
}

NegSurgeryExpansion expand_negative_contact_surgery(const Rational& r) {
  require(r.sign() < 0, "contact surgery coefficient must be negative");
  require(r < Rational(-1), "no expansion with all terms <= -2 exists on [-1, 0)");
  CFExpansion positive = cf_expand(-r);
  NegSurgeryExpansion out;
  out.terms.reserve(positive.size());
  out.stabilizations.reserve(positive.size());
  for (const Int& t : positive) {
    out.terms.push_back(-t);
    out.stabilizations.push_back(t - 2);  // |(-t) + 2| with t >= 2
  }
  return out;
}

Rational d3_from_diagram(const SurgeryPresentation& p) {
  validate_presentation(p);
  const int n = static_cast<int>(p.components.size());
  if (n == 0) return Rational(0);

  std::vector<Int> rot;
  rot.reserve(n);
  int q = 0;
  for (const auto& comp : p.components) {
    rot.push_back(comp.rot);
    if (comp.contact_coeff == 1) ++q;
  }
  auto x = solve_linear_system(p.linking, rot);  // rejects singular linking
  Rational alpha_sq(0);
  for (int i = 0; i < n; ++i) alpha_sq += Rational(rot[i]) * x[i];

  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = Rational(p.linking[i][j]);
  auto [pos, neg] = symmetric_signature(std::move(a));
  ensure(pos + neg == n, "nonsingular linking matrix with a zero eigenvalue");
  int sigma = pos - neg;

  return (alpha_sq - Rational(3 * sigma) - Rational(2 * n)) / Rational(4) + Rational(q);
}

Rational d3_from_restriction(const Rational& c_square, int sigma, int b2) {
  return (c_square - Rational(3 * sigma) - Rational(2 * b2)) / Rational(4) + Rational(1);
}

TightnessVerdict tightness_criterion(const PlumbingTree& gamma_in, Family family) {
  StarShape shape = star_shape_of(gamma_in);
  require(shape.center_weight == -1, "criterion requires center weight -1");
  require(shape.legs.size() == 3, "criterion requires exactly three legs");
  PlumbingTree gamma = tree_from_star(shape);
  SeifertInvariants y = seifert_from_star_tree(gamma);
  require(euler_number(y) > Rational(0), "criterion requires positive Euler number");
  require(!realizable(y).has_value(),
          "criterion requires absence of transverse realizability");

  EmbeddingModel model = embed_union(gamma);
  CharClassC c;
  if (family == Family::A) {
    int k = 0;
    for (const Int& w : shape.legs[0]) {
      if (w != -2) break;
      ++k;
    }
    c = build_class_c_A(model, k);
  } else {
    Int s = Int(shape.legs[1].size()) - 2;
    require(s >= 0, "second leg too short for the family");
    c = build_class_c_B(model, s, -shape.legs[1].back());
  }

  auto inconclusive = [&](const std::string& why) {
    TightnessVerdict v;
    v.outcome = Outcome::Inconclusive;
    v.reason = why;
    return v;
  };

  if (!verify_char_and_signature(c, model))
    return inconclusive("class failed the characteristic/signature verification");

  IntersectionLattice side_g = intersection_lattice(model.gamma);
  int b2_g = static_cast<int>(side_g.q.size());
  int sigma_g = side_g.n_pos - side_g.n_neg;
  ensure(side_g.n_pos == 1 && side_g.n_zero == 0,
         "positive Euler number without b2+ = 1 on the tree side");
  Rational c_sq_g = restrict_square(c, model, Side::Gamma);
  Rational d3 = d3_from_restriction(c_sq_g, sigma_g, b2_g);
  ensure(d3 == (c_sq_g - Rational(sigma_g)) / Rational(4),
         "restriction formula inconsistent with b2+ = 1");

  IntersectionLattice side_d = intersection_lattice(model.gamma_dual);
  try {
    if (!is_L_space(side_d))
      return inconclusive("dual side is not an L-space");
  } catch (const input_error& e) {
    return inconclusive(std::string("dual-side generator enumeration rejected: ") + e.what());
  }

  CharVector restriction;
  restriction.values.reserve(side_d.ids.size());
  for (int id : side_d.ids) restriction.values.push_back(c.dual_values.at(id));
  auto path = find_full_path_through(side_d, restriction);
  if (!path) return inconclusive("dual restriction of the class lies on no full path");

  Rational c_sq_d = restrict_square(c, model, Side::GammaDual);
  Rational d_minus_y = path->degree;
  if (d_minus_y != (c_sq_d + Rational(Int(side_d.q.size()))) / Rational(4))
    return inconclusive("path degree disagrees with the dual restriction square");
  if (d3 + d_minus_y != Rational(0))
    return inconclusive("d3 + d(-Y) != 0 for the constructed class");

  TightnessVerdict v;
  v.outcome = Outcome::TightWithCertificate;
  v.reason = family == Family::A ? "family-a-certificate" : "family-b-certificate";
  TightnessCertificate cert;
  cert.family = family;
  cert.model = std::move(model);
  cert.c = std::move(c);
  cert.path = std::move(*path);
  cert.d3 = d3;
  cert.d_minus_y = d_minus_y;
  v.certificate = std::move(cert);
  return v;
}

}  // namespace tightcert
