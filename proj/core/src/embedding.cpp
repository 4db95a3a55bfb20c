#include "tightcert/embedding.hpp"

#include <algorithm>
#include <optional>

#include "tightcert/cf.hpp"
#include "tightcert/seifert.hpp"

namespace tightcert {

namespace {

HomologyClass unit_e(int idx, int n) {
  HomologyClass c;
  c.e.assign(n, Int(0));
  c.e[idx] = 1;
  return c;
}

// Expected pairing of two vertices on one side: weight on the diagonal, 1 on
// edges, 0 otherwise.
Int side_pairing(const PlumbingTree& tree, int a, int b) {
  if (a == b) {
    for (const auto& v : tree.vertices)
      if (v.id == a) return v.weight;
    throw check_error("vertex id missing from its own tree");
  }
  for (const auto& [x, y] : tree.edges)
    if ((x == a && y == b) || (x == b && y == a)) return 1;
  return 0;
}

std::vector<std::vector<int>> leg_ids_of(const StarShape& shape) {
  std::vector<std::vector<int>> out;
  int next_id = 1;
  for (const auto& leg : shape.legs) {
    std::vector<int> ids;
    for (std::size_t j = 0; j < leg.size(); ++j) ids.push_back(next_id++);
    out.push_back(std::move(ids));
  }
  return out;
}

// Verification shared by the deterministic builder and the fallback: both
// intersection forms reproduced on their own side, zero across sides.
bool model_pairings_ok(const EmbeddingModel& m, std::string* diag) {
  auto check_side = [&](const PlumbingTree& tree, const std::map<int, HomologyClass>& cls,
                        const char* name) {
    for (const auto& [ida, ca] : cls)
      for (const auto& [idb, cb] : cls) {
        Int want = side_pairing(tree, ida, idb);
        Int got = pairing(ca, cb);
        if (got != want) {
          if (diag)
            *diag = std::string(name) + " pairing (" + std::to_string(ida) + "," +
                    std::to_string(idb) + ") = " + got.str() + ", expected " + want.str();
          return false;
        }
      }
    return true;
  };
  if (!check_side(m.gamma, m.gamma_classes, "gamma")) return false;
  if (!check_side(m.gamma_dual, m.dual_classes, "dual")) return false;
  for (const auto& [ida, ca] : m.gamma_classes)
    for (const auto& [idb, cb] : m.dual_classes)
      if (pairing(ca, cb) != 0) {
        if (diag)
          *diag = "cross pairing (" + std::to_string(ida) + "," + std::to_string(idb) +
                  ") nonzero";
        return false;
      }
  return true;
}

struct StarContext {
  StarShape shape;
  PlumbingTree gamma;
  PlumbingTree dual;
  StarShape dual_shape;
  int n_total = 0;  // exceptional classes needed by the blow-up schedule
};

StarContext prepare(const PlumbingTree& gamma_in) {
  StarContext ctx;
  ctx.shape = star_shape_of(gamma_in);
  require(ctx.shape.center_weight == -1, "embedding requires center weight -1");
  require(ctx.shape.legs.size() == 3, "embedding requires exactly three legs");
  ctx.gamma = tree_from_star(ctx.shape);
  require(euler_number(seifert_from_star_tree(ctx.gamma)) > Rational(0),
          "embedding requires positive boundary Euler number");
  ctx.dual = dual_tree(ctx.gamma);
  ctx.dual_shape = star_shape_of(ctx.dual);
  Int n = 4;  // triple point plus one point per line pair
  for (const auto& leg : ctx.shape.legs)
    for (const Int& w : leg) n += -w - 1;
  require(n <= 4096, "embedding too large: ambient rank over 4096");
  ctx.n_total = static_cast<int>(n);
  return ctx;
}

void finalize_model(EmbeddingModel& model, const StarContext& ctx) {
  model.gamma = ctx.gamma;
  model.gamma_dual = ctx.dual;
  model.exceptional_count = ctx.n_total;
  model.gamma_center_id = 0;
  model.dual_center_id = 0;
  model.gamma_leg_ids = leg_ids_of(ctx.shape);
  model.dual_leg_ids = leg_ids_of(ctx.dual_shape);
}

EmbeddingModel corridor_build(const StarContext& ctx) {
  const int n = ctx.n_total;
  EmbeddingModel model;
  finalize_model(model, ctx);

  HomologyClass z = unit_e(0, n);  // center of Gamma
  HomologyClass zp;                // center of the dual tree
  zp.h = 1;
  zp.e.assign(n, Int(0));
  zp.e[1] = zp.e[2] = zp.e[3] = -1;
  model.gamma_classes[0] = z;
  model.dual_classes[0] = zp;

  int next = 4;  // next unused exceptional index
  for (int i = 0; i < 3; ++i) {
    // Corridor for leg pair i: the leg-head line and the exceptional class
    // that joins it to the dual center.
    HomologyClass head;
    head.h = 1;
    head.e.assign(n, Int(0));
    head.e[0] = -1;
    head.e[1 + i] = -1;
    std::vector<HomologyClass> left{head};          // Gamma leg, center outward
    std::vector<HomologyClass> right{unit_e(1 + i, n)};  // dual leg, center outward
    HomologyClass neck;  // empty until the separating blow-up

    auto separate = [&]() {
      left.back().e[next] -= 1;
      right.back().e[next] -= 1;
      neck = unit_e(next, n);
      ++next;
    };
    auto deepen_left = [&]() {
      left.back().e[next] -= 1;
      neck.e[next] -= 1;
      right.push_back(neck);
      neck = unit_e(next, n);
      ++next;
    };
    auto deepen_right = [&]() {
      right.back().e[next] -= 1;
      neck.e[next] -= 1;
      left.push_back(neck);
      neck = unit_e(next, n);
      ++next;
    };

    const auto& weights = ctx.shape.legs[i];
    separate();
    for (Int t = -weights[0] - 2; t > 0; --t) deepen_left();
    for (std::size_t j = 1; j < weights.size(); ++j) {
      deepen_right();
      for (Int t = -weights[j] - 2; t > 0; --t) deepen_left();
    }
    // the final neck is not part of either tree

    ensure(left.size() == ctx.shape.legs[i].size(), "corridor left chain length");
    ensure(right.size() == ctx.dual_shape.legs[i].size(), "corridor right chain length");
    for (std::size_t j = 0; j < left.size(); ++j)
      model.gamma_classes[model.gamma_leg_ids[i][j]] = left[j];
    for (std::size_t j = 0; j < right.size(); ++j)
      model.dual_classes[model.dual_leg_ids[i][j]] = right[j];
  }
  ensure(next == n, "blow-up schedule used an unexpected number of classes");
  return model;
}

// ---- bounded exhaustive fallback ----

struct SearchVertex {
  Side side;
  int id;
  Int weight;
  bool leg_head;  // first vertex of a Gamma leg
  int leg;        // 0..2 for leg vertices, -1 for centers
};

struct Search {
  int n;
  long long budget;
  long long nodes = 0;
  std::vector<SearchVertex> order;
  std::vector<HomologyClass> assigned;
  const PlumbingTree* gamma;
  const PlumbingTree* dual;

  bool pair_ok(std::size_t upto, const HomologyClass& cand) const {
    const SearchVertex& v = order[upto];
    for (std::size_t j = 0; j < upto; ++j) {
      const SearchVertex& u = order[j];
      Int want = 0;
      if (u.side == v.side)
        want = side_pairing(u.side == Side::Gamma ? *gamma : *dual, u.id, v.id);
      if (pairing(assigned[j], cand) != want) return false;
    }
    return pairing(cand, cand) == v.weight;
  }

  bool assign(std::size_t pos) {
    if (pos == order.size()) return true;
    const SearchVertex& v = order[pos];
    // Shapes: leg head i -> h - e_1 - e_{i+1} - (subset); any other non-center
    // vertex -> e_j - (subset).  Subset size is fixed by the square.
    std::vector<int> leads;
    if (v.leg_head)
      leads.push_back(-1);  // no lead choice; base is h - e_1 - e_{leg+1}
    else
      for (int j = 1; j < n; ++j) leads.push_back(j);
    for (int lead : leads) {
      HomologyClass base;
      base.e.assign(n, Int(0));
      if (lead < 0) {
        base.h = 1;
        base.e[0] = -1;
        base.e[1 + v.leg] = -1;
      } else {
        base.e[lead] = 1;
      }
      // both shapes square to -1 - |subset|
      long long subset_size = static_cast<long long>(-v.weight - 1);
      std::vector<int> free;
      for (int j = 4; j < n; ++j)
        if (base.e[j] == 0 && j != lead) free.push_back(j);
      if (subset_size < 0 || subset_size > static_cast<long long>(free.size())) continue;
      std::vector<int> pick(free.size(), 0);
      std::fill(pick.begin(), pick.begin() + subset_size, 1);
      std::sort(pick.begin(), pick.end(), std::greater<int>());
      do {
        if (++nodes > budget) throw check_error("embedding fallback budget exhausted");
        HomologyClass cand = base;
        for (std::size_t j = 0; j < free.size(); ++j)
          if (pick[j]) cand.e[free[j]] -= 1;
        if (!pair_ok(pos, cand)) continue;
        assigned[pos] = cand;
        if (assign(pos + 1)) return true;
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return false;
  }
};

EmbeddingModel fallback_build(const StarContext& ctx, long long budget) {
  require(ctx.n_total <= 14, "embedding fallback capped at ambient rank 14");
  const int n = ctx.n_total;
  EmbeddingModel model;
  finalize_model(model, ctx);

  HomologyClass z = unit_e(0, n);
  HomologyClass zp;
  zp.h = 1;
  zp.e.assign(n, Int(0));
  zp.e[1] = zp.e[2] = zp.e[3] = -1;
  model.gamma_classes[0] = z;
  model.dual_classes[0] = zp;

  Search s;
  s.n = n;
  s.budget = budget;
  s.gamma = &model.gamma;
  s.dual = &model.gamma_dual;
  s.order.push_back({Side::Gamma, 0, Int(-1), false, -1});
  s.order.push_back({Side::GammaDual, 0, Int(-2), false, -1});
  for (int i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < model.gamma_leg_ids[i].size(); ++j)
      s.order.push_back({Side::Gamma, model.gamma_leg_ids[i][j], ctx.shape.legs[i][j],
                         j == 0, i});
    for (std::size_t j = 0; j < model.dual_leg_ids[i].size(); ++j)
      s.order.push_back({Side::GammaDual, model.dual_leg_ids[i][j],
                         ctx.dual_shape.legs[i][j], false, i});
  }
  s.assigned.resize(s.order.size());
  s.assigned[0] = z;
  s.assigned[1] = zp;
  ensure(s.pair_ok(0, z) && s.pair_ok(1, zp), "fixed center classes inconsistent");
  if (!s.assign(2)) throw check_error("embedding fallback found no assignment");

  for (std::size_t j = 2; j < s.order.size(); ++j) {
    if (s.order[j].side == Side::Gamma)
      model.gamma_classes[s.order[j].id] = s.assigned[j];
    else
      model.dual_classes[s.order[j].id] = s.assigned[j];
  }
  return model;
}

// Shared by both class builders: T indexes the exceptional classes meeting
// the third dual leg away from its outermost vertex.
std::vector<bool> third_leg_set(const EmbeddingModel& model) {
  const int n = model.exceptional_count;
  std::vector<bool> t(n, false);
  const auto& leg = model.dual_leg_ids[2];
  for (std::size_t j = 0; j + 1 < leg.size(); ++j) {
    const HomologyClass& u = model.dual_classes.at(leg[j]);
    for (int i = 0; i < n; ++i)
      if (u.e[i] != 0) t[i] = true;
  }
  return t;
}

CharClassC assemble(const EmbeddingModel& model, const std::vector<bool>& s,
                    const std::vector<bool>& t) {
  const int n = model.exceptional_count;
  for (int i = 0; i < n; ++i)
    ensure(!(s[i] && t[i]), "class sets overlap at exceptional index " + std::to_string(i));
  CharClassC c;
  c.pd.h = 1;
  c.pd.e.assign(n, Int(0));
  for (int i = 0; i < n; ++i) c.pd.e[i] = -1 + (s[i] ? 2 : 0) + (t[i] ? 2 : 0);
  for (const auto& [id, cls] : model.gamma_classes) c.gamma_values[id] = pairing(c.pd, cls);
  for (const auto& [id, cls] : model.dual_classes) c.dual_values[id] = pairing(c.pd, cls);
  return c;
}

}  // namespace

Int pairing(const HomologyClass& a, const HomologyClass& b) {
  require(a.e.size() == b.e.size(), "homology classes from different ambient ranks");
  Int acc = a.h * b.h;
  for (std::size_t i = 0; i < a.e.size(); ++i) acc -= a.e[i] * b.e[i];
  return acc;
}

const HomologyClass& EmbeddingModel::class_of(Side side, int vertex_id) const {
  const auto& m = side == Side::Gamma ? gamma_classes : dual_classes;
  auto it = m.find(vertex_id);
  require(it != m.end(), "vertex id " + std::to_string(vertex_id) + " not in the model");
  return it->second;
}

EmbeddingModel embed_union(const PlumbingTree& gamma) {
  StarContext ctx = prepare(gamma);
  EmbeddingModel model = corridor_build(ctx);
  std::string diag;
  if (model_pairings_ok(model, &diag)) return model;
  // Never expected: the schedule is verified above for every accepted input.
  model = fallback_build(ctx, 2'000'000);
  std::string diag2;
  ensure(model_pairings_ok(model, &diag2),
         "embedding verification failed (" + diag + "); fallback also failed (" + diag2 + ")");
  return model;
}

EmbeddingModel embed_union_exhaustive(const PlumbingTree& gamma, long long node_budget) {
  StarContext ctx = prepare(gamma);
  EmbeddingModel model = fallback_build(ctx, node_budget);
  std::string diag;
  ensure(model_pairings_ok(model, &diag), "fallback model failed verification: " + diag);
  return model;
}

CharClassC build_class_c_A(const EmbeddingModel& model, int k) {
  require(k >= 1, "leading-2 count must be at least 1");
  StarShape shape = star_shape_of(model.gamma);
  const auto& l1 = shape.legs[0];
  const auto& l2 = shape.legs[1];
  const auto& l3 = shape.legs[2];
  require(static_cast<int>(l1.size()) >= k, "first leg shorter than k");
  require(l1.size() >= 2, "first leg must have length at least 2");
  for (int j = 0; j < k; ++j)
    require(l1[j] == -2, "first leg must start with k vertices of weight -2");
  if (static_cast<int>(l1.size()) > k)
    require(l1[k] <= -3, "first leg weight after the 2-run must be at least 3");
  require(l2[0] == Int(-k - 2), "second leg must start with weight -(k+2)");
  require(l3.size() == 1, "third leg must be a single vertex");
  require(l3[0] <= Int(-k - 2), "third leg weight must be at least k+2");

  const int n = model.exceptional_count;
  const auto& dual2 = model.dual_leg_ids[1];
  require(static_cast<int>(dual2.size()) >= k, "second dual leg shorter than k");
  std::vector<bool> s(n, false);
  for (int i = 0; i < n; ++i) {
    bool zero_on_first_k = true;
    for (int j = 0; j < k && zero_on_first_k; ++j)
      if (model.dual_classes.at(dual2[j]).e[i] != 0) zero_on_first_k = false;
    if (!zero_on_first_k) continue;
    bool meets_rest = false;
    for (std::size_t j = k; j < dual2.size() && !meets_rest; ++j)
      if (model.dual_classes.at(dual2[j]).e[i] != 0) meets_rest = true;
    s[i] = meets_rest;
  }
  return assemble(model, s, third_leg_set(model));
}

CharClassC build_class_c_B(const EmbeddingModel& model, const Int& s_param, const Int& m) {
  require(s_param >= 0, "2-run length must be nonnegative");
  require(m >= 3, "final second-leg weight must be at least 3");
  StarShape shape = star_shape_of(model.gamma);
  const auto& l1 = shape.legs[0];
  const auto& l2 = shape.legs[1];
  const auto& l3 = shape.legs[2];
  require(l1.size() == 1 && l1[0] == -2, "first leg must be a single -2 vertex");
  require(l2.size() == std::size_t(static_cast<long long>(s_param) + 2),
          "second leg length must be s+2");
  require(l2[0] == -3, "second leg must start with weight -3");
  for (std::size_t j = 1; j + 1 < l2.size(); ++j)
    require(l2[j] == -2, "second leg interior must be -2 vertices");
  require(l2.back() == -m, "second leg must end with weight -m");
  require(l3.size() == 1 && l3[0] == -(2 * s_param + 5),
          "third leg must be a single vertex of weight -(2s+5)");

  const int n = model.exceptional_count;
  const auto& dual2 = model.dual_leg_ids[1];
  require(dual2.size() >= 2, "second dual leg too short");
  std::vector<bool> sp(n, false);
  const HomologyClass& x2p = model.dual_classes.at(dual2[0]);
  const HomologyClass& v = model.dual_classes.at(dual2[1]);
  for (int i = 0; i < n; ++i) {
    if (x2p.e[i] != 0 || v.e[i] != 0) continue;
    bool meets_rest = false;
    for (std::size_t j = 2; j < dual2.size() && !meets_rest; ++j)
      if (model.dual_classes.at(dual2[j]).e[i] != 0) meets_rest = true;
    sp[i] = meets_rest;
  }
  return assemble(model, sp, third_leg_set(model));
}

Int evaluate(const CharClassC& c, const EmbeddingModel& model, Side side, int vertex_id) {
  Int val = pairing(c.pd, model.class_of(side, vertex_id));
  const auto& cache = side == Side::Gamma ? c.gamma_values : c.dual_values;
  auto it = cache.find(vertex_id);
  ensure(it != cache.end() && it->second == val, "cached evaluation out of sync");
  return val;
}

Rational restrict_square(const CharClassC& c, const EmbeddingModel& model, Side side) {
  const PlumbingTree& tree = side == Side::Gamma ? model.gamma : model.gamma_dual;
  const auto& cache = side == Side::Gamma ? c.gamma_values : c.dual_values;
  IntersectionLattice lat = intersection_lattice(tree);
  require(lat.det != 0, "restriction to a side with singular intersection form");
  std::vector<Int> k;
  k.reserve(lat.ids.size());
  for (int id : lat.ids) {
    auto it = cache.find(id);
    require(it != cache.end(), "class not evaluated on vertex " + std::to_string(id));
    k.push_back(it->second);
  }
  auto x = solve_linear_system(lat.q, k);
  Rational acc(0);
  for (std::size_t i = 0; i < k.size(); ++i) acc += Rational(k[i]) * x[i];
  return acc;
}

bool verify_char_and_signature(const CharClassC& c, const EmbeddingModel& model) {
  const int n = model.exceptional_count;
  if (static_cast<int>(c.pd.e.size()) != n) return false;
  if (c.pd.h % 2 == 0) return false;
  for (int i = 0; i < n; ++i)
    if (c.pd.e[i] % 2 == 0) return false;
  for (int i = 0; i < n; ++i)
    if (c.pd.e[i] != 1 && c.pd.e[i] != -1) return false;
  return pairing(c.pd, c.pd) == Int(1 - n);
}

}  // namespace tightcert
