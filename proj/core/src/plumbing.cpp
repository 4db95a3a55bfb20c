#include "tightcert/plumbing.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tightcert/cf.hpp"

namespace tightcert {

namespace {

std::map<int, int> index_by_id(const PlumbingTree& tree) {
  std::map<int, int> idx;
  for (std::size_t i = 0; i < tree.vertices.size(); ++i) {
    auto [it, fresh] = idx.emplace(tree.vertices[i].id, static_cast<int>(i));
    require(fresh, "duplicate vertex id " + std::to_string(tree.vertices[i].id));
  }
  return idx;
}

std::vector<std::vector<int>> adjacency(const PlumbingTree& tree,
                                        const std::map<int, int>& idx) {
  std::vector<std::vector<int>> adj(tree.vertices.size());
  for (const auto& [a, b] : tree.edges) {
    auto ia = idx.find(a);
    auto ib = idx.find(b);
    require(ia != idx.end() && ib != idx.end(), "edge references unknown vertex id");
    require(a != b, "self-loop edge");
    adj[ia->second].push_back(ib->second);
    adj[ib->second].push_back(ia->second);
  }
  return adj;
}

// Positive continued-fraction terms of a leg (weights <= -2 negated).
CFExpansion leg_terms(const std::vector<Int>& leg_weights) {
  CFExpansion terms;
  terms.reserve(leg_weights.size());
  for (const Int& w : leg_weights) terms.push_back(-w);
  return terms;
}

std::vector<Int> leg_weights(const CFExpansion& terms) {
  std::vector<Int> weights;
  weights.reserve(terms.size());
  for (const Int& t : terms) weights.push_back(-t);
  return weights;
}

std::optional<StarShape> try_star_shape(const PlumbingTree& tree) {
  try {
    return star_shape_of(tree);
  } catch (const input_error&) {
    return std::nullopt;
  }
}

}  // namespace

void validate_tree(const PlumbingTree& tree) {
  require(!tree.vertices.empty(), "tree with no vertices");
  auto idx = index_by_id(tree);
  auto adj = adjacency(tree, idx);
  require(tree.edges.size() + 1 == tree.vertices.size(),
          "edge count does not match a tree");
  // Connectivity; acyclicity then follows from the edge count.
  std::vector<bool> seen(tree.vertices.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        stack.push_back(u);
      }
  }
  require(reached == tree.vertices.size(), "tree is not connected");
}

StarShape star_shape_of(const PlumbingTree& tree) {
  validate_tree(tree);
  auto idx = index_by_id(tree);
  auto adj = adjacency(tree, idx);
  const int n = static_cast<int>(tree.vertices.size());

  int center = -1;
  std::vector<int> high_valency;
  for (int i = 0; i < n; ++i)
    if (adj[i].size() >= 3) high_valency.push_back(i);
  if (high_valency.size() > 1) throw input_error("more than one vertex of valency >= 3");
  if (high_valency.size() == 1) {
    center = high_valency[0];
  } else {
    // Chain: any vertex of weight >= -1 cannot sit on a leg, so it must be
    // the center, and there can be at most one.  Otherwise take the lowest-id
    // endpoint, matching the canonical layout of tree_from_star.
    std::vector<int> heavy;
    for (int i = 0; i < n; ++i)
      if (tree.vertices[i].weight >= -1) heavy.push_back(i);
    if (heavy.size() > 1) throw input_error("chain with multiple weight >= -1 vertices");
    if (heavy.size() == 1) {
      center = heavy[0];
    } else {
      int best = -1;
      for (int i = 0; i < n; ++i) {
        if (adj[i].size() >= 2) continue;
        if (best < 0 || tree.vertices[i].id < tree.vertices[best].id) best = i;
      }
      center = best;
    }
  }

  StarShape star;
  star.center_weight = tree.vertices[center].weight;
  std::vector<std::pair<int, std::vector<Int>>> legs;  // (first vertex id, weights)
  for (int first : adj[center]) {
    std::vector<Int> weights;
    int prev = center;
    int cur = first;
    while (true) {
      require(tree.vertices[cur].weight <= -2,
              "leg vertex with weight >= -1 (id " + std::to_string(tree.vertices[cur].id) + ")");
      weights.push_back(tree.vertices[cur].weight);
      int next = -1;
      for (int u : adj[cur])
        if (u != prev) next = u;
      if (next < 0) break;
      prev = cur;
      cur = next;
    }
    legs.emplace_back(tree.vertices[first].id, std::move(weights));
  }
  std::sort(legs.begin(), legs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [id, weights] : legs) star.legs.push_back(std::move(weights));
  return star;
}

PlumbingTree tree_from_star(const StarShape& star) {
  PlumbingTree tree;
  tree.vertices.push_back({0, star.center_weight});
  int next_id = 1;
  for (const auto& leg : star.legs) {
    int prev = 0;
    for (const Int& w : leg) {
      tree.vertices.push_back({next_id, w});
      tree.edges.emplace_back(prev, next_id);
      prev = next_id;
      ++next_id;
    }
  }
  validate_tree(tree);
  return tree;
}

PlumbingTree star_tree_from_seifert(const SeifertInvariants& si) {
  StarShape star;
  star.center_weight = si.e0;
  for (const Rational& r : si.ratios)
    star.legs.push_back(leg_weights(cf_expand(inverse(r))));
  return tree_from_star(star);
}

SeifertInvariants seifert_from_star_tree(const PlumbingTree& tree) {
  StarShape star = star_shape_of(tree);
  std::vector<Rational> ratios;
  for (const auto& leg : star.legs) ratios.push_back(inverse(cf_eval(leg_terms(leg))));
  return make_seifert(star.center_weight, std::move(ratios));
}

PlumbingTree dual_tree(const PlumbingTree& tree) {
  StarShape star = star_shape_of(tree);
  require(star.center_weight == -1, "dual tree requires center weight -1");
  require(star.legs.size() == 3, "dual tree requires exactly three legs");
  StarShape dual;
  dual.center_weight = -2;
  for (const auto& leg : star.legs)
    dual.legs.push_back(leg_weights(riemenschneider_dual(leg_terms(leg))));
  return tree_from_star(dual);
}

IntersectionLattice intersection_lattice(const PlumbingTree& tree) {
  validate_tree(tree);
  auto idx = index_by_id(tree);
  const int n = static_cast<int>(tree.vertices.size());

  IntersectionLattice lattice;
  lattice.q.assign(n, std::vector<Int>(n, 0));
  lattice.ids.reserve(n);
  for (int i = 0; i < n; ++i) {
    lattice.q[i][i] = tree.vertices[i].weight;
    lattice.ids.push_back(tree.vertices[i].id);
  }
  for (const auto& [a, b] : tree.edges) {
    int ia = idx.at(a);
    int ib = idx.at(b);
    lattice.q[ia][ib] = 1;
    lattice.q[ib][ia] = 1;
  }

  // Determinant by fraction-free (Bareiss) elimination.
  {
    auto m = lattice.q;
    Int sign = 1;
    Int prev = 1;
    bool singular = false;
    for (int k = 0; k < n && !singular; ++k) {
      if (m[k][k] == 0) {
        int r = -1;
        for (int i = k + 1; i < n; ++i)
          if (m[i][k] != 0) {
            r = i;
            break;
          }
        if (r < 0) {
          singular = true;
          break;
        }
        std::swap(m[k], m[r]);
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i) {
        for (int j = k + 1; j < n; ++j)
          m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        m[i][k] = 0;
      }
      prev = m[k][k];
    }
    lattice.det = singular ? Int(0) : sign * m[n - 1][n - 1];
  }

  // Exact signature by rational symmetric congruence diagonalization.
  {
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = Rational(lattice.q[i][j]);
    auto swap_sym = [&](int i, int j) {
      std::swap(a[i], a[j]);
      for (int r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
    };
    for (int i = 0; i < n; ++i) {
      if (a[i][i].is_zero()) {
        int d = -1;
        for (int j = i + 1; j < n; ++j)
          if (!a[j][j].is_zero()) {
            d = j;
            break;
          }
        if (d >= 0) {
          swap_sym(i, d);
        } else {
          // All remaining diagonal entries vanish; a nonzero off-diagonal
          // pair (j,k) yields a nonzero diagonal after adding k into j.
          int pj = -1, pk = -1;
          for (int j = i; j < n && pj < 0; ++j)
            for (int k = j + 1; k < n; ++k)
              if (!a[j][k].is_zero()) {
                pj = j;
                pk = k;
                break;
              }
          if (pj < 0) {
            lattice.n_zero += n - i;
            break;
          }
          for (int r = 0; r < n; ++r) a[pj][r] += a[pk][r];
          for (int r = 0; r < n; ++r) a[r][pj] += a[r][pk];
          if (pj != i) swap_sym(i, pj);
        }
      }
      Rational pivot = a[i][i];
      if (pivot > Rational(0))
        ++lattice.n_pos;
      else
        ++lattice.n_neg;
      for (int j = i + 1; j < n; ++j) {
        if (a[j][i].is_zero()) continue;
        Rational f = a[j][i] / pivot;
        for (int r = 0; r < n; ++r) a[j][r] -= f * a[i][r];
        for (int r = 0; r < n; ++r) a[r][j] -= f * a[r][i];
      }
    }
    ensure(lattice.n_pos + lattice.n_neg + lattice.n_zero == n,
           "signature counts do not sum to the rank");
    ensure((lattice.n_zero == 0) == (lattice.det != 0),
           "signature nullity inconsistent with determinant");
  }
  return lattice;
}

bool is_negative_definite(const IntersectionLattice& lattice) {
  return lattice.n_pos == 0 && lattice.n_zero == 0;
}

std::vector<int> bad_vertices(const PlumbingTree& tree) {
  validate_tree(tree);
  auto idx = index_by_id(tree);
  auto adj = adjacency(tree, idx);
  std::vector<int> bad;
  for (std::size_t i = 0; i < tree.vertices.size(); ++i)
    if (Int(adj[i].size()) > boost::multiprecision::abs(tree.vertices[i].weight))
      bad.push_back(tree.vertices[i].id);
  return bad;
}

std::optional<Int> recognize_torus_knot_surgery(const PlumbingTree& tree) {
  auto star = try_star_shape(tree);
  if (!star || star->center_weight != -1 || star->legs.size() != 3) return std::nullopt;
  // Try each leg as the [-3,-2,...,-2] leg; the other two must then be
  // [-2] and [-2n-3] in some order.
  for (int third = 0; third < 3; ++third) {
    const auto& leg = star->legs[third];
    if (leg[0] != -3) continue;
    bool tail_ok = true;
    for (std::size_t i = 1; i < leg.size(); ++i)
      if (leg[i] != -2) tail_ok = false;
    if (!tail_ok) continue;
    Int n = static_cast<Int>(leg.size());
    for (int swap = 0; swap < 2; ++swap) {
      const auto& first = star->legs[(third + 1 + swap) % 3];
      const auto& second = star->legs[(third + 2 - swap) % 3];
      if (first.size() == 1 && first[0] == -2 && second.size() == 1 &&
          second[0] == -2 * n - 3)
        return n;
    }
  }
  return std::nullopt;
}

PlumbingTree truncate_third_leg(const PlumbingTree& tree) {
  StarShape star = star_shape_of(tree);
  require(star.legs.size() == 3, "third-leg truncation requires exactly three legs");
  std::vector<std::pair<Rational, int>> order;  // (ratio, leg index)
  for (int i = 0; i < 3; ++i)
    order.emplace_back(inverse(cf_eval(leg_terms(star.legs[i]))), i);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  StarShape out;
  out.center_weight = star.center_weight;
  out.legs.push_back(star.legs[order[0].second]);
  out.legs.push_back(star.legs[order[1].second]);
  out.legs.push_back({star.legs[order[2].second].front()});
  return tree_from_star(out);
}

}  // namespace tightcert
