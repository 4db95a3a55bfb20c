#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "tightcert/errors.hpp"
#include "tightcert/lattice.hpp"
#include "tightcert/plumbing.hpp"

using namespace tightcert;
using tightcert::testing::exhaustive_generator_oracle;
using tightcert::testing::OracleGenerator;

namespace {

PlumbingTree chain(std::vector<Int> weights) {
  PlumbingTree t;
  for (std::size_t i = 0; i < weights.size(); ++i)
    t.vertices.push_back({static_cast<int>(i), weights[i]});
  for (std::size_t i = 0; i + 1 < weights.size(); ++i)
    t.edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
  return t;
}

PlumbingTree star(Int center, std::vector<std::vector<Int>> legs) {
  return tree_from_star(StarShape{std::move(center), std::move(legs)});
}

CharVector vec(std::initializer_list<long long> xs) {
  CharVector k;
  for (long long x : xs) k.values.emplace_back(x);
  return k;
}

// the small negative definite trees most tests sweep over
std::vector<PlumbingTree> sweep_trees() {
  std::vector<PlumbingTree> out;
  std::vector<std::vector<Int>> acc{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::vector<Int>> next;
    for (const auto& t : acc)
      for (int w = -4; w <= -2; ++w) {
        auto u = t;
        u.emplace_back(w);
        next.push_back(std::move(u));
      }
    for (const auto& ws : next) out.push_back(chain(ws));
    acc = std::move(next);
  }
  out.push_back(star(-2, {{-2}, {-2}, {-2}}));
  out.push_back(star(-3, {{-2}, {-2}, {-2}}));
  return out;
}

std::vector<OracleGenerator> flatten(const GeneratorTable& table) {
  std::vector<OracleGenerator> out;
  for (const auto& [cls, gens] : table.by_class)
    for (const Generator& g : gens) out.push_back({g.degree, g.initial_count});
  std::sort(out.begin(), out.end(), [](const OracleGenerator& a, const OracleGenerator& b) {
    return a.degree == b.degree ? a.initial_count < b.initial_count : a.degree < b.degree;
  });
  return out;
}

// every characteristic vector with coordinates in [diag, -diag]
std::vector<CharVector> char_box(const IntersectionLattice& l) {
  std::vector<CharVector> acc{CharVector{}};
  for (std::size_t i = 0; i < l.q.size(); ++i) {
    std::vector<CharVector> next;
    for (const CharVector& k : acc)
      for (Int v = l.q[i][i]; v <= -l.q[i][i]; v += 2) {
        CharVector u = k;
        u.values.push_back(v);
        next.push_back(std::move(u));
      }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("push mechanics on a two-vertex chain") {
    IntersectionLattice l = intersection_lattice(chain({-2, -2}));
    CHECK(is_characteristic(l, vec({2, 0})));
    CHECK_FALSE(is_characteristic(l, vec({1, 0})));

    CharVector after = push(l, vec({2, 0}), 0);
    CHECK(after == vec({-2, 2}));
    CHECK(push(l, after, 1) == vec({0, -2}));
    // a push fires only at value exactly -v.v
    CHECK_THROWS_AS(push(l, vec({0, 0}), 0), input_error);
    CHECK_THROWS_AS(push(l, vec({2, 0}), 5), input_error);
  }

  TEST_CASE("generator tables match the exhaustive oracle") {
    for (const PlumbingTree& t : sweep_trees()) {
      IntersectionLattice l = intersection_lattice(t);
      GeneratorTable table = enumerate_generators(l);
      std::vector<OracleGenerator> got = flatten(table);
      std::vector<OracleGenerator> want = exhaustive_generator_oracle(l);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].degree == want[i].degree);
        CHECK(got[i].initial_count == want[i].initial_count);
      }
    }
  }

  TEST_CASE("pinned tables of familiar spaces") {
    // L(2,1)
    GeneratorTable lens = enumerate_generators(intersection_lattice(chain({-2})));
    CHECK(lens.det == -2);
    CHECK(lens.total_generators() == 2);
    std::multiset<Rational> degrees;
    for (const auto& [cls, gens] : lens.by_class)
      for (const Generator& g : gens) degrees.insert(g.degree);
    CHECK(degrees == std::multiset<Rational>{Rational(-1, 4), Rational(1, 4)});
    CHECK(is_L_space(intersection_lattice(chain({-2}))));

    // E8 bounds the Poincare sphere: one tower, top degree 2
    PlumbingTree e8 = star(-2, {{-2}, {-2, -2}, {-2, -2, -2, -2}});
    GeneratorTable p = enumerate_generators(intersection_lattice(e8));
    CHECK(p.det == 1);
    REQUIRE(p.total_generators() == 1);
    CHECK(p.by_class.begin()->second[0].degree == Rational(2));
    auto d = correction_terms(intersection_lattice(e8));
    REQUIRE(d.size() == 1);
    CHECK(d.begin()->second == Rational(2));

    // the (2,3,7) Brieskorn sphere is not an L-space: two classes over one
    // spin^c structure
    PlumbingTree b237 = star(-1, {{-2}, {-3}, {-7}});
    GeneratorTable q = enumerate_generators(intersection_lattice(b237));
    CHECK(q.det == 1);
    CHECK(q.total_generators() == 2);
    CHECK_FALSE(is_L_space(intersection_lattice(b237)));
    CHECK_THROWS_AS(correction_terms(intersection_lattice(b237)), input_error);

    // D4: four spin^c structures, degrees 1,0,0,0
    GeneratorTable d4 = enumerate_generators(intersection_lattice(star(-2, {{-2}, {-2}, {-2}})));
    CHECK(d4.det == 4);
    CHECK(d4.total_generators() == 4);
    std::multiset<Rational> d4deg;
    for (const auto& [cls, gens] : d4.by_class)
      for (const Generator& g : gens) d4deg.insert(g.degree);
    CHECK(d4deg == std::multiset<Rational>{Rational(0), Rational(0), Rational(0), Rational(1)});
  }

  TEST_CASE("box covers each spin^c class and counts match the determinant") {
    for (const PlumbingTree& t : sweep_trees()) {
      IntersectionLattice l = intersection_lattice(t);
      std::set<SpinCClass> seen;
      for (const CharVector& k : char_box(l)) seen.insert(spinc_class(l, k));
      CHECK(Int(static_cast<long long>(seen.size())) == boost::multiprecision::abs(l.det));
    }
  }

  TEST_CASE("witness paths are legal, degree-constant push sequences") {
    for (const PlumbingTree& t : sweep_trees()) {
      IntersectionLattice l = intersection_lattice(t);
      GeneratorTable table = enumerate_generators(l);
      for (const auto& [cls, gens] : table.by_class)
        for (const Generator& g : gens) {
          const FullPath& path = g.witness;
          REQUIRE(!path.steps.empty());
          CHECK(path.steps.size() == path.pushed.size() + 1);
          CHECK(path.degree == g.degree);
          for (const CharVector& step : path.steps) {
            CHECK(is_characteristic(l, step));
            CHECK(degree(l, step) == g.degree);
          }
          for (std::size_t i = 0; i < path.pushed.size(); ++i)
            CHECK(push(l, path.steps[i], path.pushed[i]) == path.steps[i + 1]);
          // endpoints: initial has no value at the diagonal, terminal none at
          // its negative
          for (std::size_t i = 0; i < l.q.size(); ++i) {
            CHECK(path.steps.front().values[i] != l.q[i][i]);
            CHECK(path.steps.back().values[i] != -l.q[i][i]);
          }
          CHECK(spinc_class(l, path.steps.front()) == cls);
          CHECK(spinc_class(l, g.representative) == cls);
        }
    }
  }

  TEST_CASE("a coordinate above the box kills every path") {
    for (const PlumbingTree& t : sweep_trees()) {
      IntersectionLattice l = intersection_lattice(t);
      if (l.q.size() > 2) continue;
      for (CharVector k : char_box(l)) {
        for (std::size_t i = 0; i < l.q.size(); ++i) {
          CharVector out = k;
          out.values[i] = -l.q[i][i] + 2;
          CHECK_FALSE(find_full_path_through(l, out).has_value());
        }
      }
    }
  }

  TEST_CASE("full path lookup through a mid-path vector") {
    IntersectionLattice l = intersection_lattice(chain({-3, -2}));
    GeneratorTable table = enumerate_generators(l);
    for (const auto& [cls, gens] : table.by_class)
      for (const Generator& g : gens)
        for (const CharVector& step : g.witness.steps) {
          auto path = find_full_path_through(l, step);
          REQUIRE(path.has_value());
          CHECK(path->degree == g.degree);
          CHECK(std::find(path->steps.begin(), path->steps.end(), step) != path->steps.end());
        }
  }

  TEST_CASE("degrees are invariant under relabeling") {
    PlumbingTree t = star(-3, {{-2}, {-2}, {-2}});
    PlumbingTree r = t;
    for (auto& v : r.vertices) v.id = 9 - 2 * v.id;
    for (auto& [a, b] : r.edges) {
      a = 9 - 2 * a;
      b = 9 - 2 * b;
    }
    std::reverse(r.vertices.begin(), r.vertices.end());
    auto got = flatten(enumerate_generators(intersection_lattice(r)));
    auto want = flatten(enumerate_generators(intersection_lattice(t)));
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].degree == want[i].degree);
      CHECK(got[i].initial_count == want[i].initial_count);
    }
  }

  TEST_CASE("degree denominators divide four times the determinant") {
    for (const PlumbingTree& t : sweep_trees()) {
      IntersectionLattice l = intersection_lattice(t);
      Int four_det = 4 * boost::multiprecision::abs(l.det);
      for (const auto& [cls, gens] : enumerate_generators(l).by_class)
        for (const Generator& g : gens) CHECK(four_det % g.degree.den() == 0);
    }
  }

  TEST_CASE("enumeration rejects unsuitable lattices") {
    // not negative definite
    CHECK_THROWS_AS(enumerate_generators(intersection_lattice(star(-1, {{-2}, {-2}, {-2}}))),
                    input_error);
    // state space too large
    std::vector<Int> long_chain(40, Int(-2));
    CHECK_THROWS_AS(enumerate_generators(intersection_lattice(chain(long_chain))), input_error);
  }
}
