#include "doctest.h"

#include <algorithm>
#include <vector>

#include "oracles.hpp"
#include "tightcert/errors.hpp"
#include "tightcert/plumbing.hpp"

using namespace tightcert;
using tightcert::testing::family_b_sweep;
using tightcert::testing::torus_knot_surgery_tree;

namespace {

PlumbingTree relabel(const PlumbingTree& tree, int mul, int add) {
  PlumbingTree out = tree;
  for (auto& v : out.vertices) v.id = v.id * mul + add;
  for (auto& [a, b] : out.edges) {
    a = a * mul + add;
    b = b * mul + add;
  }
  std::reverse(out.vertices.begin(), out.vertices.end());
  std::reverse(out.edges.begin(), out.edges.end());
  return out;
}

StarShape shape(Int center, std::vector<std::vector<Int>> legs) {
  return StarShape{std::move(center), std::move(legs)};
}

}  // namespace

TEST_SUITE("plumbing") {
  TEST_CASE("validate_tree rejects malformed input") {
    CHECK_THROWS_AS(validate_tree(PlumbingTree{}), input_error);
    PlumbingTree dup{{{0, -2}, {0, -3}}, {{0, 0}}};
    CHECK_THROWS_AS(validate_tree(dup), input_error);
    PlumbingTree cycle{{{0, -2}, {1, -2}, {2, -2}}, {{0, 1}, {1, 2}, {2, 0}}};
    CHECK_THROWS_AS(validate_tree(cycle), input_error);
    PlumbingTree split{{{0, -2}, {1, -2}, {2, -2}}, {{0, 1}}};
    CHECK_THROWS_AS(validate_tree(split), input_error);
    PlumbingTree stranger{{{0, -2}, {1, -2}}, {{0, 2}}};
    CHECK_THROWS_AS(validate_tree(stranger), input_error);
    PlumbingTree loop{{{0, -2}}, {{0, 0}}};
    CHECK_THROWS_AS(validate_tree(loop), input_error);
  }

  TEST_CASE("star round trips") {
    std::vector<StarShape> shapes{
        shape(-1, {{-2}, {-3}, {-5}}),
        shape(-1, {{-2}, {-3, -2}, {-7, -2}}),
        shape(-2, {{-2, -2}, {-2, -2}, {-2, -2, -2, -2}}),
        shape(0, {{-4, -2, -3}}),
        shape(-3, {}),
    };
    for (const StarShape& s : shapes) {
      PlumbingTree t = tree_from_star(s);
      validate_tree(t);
      CHECK(star_shape_of(t) == s);
    }
    // a chain with every weight <= -2 reads from its lowest-id endpoint
    PlumbingTree chain{{{4, -3}, {7, -2}, {9, -4}}, {{7, 4}, {7, 9}}};
    CHECK(star_shape_of(chain) == shape(-3, {{-2, -4}}));
  }

  TEST_CASE("star_shape_of rejects non-star trees") {
    // two vertices of valency 3
    PlumbingTree two_centers{
        {{0, -1}, {1, -2}, {2, -2}, {3, -1}, {4, -2}, {5, -2}, {6, -2}},
        {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {3, 5}, {5, 6}}};
    CHECK_THROWS_AS(star_shape_of(two_centers), input_error);
    // a leg vertex of weight -1
    PlumbingTree bad_leg{{{0, -1}, {1, -1}, {2, -2}, {3, -2}}, {{0, 1}, {0, 2}, {0, 3}}};
    CHECK_THROWS_AS(star_shape_of(bad_leg), input_error);
  }

  TEST_CASE("seifert description round trips through the star tree") {
    SeifertInvariants y = make_seifert(-1, {Rational(1, 2), Rational(2, 5), Rational(2, 13)});
    PlumbingTree t = star_tree_from_seifert(y);
    CHECK(star_shape_of(t) == shape(-1, {{-2}, {-3, -2}, {-7, -2}}));
    CHECK(seifert_from_star_tree(t) == y);
  }

  TEST_CASE("dual of the smallest surgery plumbing is E8") {
    PlumbingTree d = dual_tree(torus_knot_surgery_tree(1));
    CHECK(d.vertices.size() == 8);
    for (const auto& v : d.vertices)
      if (v.id != 0) CHECK(v.weight == -2);
    CHECK(star_shape_of(d) == shape(-2, {{-2}, {-2, -2}, {-2, -2, -2, -2}}));
    IntersectionLattice l = intersection_lattice(d);
    CHECK(l.det == 1);
    CHECK(l.n_neg == 8);
    CHECK(is_negative_definite(l));
  }

  TEST_CASE("dual boundary has the same homology order") {
    for (const PlumbingTree& t : family_b_sweep()) {
      Int det = intersection_lattice(t).det;
      Int dual_det = intersection_lattice(dual_tree(t)).det;
      CHECK(boost::multiprecision::abs(det) == boost::multiprecision::abs(dual_det));
    }
  }

  TEST_CASE("one positive eigenvalue exactly when the euler number is positive") {
    // exhaustive over legs of length <= 3 with weights in -4..-2, center -1
    std::vector<std::vector<Int>> legs;
    std::vector<std::vector<Int>> acc{{}};
    for (int len = 1; len <= 3; ++len) {
      std::vector<std::vector<Int>> next;
      for (const auto& t : acc)
        for (int w = -4; w <= -2; ++w) {
          auto u = t;
          u.emplace_back(w);
          next.push_back(std::move(u));
        }
      acc = next;
      legs.insert(legs.end(), next.begin(), next.end());
    }
    int positive = 0;
    for (std::size_t i = 0; i < legs.size(); ++i)
      for (std::size_t j = i; j < legs.size(); ++j)
        for (std::size_t k = j; k < legs.size(); ++k) {
          PlumbingTree t = tree_from_star(shape(-1, {legs[i], legs[j], legs[k]}));
          IntersectionLattice l = intersection_lattice(t);
          bool e_positive = euler_number(seifert_from_star_tree(t)).sign() > 0;
          CHECK(e_positive == (l.n_pos == 1 && l.n_zero == 0));
          if (!e_positive)
            CHECK(((l.n_pos == 0 && l.n_zero <= 1)));
          positive += e_positive;
        }
    CHECK(positive > 0);
  }

  TEST_CASE("torus-knot surgery recognition") {
    for (int n = 1; n <= 6; ++n) {
      PlumbingTree t = torus_knot_surgery_tree(n);
      auto idx = recognize_torus_knot_surgery(t);
      REQUIRE(idx.has_value());
      CHECK(*idx == n);
      // invariance under relabeling and leg permutation
      auto relabeled = recognize_torus_knot_surgery(relabel(t, 7, 3));
      REQUIRE(relabeled.has_value());
      CHECK(*relabeled == n);
      StarShape s = star_shape_of(t);
      std::swap(s.legs[0], s.legs[2]);
      auto permuted = recognize_torus_knot_surgery(tree_from_star(s));
      REQUIRE(permuted.has_value());
      CHECK(*permuted == n);
    }
  }

  TEST_CASE("near misses are not recognized") {
    CHECK_FALSE(recognize_torus_knot_surgery(
        tree_from_star(shape(-2, {{-2}, {-3}, {-5}}))));
    CHECK_FALSE(recognize_torus_knot_surgery(
        tree_from_star(shape(-1, {{-2}, {-3}, {-4}}))));
    CHECK_FALSE(recognize_torus_knot_surgery(
        tree_from_star(shape(-1, {{-2}, {-3, -2, -3}, {-7}}))));
    CHECK_FALSE(recognize_torus_knot_surgery(
        tree_from_star(shape(-1, {{-2}, {-2}, {-3}, {-5}}))));
    CHECK_FALSE(recognize_torus_knot_surgery(
        tree_from_star(shape(-1, {{-3}, {-3}, {-5}}))));
  }

  TEST_CASE("truncating the third leg replaces its ratio by 1/c1") {
    PlumbingTree t = tree_from_star(shape(-1, {{-2}, {-3, -2}, {-7, -2}}));
    PlumbingTree cut = truncate_third_leg(t);
    CHECK(star_shape_of(cut) == shape(-1, {{-2}, {-3, -2}, {-7}}));
    SeifertInvariants y = seifert_from_star_tree(cut);
    CHECK(y.ratios[2] == Rational(1, 7));
    CHECK(recognize_torus_knot_surgery(cut) == Int(2));

    // a single-vertex third leg is untouched
    PlumbingTree fixed = torus_knot_surgery_tree(3);
    CHECK(truncate_third_leg(fixed) == fixed);
  }

  TEST_CASE("bad vertices are those with valency above minus the weight") {
    PlumbingTree t = torus_knot_surgery_tree(2);
    CHECK(bad_vertices(t) == std::vector<int>{0});
    PlumbingTree chain = tree_from_star(shape(-2, {{-2, -2}}));
    CHECK(bad_vertices(chain).empty());
  }
}
