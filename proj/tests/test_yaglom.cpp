#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "doublemat/yaglom.hpp"
#include "test_support.hpp"

using namespace doublemat;
using namespace doublemat::testing;
namespace yg = doublemat::yaglom;

TEST_CASE("inversion matrices are the literal ones") {
  auto first = yg::inversion_matrix({yg::inversion_kind::first, 1.0});
  CHECK(first.entry(0, 0) == split_d{0, 0});
  CHECK(first.entry(0, 1) == split_d{-1, 0});
  CHECK(first.entry(1, 0) == split_d{1, 0});
  CHECK(first.entry(1, 1) == split_d{0, 0});

  auto second = yg::inversion_matrix({yg::inversion_kind::second, 0.0});
  CHECK(second.entry(0, 0) == split_d{0, 1});
  CHECK(second.entry(0, 1) == split_d{-1, 0});
  CHECK(second.entry(1, 0) == split_d{3, 0});
  CHECK(second.entry(1, 1) == split_d{0, 1});

  auto fourth = yg::inversion_matrix({yg::inversion_kind::fourth, 2.0});
  CHECK(fourth.entry(0, 1) == split_d{0, 2});
  CHECK(fourth.entry(1, 0) == split_d{1, 0});

  CHECK_THROWS_AS(yg::inversion_matrix({yg::inversion_kind::third, -0.5}), error);
}

TEST_CASE("family invariants match the classification table") {
  SUBCASE("first: diag(k, 1)") {
    auto inv = yg::jordan_invariant(yg::inversion_matrix({yg::inversion_kind::first, 3.0}));
    REQUIRE(inv.blocks.size() == 2);
    std::vector<double> vals = {inv.blocks[0].lambda.real(), inv.blocks[1].lambda.real()};
    std::sort(vals.begin(), vals.end());
    CHECK(vals[0] == doctest::Approx(1.0));
    CHECK(vals[1] == doctest::Approx(3.0));
  }
  SUBCASE("second: J2(2) exactly") {
    auto inv = yg::jordan_invariant(yg::inversion_matrix({yg::inversion_kind::second, 0.0}));
    REQUIRE(inv.is_jordan2());
    CHECK(std::abs(inv.blocks[0].lambda - 2.0) < 1e-8);
  }
  SUBCASE("third: conjugate pair") {
    auto inv = yg::jordan_invariant(yg::inversion_matrix({yg::inversion_kind::third, 0.0}));
    REQUIRE(inv.blocks.size() == 2);
    CHECK(std::abs(inv.blocks[0].lambda - cplx(1, -1)) < 1e-8);
    CHECK(std::abs(inv.blocks[1].lambda - cplx(1, 1)) < 1e-8);
  }
  SUBCASE("fourth with k=1: the c(1-i)/sqrt2 scaling of diag(1, i)") {
    auto inv = yg::jordan_invariant(yg::inversion_matrix({yg::inversion_kind::fourth, 1.0}));
    REQUIRE(inv.blocks.size() == 2);
    // lex order puts the imaginary eigenvalue (Re = 0) first
    CHECK(std::abs(inv.blocks[0].lambda - cplx(0, 1)) < 1e-8);
    CHECK(std::abs(inv.blocks[1].lambda - 1.0) < 1e-8);
  }
}

TEST_CASE("classify covers each family across the parameter grid") {
  const double ks[] = {-2.0, -1.0, 0.5, 1.0, 3.0};
  const double alphas[] = {0.0, 0.5, 1.0, 2.0};
  for (double k : ks) {
    auto c1 = yg::classify(yg::inversion_matrix({yg::inversion_kind::first, k}));
    CHECK(c1.covered);
    auto k1 = yg::matching_kinds(
        yg::jordan_invariant(yg::inversion_matrix({yg::inversion_kind::first, k})));
    CHECK(std::count(k1.begin(), k1.end(), yg::inversion_kind::first) == 1);

    auto c4 = yg::classify(yg::inversion_matrix({yg::inversion_kind::fourth, k}));
    CHECK(c4.covered);
    auto k4 = yg::matching_kinds(
        yg::jordan_invariant(yg::inversion_matrix({yg::inversion_kind::fourth, k})));
    CHECK(std::count(k4.begin(), k4.end(), yg::inversion_kind::fourth) == 1);
  }
  for (double a : alphas) {
    auto c3 = yg::classify(yg::inversion_matrix({yg::inversion_kind::third, a}));
    CHECK(c3.covered);
    auto k3 = yg::matching_kinds(
        yg::jordan_invariant(yg::inversion_matrix({yg::inversion_kind::third, a})));
    CHECK(std::count(k3.begin(), k3.end(), yg::inversion_kind::third) == 1);
  }
  auto c2 = yg::classify(yg::inversion_matrix({yg::inversion_kind::second, 0.0}));
  CHECK(c2.covered);
  REQUIRE(c2.kind.has_value());
  CHECK(*c2.kind == yg::inversion_kind::second);
}

TEST_CASE("the counterexample defeats the original classification") {
  auto m = yg::counterexample();
  auto inv = yg::jordan_invariant(m);
  REQUIRE(inv.is_jordan2());
  CHECK(std::abs(inv.blocks[0].lambda - 1.0) < 1e-8);
  auto c = yg::classify(m);
  CHECK_FALSE(c.covered);
  CHECK(yg::proposed_family_covers(m));
}

TEST_CASE("proposed family") {
  SUBCASE("sweeps J2(|k|)") {
    auto inv1 = yg::jordan_invariant(yg::proposed_family_matrix(1.0));
    REQUIRE(inv1.is_jordan2());
    CHECK(std::abs(inv1.blocks[0].lambda - 1.0) < 1e-8);
    auto inv2 = yg::jordan_invariant(yg::proposed_family_matrix(2.0));
    REQUIRE(inv2.is_jordan2());
    CHECK(std::abs(inv2.blocks[0].lambda - 2.0) < 1e-8);
  }
  SUBCASE("still covers the original families") {
    CHECK(yg::proposed_family_covers(yg::inversion_matrix({yg::inversion_kind::first, 5.0})));
    CHECK(yg::proposed_family_covers(yg::inversion_matrix({yg::inversion_kind::third, 2.0})));
    CHECK(yg::proposed_family_covers(yg::inversion_matrix({yg::inversion_kind::fourth, -1.0})));
  }
}

TEST_CASE("the invariant is unitary-conjugation invariant") {
  auto rng = make_rng(71);
  int done = 0;
  while (done < 20) {
    mat_d w1 = random_invertible_int_mat<double>(rng, 2, -3, 3, 0.9);
    mat_d w2 = random_invertible_int_mat<double>(rng, 2, -3, 3, 0.9);
    pair_mat_d u1{w1, inverse(w1)};
    pair_mat_d u2{w2, inverse(w2)};
    yg::inversion_spec spec{yg::inversion_kind::first, double(rand_int(rng, 1, 4))};
    if (done % 3 == 1) spec = {yg::inversion_kind::third, 0.5 * rand_int(rng, 0, 4)};
    if (done % 3 == 2) spec = {yg::inversion_kind::second, 0.0};
    pair_mat_d s = yg::inversion_matrix(spec);
    pair_mat_d m = u1 * s * u2.conj_transpose();
    yg::j_invariant before, after;
    try {
      before = yg::jordan_invariant(s);
      after = yg::jordan_invariant(m);
    } catch (const error&) {
      continue;  // conjugation can land on an ill-conditioned instance
    }
    CHECK(blocks_equal(before.blocks, after.blocks, 1e-5 * std::max(1.0, m.max_abs())));
    auto cls = yg::classify(m);
    CHECK(cls.covered);
    ++done;
  }
  SUBCASE("case-3 invariants survive conjugation") {
    mat_d w = {{2, 1}, {1, 1}};
    pair_mat_d u{w, inverse(w)};
    mat_d z{{3, -1}, {1, 3}};  // similar to diag(3+i, 3-i)
    pair_mat_d m = u * pair_mat_d::embed(z) * u.conj_transpose();
    CHECK(yg::proposed_family_covers(m));
  }
}

TEST_CASE("demo invariants carry the expected shapes") {
  auto demo = yg::demo_invariants();
  REQUIRE(demo.size() == 4);
  CHECK(demo[0].second.blocks.size() == 2);  // diag(k, 1)
  CHECK(demo[1].second.is_jordan2());        // J2(2)
  CHECK(std::abs(demo[1].second.blocks[0].lambda - 2.0) < 1e-8);
  CHECK(std::abs(demo[2].second.blocks[1].lambda - std::conj(demo[2].second.blocks[0].lambda)) <
        1e-8);                               // diag(z, conj z)
  CHECK(demo[3].second.blocks.size() == 2);  // diag(c(1-i)/sqrt2, c(1+i)/sqrt2) class
}

TEST_CASE("singular lft matrices are rejected") {
  pair_mat_d m{mat_d{{1, 0}, {0, 0}}, mat_d::identity(2)};
  CHECK_THROWS_AS(yg::jordan_invariant(m), error);
}
