#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "doublemat/pair_matrix.hpp"
#include "test_support.hpp"

using namespace doublemat;
using namespace doublemat::testing;

TEST_CASE("pair product rule [A,B][C,D] = [AC,DB]") {
  SUBCASE("identity") {
    auto rng = make_rng(21);
    pair_mat_d m = random_int_pair<double>(rng, 3);
    pair_mat_d i = pair_mat_d::identity(3);
    CHECK(i * m == m);
    CHECK(m * i == m);
  }
  SUBCASE("1x1 idempotent product") {
    pair_mat_d x{mat_d{{2}}, mat_d{{3}}};
    pair_mat_d y{mat_d{{5}}, mat_d{{7}}};
    pair_mat_d xy = x * y;
    CHECK(xy.A(0, 0) == 10.0);
    CHECK(xy.B(0, 0) == 21.0);
  }
  SUBCASE("upper triangular against identities") {
    mat_d a{{1, 1}, {0, 1}};
    pair_mat_d m{a, mat_d::identity(2)};
    pair_mat_d n = pair_mat_d::identity(2);
    pair_mat_d prod = m * n;
    CHECK(prod.A == a);
    CHECK(prod.B == mat_d::identity(2));
  }
}

TEST_CASE("pair product agrees with entrywise split arithmetic") {
  auto rng = make_rng(22);
  for (int t = 0; t < 50; ++t) {
    int n = rand_int(rng, 1, 4);
    pair_mat_d m = random_int_pair<double>(rng, n);
    pair_mat_d nn = random_int_pair<double>(rng, n);
    pair_mat_d fast = m * nn;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        split_d acc{};
        for (int j = 0; j < n; ++j) acc += m.entry(i, j) * nn.entry(j, k);
        CHECK(fast.entry(i, k) == acc);
      }
  }
}

TEST_CASE("conj transpose") {
  auto rng = make_rng(23);
  mat_d a = random_int_mat<double>(rng, 2);
  pair_mat_d herm{a, a};
  CHECK(herm.conj_transpose() == herm);

  mat_d b = random_int_mat<double>(rng, 2);
  pair_mat_d m{a, b};
  CHECK(m.conj_transpose().A == b);
  CHECK(m.conj_transpose().B == a);

  for (int t = 0; t < 30; ++t) {
    pair_mat_d x = random_int_pair<double>(rng, 2);
    pair_mat_d y = random_int_pair<double>(rng, 2);
    CHECK((x * y).conj_transpose() == y.conj_transpose() * x.conj_transpose());
  }
}

TEST_CASE("family predicates") {
  pair_mat_d i = pair_mat_d::identity(2);
  CHECK(is_hermitian(i));
  CHECK(is_unitary(i));
  CHECK(is_diagonal(i));
  CHECK(is_base_embedded(i));

  mat_d a{{2, 0}, {0, 1}};
  pair_mat_d u{a, inverse(a)};
  CHECK(is_unitary(u));
  CHECK_FALSE(is_hermitian(u));

  mat_d swap{{0, 1}, {1, 0}};
  CHECK(is_base_embedded(pair_mat_d::embed(swap)));
  CHECK(is_hermitian(pair_mat_d{swap, swap}));
}

TEST_CASE("embedding is a *-homomorphism") {
  auto rng = make_rng(24);
  CHECK(pair_mat_d::embed(mat_d::identity(3)) == pair_mat_d::identity(3));

  mat_d a{{1, 2}, {3, 4}};
  pair_mat_d e = pair_mat_d::embed(a);
  split_d e01 = e.entry(0, 1);
  CHECK(e01 == split_d{2, 0});

  for (int t = 0; t < 30; ++t) {
    mat_d x = random_int_mat<double>(rng, 3);
    mat_d y = random_int_mat<double>(rng, 3);
    CHECK(pair_mat_d::embed(x) * pair_mat_d::embed(y) == pair_mat_d::embed(x * y));
    CHECK(pair_mat_d::embed(x.transpose()) == pair_mat_d::embed(x).conj_transpose());
  }
}

TEST_CASE("entry components carry the transpose on B") {
  auto rng = make_rng(25);
  pair_mat_d m = random_int_pair<double>(rng, 3);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      CHECK(m.entry(i, k).p() == m.A(i, k));
      CHECK(m.entry(i, k).q() == m.B(k, i));
    }
  // pack/unpack round trip through the entry grid
  std::vector<std::vector<split_d>> grid(3, std::vector<split_d>(3));
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) grid[i][k] = m.entry(i, k);
  CHECK(pair_mat_d::from_entries(grid) == m);
}

TEST_CASE("addition is componentwise and mul associative") {
  auto rng = make_rng(26);
  for (int t = 0; t < 30; ++t) {
    pair_mat_d x = random_int_pair<double>(rng, 3);
    pair_mat_d y = random_int_pair<double>(rng, 3);
    pair_mat_d z = random_int_pair<double>(rng, 3);
    CHECK((x + y).A == x.A + y.A);
    CHECK((x + y).B == x.B + y.B);
    CHECK((x * y) * z == x * (y * z));
  }
}

TEST_CASE("unitary group closure") {
  auto rng = make_rng(27);
  for (int t = 0; t < 20; ++t) {
    mat_d a = random_invertible_int_mat<double>(rng, 3);
    mat_d b = random_invertible_int_mat<double>(rng, 3);
    pair_mat_d u{a, inverse(a)};
    pair_mat_d v{b, inverse(b)};
    CHECK(is_unitary(u, 1e-9));
    CHECK(is_unitary(u * v, 1e-8));
    CHECK(is_unitary(u.conj_transpose(), 1e-8));
  }
}

TEST_CASE("rectangular pairs multiply; decompositions reject them elsewhere") {
  mat_d a(2, 3);
  a(0, 0) = 1;
  a(1, 2) = 2;
  pair_mat_d m{a, a.transpose()};
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  pair_mat_d n = pair_mat_d::embed(mat_d{{1, 0}, {0, 1}, {1, 1}});
  pair_mat_d prod = m * n;
  CHECK(prod.rows() == 2);
  CHECK(prod.cols() == 2);
  CHECK_THROWS_AS(n * n, error);
}
