#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "doublemat/pivoted.hpp"
#include "test_support.hpp"

using namespace doublemat;
using namespace doublemat::testing;

namespace {
const mat_d kswap{{0, 1}, {1, 0}};

// direct 2x2 LU existence: a != 0, or the whole first column is zero
bool lu_exists_2x2(const mat_d& m) {
  return std::abs(m(0, 0)) > 1e-12 || std::abs(m(1, 0)) <= 1e-12;
}
}  // namespace

TEST_CASE("perm_pair composition follows the pair product rule") {
  auto rng = make_rng(61);
  for (int t = 0; t < 20; ++t) {
    int n = rand_int(rng, 2, 4);
    std::vector<int> v1(n), v2(n), w1(n), w2(n);
    for (int i = 0; i < n; ++i) v1[i] = v2[i] = w1[i] = w2[i] = i;
    std::shuffle(v1.begin(), v1.end(), rng);
    std::shuffle(v2.begin(), v2.end(), rng);
    std::shuffle(w1.begin(), w1.end(), rng);
    std::shuffle(w2.begin(), w2.end(), rng);
    perm_pair x{perm(v1), perm(v2)}, y{perm(w1), perm(w2)};
    CHECK(x.compose(y).to_pair<double>() == x.to_pair<double>() * y.to_pair<double>());
  }
  perm_pair u{perm({1, 0}), perm({1, 0})};
  CHECK(u.is_unitary_pair());
  CHECK_FALSE(perm_pair{perm({1, 0}), perm(2)}.is_unitary_pair());
}

TEST_CASE("lup_restricted") {
  SUBCASE("identity is feasible") {
    auto r = lup_restricted(pair_mat_d::identity(2));
    REQUIRE(r.has_value());
    CHECK(r->P == perm(2));
  }
  SUBCASE("the identity/swap pair is infeasible") {
    pair_mat_d m{mat_d::identity(2), kswap};
    CHECK_FALSE(lup_restricted(m).has_value());
  }
  SUBCASE("swap/swap is feasible with the swap permutation") {
    pair_mat_d m{kswap, kswap};
    auto r = lup_restricted(m);
    REQUIRE(r.has_value());
    CHECK(r->P.idx == std::vector<int>{1, 0});
  }
  SUBCASE("feasible results reconstruct and match lup_general") {
    auto rng = make_rng(62);
    int done = 0;
    while (done < 40) {
      int n = rand_int(rng, 2, 4);
      pair_mat_d m = random_int_pair<double>(rng, n, -3, 3);
      auto r = lup_restricted(m);
      if (!r) continue;
      pair_mat_d pp{r->P.to_matrix<double>(), r->P.inverse().to_matrix<double>()};
      CHECK(max_abs_diff(r->lower * r->upper * pp, m) <= 1e-9 * std::max(1.0, m.max_abs()));
      auto g = lup_general(m);
      CHECK(max_abs_diff(g.lower * g.upper * g.perm.to_pair<double>(), m) <=
            1e-9 * std::max(1.0, m.max_abs()));
      ++done;
    }
  }
  SUBCASE("exhaustive 2x2 signed-permutation pairs match brute force") {
    std::vector<mat_d> cands;
    for (int p = 0; p < 2; ++p)
      for (int s0 = -1; s0 <= 1; s0 += 2)
        for (int s1 = -1; s1 <= 1; s1 += 2) {
          mat_d m(2, 2);
          if (p == 0) {
            m(0, 0) = s0;
            m(1, 1) = s1;
          } else {
            m(0, 1) = s0;
            m(1, 0) = s1;
          }
          cands.push_back(m);
        }
    for (const auto& a : cands)
      for (const auto& b : cands) {
        pair_mat_d m{a, b};
        bool brute = false;
        for (int pi = 0; pi < 2 && !brute; ++pi) {
          perm p(2);
          if (pi == 1) p.swap(0, 1);
          mat_d ap = a * p.inverse().to_matrix<double>();
          mat_d pb = p.to_matrix<double>() * b;
          brute = lu_exists_2x2(ap) && lu_exists_2x2(pb);
        }
        CHECK(lup_restricted(m).has_value() == brute);
      }
  }
  SUBCASE("n > 6 rejected") {
    CHECK_THROWS_AS(lup_restricted(pair_mat_d::identity(7)), error);
  }
}

TEST_CASE("lup_general") {
  SUBCASE("identity") {
    auto g = lup_general(pair_mat_d::identity(3));
    CHECK(max_abs_diff(g.lower * g.upper * g.perm.to_pair<double>(), pair_mat_d::identity(3)) <
          1e-12);
  }
  SUBCASE("succeeds on the restricted counterexample") {
    pair_mat_d m{mat_d::identity(2), kswap};
    auto g = lup_general(m);
    CHECK(max_abs_diff(g.lower * g.upper * g.perm.to_pair<double>(), m) < 1e-12);
  }
  SUBCASE("random singular components reconstruct") {
    auto rng = make_rng(63);
    for (int t = 0; t < 40; ++t) {
      int n = 3;
      mat_d a = random_int_mat<double>(rng, n, -3, 3);
      mat_d b = random_int_mat<double>(rng, n, -3, 3);
      for (int j = 0; j < n; ++j) a(1, j) = a(0, j);  // singular A
      pair_mat_d m{a, b};
      auto g = lup_general(m);
      CHECK(max_abs_diff(g.lower * g.upper * g.perm.to_pair<double>(), m) <=
            1e-10 * std::max(1.0, m.max_abs()));
      CHECK(is_lower_triangular(g.lower, 1e-12));
      CHECK(is_upper_triangular(g.upper, 1e-12));
    }
  }
}

TEST_CASE("bkp_double") {
  SUBCASE("identity") {
    auto f = bkp_double(pair_mat_d::identity(2));
    CHECK(f.L == mat_d::identity(2));
    CHECK(f.D == mat_d::identity(2));
    CHECK(f.U == mat_d::identity(2));
  }
  SUBCASE("swap becomes eliminable after pivoting") {
    pair_mat_d m{kswap, kswap};
    auto f = bkp_double(m);
    mat_d paq = f.perm.P.apply_rows(kswap) * f.perm.Q.to_matrix<double>();
    CHECK(max_abs_diff(paq, f.L * f.D * f.U) < 1e-12);
    CHECK(detail::diagonal(f.D, 1e-12));
  }
  SUBCASE("rank-1 outer product reveals rank") {
    mat_d a{{1, 2}, {2, 4}};
    auto f = bkp_double(pair_mat_d{a, a});
    CHECK(f.D(0, 0) == doctest::Approx(4.0));  // complete pivot takes the largest entry
    CHECK(f.D(1, 1) == 0.0);
  }
  SUBCASE("rejects non-hermitian input") {
    CHECK_THROWS_AS(bkp_double(pair_mat_d{mat_d::identity(2), kswap}), error);
  }
  SUBCASE("reconstruction on random Hermitian pairs, including rank-deficient") {
    auto rng = make_rng(64);
    for (int t = 0; t < 40; ++t) {
      int n = rand_int(rng, 1, 5);
      mat_d a = random_int_mat<double>(rng, n, -4, 4);
      if (t % 3 == 0 && n > 1)
        for (int j = 0; j < n; ++j) a(n - 1, j) = a(0, j);
      pair_mat_d m{a, a};
      auto f = bkp_double(m);
      mat_d paq = f.perm.P.apply_rows(a) * f.perm.Q.to_matrix<double>();
      CHECK(max_abs_diff(paq, f.L * f.D * f.U) <= 1e-10 * std::max(1.0, a.max_abs()));
      int nz = 0;
      for (int i = 0; i < n; ++i)
        if (std::abs(f.D(i, i)) > 1e-8) ++nz;
      CHECK(nz == rank(a));
    }
  }
}

TEST_CASE("rrqr_double") {
  SUBCASE("identity") {
    auto f = rrqr_double(pair_mat_d::identity(2));
    CHECK(max_abs_diff(f.Q * f.R, pair_mat_d::identity(2) * f.perm.to_pair<double>()) < 1e-12);
  }
  SUBCASE("succeeds where qr_components fails") {
    pair_mat_d m{mat_d::identity(2), kswap};
    CHECK_THROWS_AS(qr_components(m), error);
    auto f = rrqr_double(m);
    CHECK(max_abs_diff(m * f.perm.to_pair<double>(), f.Q * f.R) < 1e-10);
    CHECK(is_unitary(f.Q, 1e-10));
  }
  SUBCASE("random invertible pairs") {
    auto rng = make_rng(65);
    for (int t = 0; t < 40; ++t) {
      int n = 3;
      pair_mat_d m = random_invertible_int_pair<double>(rng, n, -4, 4);
      double scale = std::max(1.0, m.max_abs());
      auto f = rrqr_double(m);
      CHECK(max_abs_diff(m * f.perm.to_pair<double>(), f.Q * f.R) <= 1e-8 * scale);
      CHECK(is_unitary(f.Q, 1e-8 * scale));
      CHECK(is_upper_triangular(f.R, 1e-10));
      // Pi2 B A Pi1 = L U
      mat_d lhs = f.perm.Q.to_matrix<double>() * m.B * m.A * f.perm.P.to_matrix<double>();
      CHECK(max_abs_diff(lhs, f.R.B * f.R.A) <= 1e-8 * std::max(1.0, lhs.max_abs()));
    }
  }
  SUBCASE("rejects singular input") {
    CHECK_THROWS_AS(rrqr_double(pair_mat_d{mat_d{{1, 0}, {0, 0}}, kswap}), error);
  }
}
