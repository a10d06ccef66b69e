#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "doublemat/decompositions.hpp"
#include "doublemat/real_linalg.hpp"
#include "test_support.hpp"

using namespace doublemat;
using namespace doublemat::testing;

namespace {

pair_mat_c random_complexified_pair(std::mt19937_64& rng, int n) {
  return complexify(random_invertible_int_pair<double>(rng, n));
}

// pairs whose product BA has all leading minors away from zero, so every
// QR algorithm's existence condition holds
pair_mat_c random_qr_friendly_pair(std::mt19937_64& rng, int n) {
  for (;;) {
    pair_mat_c m = random_complexified_pair(rng, n);
    mat_c ba = m.B * m.A;
    bool ok = true;
    for (int k = 1; k <= n && ok; ++k)
      if (std::abs(det(ba.block(0, 0, k, k))) <= 1e-6) ok = false;
    if (ok) return m;
  }
}

}  // namespace

TEST_CASE("ldl_double") {
  SUBCASE("identity") {
    auto f = ldl_double(pair_mat_d::identity(2));
    CHECK(f.L == pair_mat_d::identity(2));
    CHECK(f.D == pair_mat_d::identity(2));
  }
  SUBCASE("unpacking gives the component LDU") {
    mat_d a{{2, 1}, {1, 2}};
    auto f = ldl_double(pair_mat_d{a, a});
    CHECK(f.L.A(1, 0) == doctest::Approx(0.5));   // L
    CHECK(f.L.B(0, 1) == doctest::Approx(0.5));   // U
    CHECK(f.D.A(0, 0) == doctest::Approx(2.0));
    CHECK(f.D.A(1, 1) == doctest::Approx(1.5));
  }
  SUBCASE("zero-divisor pivot") {
    mat_d a{{0, 1}, {1, 0}};
    try {
      ldl_double(pair_mat_d{a, a});
      FAIL("expected pivot_zero_divisor");
    } catch (const error& e) {
      CHECK(e.code() == errc::pivot_zero_divisor);
      CHECK(e.index() == 0);
    }
  }
  SUBCASE("rejects non-hermitian input") {
    pair_mat_d m{mat_d{{1, 0}, {0, 1}}, mat_d{{2, 0}, {0, 1}}};
    CHECK_THROWS_AS(ldl_double(m), error);
  }
  SUBCASE("reconstruction on random Hermitian pairs") {
    auto rng = make_rng(41);
    int done = 0;
    while (done < 60) {
      int n = rand_int(rng, 1, 5);
      mat_d a = random_nonsingular_minors(rng, n, -3, 3, 0.4);
      pair_mat_d m{a, a};
      ldl_result<double> f;
      try {
        f = ldl_double(m);
      } catch (const error&) {
        continue;
      }
      CHECK(max_abs_diff(f.L * f.D * f.L.conj_transpose(), m) <= 1e-9 * std::max(1.0, m.max_abs()));
      CHECK(is_lower_triangular(f.L));
      CHECK(is_diagonal(f.D));
      CHECK(is_hermitian(f.D, 1e-9));
      ++done;
    }
  }
}

TEST_CASE("ldu_via_double equals the component ldu") {
  SUBCASE("identity") {
    auto f = ldu_via_double(mat_d::identity(3));
    CHECK(f.L == mat_d::identity(3));
    CHECK(f.D == mat_d::identity(3));
    CHECK(f.U == mat_d::identity(3));
  }
  SUBCASE("hand case") {
    auto f = ldu_via_double(mat_d{{1, 2}, {3, 4}});
    CHECK(f.D(0, 0) == doctest::Approx(1.0));
    CHECK(f.D(1, 1) == doctest::Approx(-2.0));
  }
  SUBCASE("oracle comparison") {
    auto rng = make_rng(42);
    for (int t = 0; t < 50; ++t) {
      mat_d a = random_nonsingular_minors(rng, rand_int(rng, 1, 5));
      auto via = ldu_via_double(a);
      auto direct = ldu(a);
      CHECK(max_abs_diff(via.L, direct.L) <= 1e-10);
      CHECK(max_abs_diff(via.D, direct.D) <= 1e-10);
      CHECK(max_abs_diff(via.U, direct.U) <= 1e-10);
    }
  }
}

TEST_CASE("qr_components") {
  SUBCASE("identity") {
    auto f = qr_components(pair_mat_d::identity(2));
    CHECK(f.Q == pair_mat_d::identity(2));
    CHECK(f.R == pair_mat_d::identity(2));
  }
  SUBCASE("diagonal case") {
    pair_mat_d m{mat_d{{2, 0}, {0, 3}}, mat_d::identity(2)};
    auto f = qr_components(m);
    CHECK(max_abs_diff(f.R.A, mat_d{{2, 0}, {0, 3}}) < 1e-12);  // U
    CHECK(max_abs_diff(f.R.B, mat_d::identity(2)) < 1e-12);     // L
    CHECK(max_abs_diff(f.Q.A, mat_d::identity(2)) < 1e-12);     // C
  }
  SUBCASE("existence condition surfaces as pivot_failure") {
    pair_mat_d m{mat_d::identity(2), mat_d{{0, 1}, {1, 0}}};
    CHECK_THROWS_AS(qr_components(m), error);
  }
}

TEST_CASE("householder reflector behaviour") {
  SUBCASE("negative real 1-entry flips onto the positive axis") {
    auto h = householder_reflection<double>({split_d{-3, 0}, split_d{}});
    // H x should be (3, 0)
    pair_mat_d x = pair_mat_d::zeros(2, 1);
    x.set_entry(0, 0, split_d{-3, 0});
    pair_mat_d hx = h * x;
    CHECK(hx.entry(0, 0).a == doctest::Approx(3.0));
    CHECK(std::abs(hx.entry(1, 0).a) < 1e-12);
  }
  SUBCASE("reflectors are unitary involutions") {
    auto rng = make_rng(43);
    for (int t = 0; t < 40; ++t) {
      int n = rand_int(rng, 1, 4);
      std::vector<split_c> x(n);
      for (auto& e : x)
        e = split_c{cplx(rand_int(rng, -4, 4), rand_int(rng, -4, 4)),
                    cplx(rand_int(rng, -4, 4), rand_int(rng, -4, 4))};
      if (scabs(x[0]) <= 1e-6) continue;  // stay on the pure-reflector branch
      pair_mat_c h;
      try {
        h = householder_reflection(x);
      } catch (const error&) {
        continue;
      }
      pair_mat_c i = pair_mat_c::identity(n);
      CHECK(max_abs_diff(h * h, i) <= 1e-10 * std::max(1.0, h.max_abs() * h.max_abs()));
      CHECK(max_abs_diff(h.conj_transpose() * h, i) <= 1e-10 * std::max(1.0, h.max_abs() * h.max_abs()));
    }
  }
  SUBCASE("all-zero-divisor column is degenerate") {
    CHECK_THROWS_AS(householder_reflection<double>({split_d{}, split_d{1, 1}}), error);
  }
  SUBCASE("initial rotation rescues a zero-divisor leading entry") {
    // first entry 0, second entry invertible: rotation fallback applies
    auto h = householder_reflection<double>({split_d{}, split_d{2, 1}});
    pair_mat_d x = pair_mat_d::zeros(2, 1);
    x.set_entry(1, 0, split_d{2, 1});
    pair_mat_d hx = h * x;
    CHECK(scabs(hx.entry(1, 0)) < 1e-10);
    CHECK(scabs(hx.entry(0, 0)) > 0.5);
    CHECK(is_unitary(h, 1e-10));
  }
}

TEST_CASE("the three QR algorithms agree") {
  auto rng = make_rng(44);
  SUBCASE("real-embedded input reduces to the component QR") {
    mat_d a{{1, 1}, {0, 1}};
    auto f = qr_gram_schmidt(pair_mat_d::embed(a));
    CHECK(is_base_embedded(f.Q, 1e-9));
    CHECK(max_abs_diff(f.Q * f.R, pair_mat_d::embed(a)) < 1e-9);
    // component Q orthogonal
    CHECK(max_abs_diff(f.Q.A.transpose() * f.Q.A, mat_d::identity(2)) < 1e-9);
  }
  SUBCASE("split-diagonal normalization") {
    pair_mat_d m{mat_d{{1, 0}, {0, 2}}, mat_d{{3, 0}, {0, 4}}};
    auto f = qr_gram_schmidt(m);
    CHECK(f.R.A(0, 0) == doctest::Approx(std::sqrt(3.0)));
    CHECK(f.R.B(0, 0) == doctest::Approx(std::sqrt(3.0)));
    CHECK(f.R.A(1, 1) == doctest::Approx(std::sqrt(8.0)));
    CHECK(f.R.B(1, 1) == doctest::Approx(std::sqrt(8.0)));
  }
  SUBCASE("random invertible double-complex pairs") {
    for (int t = 0; t < 40; ++t) {
      int n = rand_int(rng, 2, 4);
      pair_mat_c m = random_qr_friendly_pair(rng, n);
      double scale = std::max(1.0, m.max_abs());
      qr_result<cplx> fs[3] = {qr_components(m), qr_gram_schmidt(m), qr_householder(m)};
      mat_c ba = m.B * m.A;
      for (const auto& f : fs) {
        CHECK(max_abs_diff(f.Q * f.R, m) <= 1e-8 * scale);
        CHECK(is_unitary(f.Q, 1e-8 * scale));
        CHECK(is_upper_triangular(f.R, 1e-8 * scale));
        // unpacked R multiplies back to BA
        CHECK(max_abs_diff(f.R.B * f.R.A, ba) <= 1e-8 * std::max(1.0, ba.max_abs()));
      }
    }
  }
}

TEST_CASE("gram-schmidt flags zero-divisor column norms") {
  // first column's split norm has a vanishing idempotent component
  pair_mat_d m{mat_d{{1, 0}, {0, 1}}, mat_d{{0, 0}, {0, 1}}};
  try {
    qr_gram_schmidt(m);
    FAIL("expected zero_divisor_norm");
  } catch (const error& e) {
    CHECK(e.code() == errc::zero_divisor_norm);
    CHECK(e.index() == 0);
  }
}

TEST_CASE("svd_lr") {
  SUBCASE("identity fixed point") {
    auto d = svd_lr(pair_mat_d::identity(3), 5);
    CHECK(max_abs_diff(d, pair_mat_d::identity(3)) < 1e-12);
  }
  SUBCASE("real diagonal gives singular values") {
    auto d = svd_lr(pair_mat_d::embed(mat_d{{3, 0}, {0, 2}}), 20);
    CHECK(d.A(0, 0) == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(d.A(1, 1) == doctest::Approx(2.0).epsilon(1e-6));
  }
  SUBCASE("squared diagonal tracks the eigenvalues of BA") {
    pair_mat_d m{mat_d{{2, 0}, {0, 1}}, mat_d::identity(2)};
    auto d = svd_lr(m, 20);
    // components of M^*M are BA = diag(2,1); eigenvalues {2, 1}
    std::vector<double> sq = {d.A(0, 0) * d.A(0, 0), d.A(1, 1) * d.A(1, 1)};
    std::sort(sq.begin(), sq.end());
    CHECK(sq[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sq[1] == doctest::Approx(2.0).epsilon(1e-6));
  }
  SUBCASE("domain error over the reals when a component goes negative") {
    // M^*M = [BA, BA] with BA having a negative diagonal pivot
    pair_mat_d m{mat_d{{0, 1}, {1, 0}}, mat_d{{-1, 0}, {0, 1}}};
    CHECK_THROWS_AS(svd_lr(m, 3), error);
  }
  SUBCASE("iters must be positive") {
    CHECK_THROWS_AS(svd_lr(pair_mat_d::identity(2), 0), error);
  }
}
