#include "doublemat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "doublemat/jordan_svd.hpp"
#include "doublemat/pivoted.hpp"
#include "doublemat/yaglom.hpp"

namespace doublemat {

namespace {

using rng_t = std::mt19937_64;

int rint(rng_t& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }
double rreal(rng_t& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

mat_d rand_int_mat(rng_t& g, int n, int lo, int hi) {
  mat_d a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rint(g, lo, hi);
  return a;
}

mat_d rand_invertible(rng_t& g, int n, int lo, int hi) {
  for (;;) {
    mat_d a = rand_int_mat(g, n, lo, hi);
    if (std::abs(det(a)) >= 0.5) return a;
  }
}

// ---- oracles -------------------------------------------------------------

// Monic characteristic polynomial by Faddeev-LeVerrier; the eigenvalue
// oracle below is charpoly + Durand-Kerner, a route independent of the QR
// iteration inside the library.
std::vector<cplx> charpoly(const mat_c& a) {
  const int n = a.rows();
  std::vector<cplx> c(n);
  mat_c mk(n, n);
  cplx ck = 1.0;
  for (int k = 1; k <= n; ++k) {
    mk = a * mk;
    for (int i = 0; i < n; ++i) mk(i, i) += ck;
    mat_c am = a * mk;
    cplx tr = 0.0;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    ck = -tr / double(k);
    c[n - k] = ck;
  }
  return c;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs) {
  const int n = int(coeffs.size());
  auto horner = [&](cplx x) {
    cplx v = 1.0;
    for (int i = n - 1; i >= 0; --i) v = v * x + coeffs[i];
    return v;
  };
  std::vector<cplx> z(n);
  cplx acc = 1.0;
  for (int i = 0; i < n; ++i) {
    acc *= cplx(0.4, 0.9);
    z[i] = acc;
  }
  for (int it = 0; it < 600; ++it) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx denom = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      cplx step = horner(z[i]) / denom;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

std::vector<cplx> eig_oracle(const mat_c& a) { return poly_roots(charpoly(a)); }

std::vector<double> sorted_abs(std::vector<cplx> v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(std::abs(z));
  std::sort(out.begin(), out.end());
  return out;
}

bool multiset_close(std::vector<cplx> a, std::vector<cplx> b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool hit = false;
    for (size_t i = 0; i < b.size() && !hit; ++i)
      if (!used[i] && std::abs(b[i] - x) <= tol) {
        used[i] = true;
        hit = true;
      }
    if (!hit) return false;
  }
  return true;
}

// ---- shared instance generators ------------------------------------------

// invertible integer pair whose product AB has well-separated, comfortably
// nonzero spectrum (criteria 5, 6, 8)
pair_mat_c separated_pair(rng_t& g, int n, double sep) {
  for (;;) {
    pair_mat_c m{complexify(rand_invertible(g, n, -4, 4)), complexify(rand_invertible(g, n, -4, 4))};
    auto eigs = eig_oracle(m.A * m.B);
    bool ok = true;
    for (size_t i = 0; i < eigs.size() && ok; ++i) {
      if (std::abs(eigs[i]) < sep) ok = false;
      for (size_t j = i + 1; j < eigs.size() && ok; ++j)
        if (std::abs(eigs[i] - eigs[j]) < sep) ok = false;
    }
    if (ok) return m;
  }
}

struct criterion {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

// ---- criterion 1: algebra identities --------------------------------------

criterion c1_algebra(rng_t& g) {
  criterion c;
  for (int t = 0; t < 500 && c.pass; ++t) {
    int n = rint(g, 1, 4);
    pair_mat_d m{rand_int_mat(g, n, -5, 5), rand_int_mat(g, n, -5, 5)};
    pair_mat_d nn{rand_int_mat(g, n, -5, 5), rand_int_mat(g, n, -5, 5)};
    pair_mat_d prod = m * nn;  // the [AC, DB] rule
    // independent route: entrywise split arithmetic
    for (int i = 0; i < n && c.pass; ++i)
      for (int k = 0; k < n && c.pass; ++k) {
        split_d acc{};
        for (int j = 0; j < n; ++j) acc += m.entry(i, j) * nn.entry(j, k);
        c.require(prod.entry(i, k) == acc, "pair product disagrees with entrywise route");
      }
    c.require((m * nn).conj_transpose() == nn.conj_transpose() * m.conj_transpose(),
              "(MN)* != N* M*");
    split_d x{double(rint(g, -5, 5)), double(rint(g, -5, 5))};
    split_d y{double(rint(g, -5, 5)), double(rint(g, -5, 5))};
    split_d xy = x * y;
    c.require(xy.p() == x.p() * y.p() && xy.q() == x.q() * y.q(),
              "idempotent product not componentwise (exact)");
    // float variant at 1e-12 relative
    split_d xf{rreal(g, -3, 3), rreal(g, -3, 3)};
    split_d yf{rreal(g, -3, 3), rreal(g, -3, 3)};
    split_d xyf = xf * yf;
    double ref = std::max({1.0, std::abs(xyf.p()), std::abs(xyf.q())});
    c.require(std::abs(xyf.p() - xf.p() * yf.p()) <= 1e-12 * ref &&
                  std::abs(xyf.q() - xf.q() * yf.q()) <= 1e-12 * ref,
              "idempotent product beyond 1e-12 relative for floats");
  }
  return c;
}

// ---- criterion 2: LDL -> LDU reduction ------------------------------------

// nonzero leading minors, with the minor growth capped so elimination stays
// well-scaled (the 1e-10 agreement gate presumes unit-scale pivot growth)
mat_d nonsingular_minors(rng_t& g, int n) {
  for (;;) {
    mat_d a = rand_int_mat(g, n, -3, 3);
    bool ok = true;
    for (int k = 1; k <= n && ok; ++k) {
      double mk = std::abs(det(a.block(0, 0, k, k)));
      if (mk < 0.5 || mk > 40.0) ok = false;
    }
    if (ok) return a;
  }
}

criterion c2_ldu(rng_t& g) {
  criterion c;
  for (int t = 0; t < 200 && c.pass; ++t) {
    int n = rint(g, 1, 5);
    mat_d a = nonsingular_minors(g, n);
    auto via = ldu_via_double(a);
    auto direct = ldu(a);
    double d = std::max({max_abs_diff(via.L, direct.L), max_abs_diff(via.D, direct.D),
                         max_abs_diff(via.U, direct.U)});
    c.require(d <= 1e-10, "ldu_via_double differs from the component ldu by " + std::to_string(d));
  }
  return c;
}

// ---- criterion 3: SVD -> eigendecomposition reduction ----------------------

mat_d rotation_product(rng_t& g, int n) {
  mat_d q = mat_d::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double th = rreal(g, 0, 6.283185);
      mat_d r = mat_d::identity(n);
      r(i, i) = std::cos(th);
      r(j, j) = std::cos(th);
      r(i, j) = -std::sin(th);
      r(j, i) = std::sin(th);
      q = q * r;
    }
  return q;
}

criterion c3_svd_lr(rng_t& g) {
  criterion c;
  // general pairs: BA = W diag(lam) W^{-1} with W unit lower triangular, so
  // the spectrum is lam (positive, ratio-separated) and the classic LR
  // convergence conditions (unit leading minors of the eigenvector factors)
  // hold with small constants
  int done = 0, attempts = 0;
  while (done < 100 && c.pass && attempts < 4000) {
    ++attempts;
    int n = rint(g, 2, 4);
    std::vector<double> lam(n);
    lam[n - 1] = rreal(g, 0.5, 1.5);
    for (int i = n - 2; i >= 0; --i) lam[i] = lam[i + 1] * rreal(g, 2.2, 3.5);
    mat_d w = mat_d::identity(n), diag(n, n);
    for (int i = 0; i < n; ++i) {
      diag(i, i) = lam[i];
      for (int j = 0; j < i; ++j) w(i, j) = rint(g, -1, 1);
    }
    mat_d ba_target = w * diag * inverse(w);
    mat_d a = rand_invertible(g, n, -3, 3);
    mat_d b = solve(a.transpose(), ba_target.transpose()).transpose();  // BA = target
    pair_mat_c m = complexify(pair_mat_d{a, b});
    pair_mat_c d;
    try {
      d = svd_lr(m, 20);
    } catch (const error& e) {
      // the op's precondition is "every LDL step succeeds": such draws are
      // outside its domain, resample
      if (e.code() == errc::pivot_zero_divisor || e.code() == errc::domain_error) continue;
      c.fail(std::string("svd_lr raised: ") + e.what());
      break;
    }
    ++done;
    std::vector<cplx> sq(n);
    for (int i = 0; i < n; ++i) sq[i] = d.A(i, i) * d.A(i, i);
    std::vector<cplx> want = eig_oracle(m.A * m.B);
    double wmax = 1.0;
    for (const auto& w : want) wmax = std::max(wmax, std::abs(w));
    c.require(multiset_close(sq, want, 1e-4 * wmax),
              "squared LR diagonal misses the eigenvalues of AB");
  }
  c.require(done == 100, "could not collect 100 in-domain LR instances");
  // real-embedded: singular values of A. LR convergence on A^T A = R2^T D^2 R2
  // needs the eigenvector factor R2^T to be LU-friendly, so keep its leading
  // minors away from zero.
  auto lu_friendly = [](const mat_d& r) {
    for (int k = 1; k <= r.rows(); ++k)
      if (std::abs(det(r.block(0, 0, k, k))) < 0.15) return false;
    return true;
  };
  for (int t = 0; t < 100 && c.pass; ++t) {
    int n = rint(g, 2, 4);
    std::vector<double> sv(n);
    sv[n - 1] = rreal(g, 0.6, 1.4);
    for (int i = n - 2; i >= 0; --i) sv[i] = sv[i + 1] * rreal(g, 2.0, 3.0);  // cond <= 27
    mat_d diag(n, n);
    for (int i = 0; i < n; ++i) diag(i, i) = sv[i];
    mat_d r2(n, n);
    do {
      r2 = rotation_product(g, n);
    } while (!lu_friendly(r2.transpose()) || !lu_friendly(r2));
    mat_d a = rotation_product(g, n) * diag * r2;
    pair_mat_d m = pair_mat_d::embed(a);
    pair_mat_d d = svd_lr(m, 20);
    std::vector<cplx> got(n), want(n);
    for (int i = 0; i < n; ++i) {
      got[i] = d.A(i, i);
      want[i] = sv[i];
    }
    // oracle route: sqrt of the eigenvalues of A^T A
    auto ata = eig_oracle(complexify(a.transpose() * a));
    std::vector<cplx> oracle;
    for (const auto& z : ata) oracle.push_back(std::sqrt(std::abs(z)));
    c.require(multiset_close(got, want, 1e-4 * std::max(1.0, sv[n - 1])),
              "LR diagonal misses the singular values");
    c.require(multiset_close(got, oracle, 1e-4 * std::max(1.0, sv[n - 1])),
              "LR diagonal misses the A^T A oracle");
  }
  return c;
}

// ---- criterion 4: QR -> LU of the product ----------------------------------

pair_mat_c qr_instance(rng_t& g, int n) {
  for (;;) {
    mat_d a = rand_invertible(g, n, -3, 3);
    mat_d b = rand_invertible(g, n, -3, 3);
    mat_d ba = b * a;
    bool ok = true;
    for (int k = 1; k <= n && ok; ++k)
      if (std::abs(det(ba.block(0, 0, k, k))) < 0.5) ok = false;
    if (ok) return complexify(pair_mat_d{a, b});
  }
}

// scale rows so the diagonal has equal components sqrt_H(p q); quotients
// out the unitary-diagonal freedom between algorithms
pair_mat_c normalize_r(const pair_mat_c& r) {
  const int n = r.rows();
  pair_mat_c out = r;
  for (int i = 0; i < n; ++i) {
    split_c d = r.entry(i, i);
    cplx target = sqrt_half_plane(d.p() * d.q());
    if (std::abs(d.p()) < 1e-300 || std::abs(d.q()) < 1e-300) continue;
    split_c s = split_c::from_idempotent(target / d.p(), target / d.q());
    for (int j = 0; j < n; ++j) out.set_entry(i, j, r.entry(i, j) * s);
  }
  return out;
}

criterion c4_qr(rng_t& g) {
  criterion c;
  for (int t = 0; t < 100 && c.pass; ++t) {
    int n = rint(g, 2, 4);
    pair_mat_c m = qr_instance(g, n);
    mat_c ba = m.B * m.A;
    qr_result<cplx> fs[3];
    try {
      fs[0] = qr_components(m);
      fs[1] = qr_gram_schmidt(m);
      fs[2] = qr_householder(m);
    } catch (const error& e) {
      c.fail(std::string("qr raised: ") + e.what());
      break;
    }
    for (const auto& f : fs) {
      c.require(max_abs_diff(f.Q * f.R, m) <= 1e-8, "QR != M beyond 1e-8");
      c.require(max_abs_diff((f.Q.conj_transpose() * f.Q).A, mat_c::identity(n)) <= 1e-8 &&
                    max_abs_diff((f.Q.conj_transpose() * f.Q).B, mat_c::identity(n)) <= 1e-8,
                "Q*Q != I beyond 1e-8");
      c.require(max_abs_diff(f.R.B * f.R.A, ba) <= 1e-8, "unpacked R gives LU != BA beyond 1e-8");
    }
    pair_mat_c r0 = normalize_r(fs[0].R);
    pair_mat_c r1 = normalize_r(fs[1].R);
    pair_mat_c r2 = normalize_r(fs[2].R);
    double dd = std::max(max_abs_diff(r0, r1), max_abs_diff(r0, r2));
    c.require(dd <= 1e-8 * std::max(1.0, r0.max_abs()),
              "R factors disagree after diagonal normalization by " + std::to_string(dd));
  }
  return c;
}

// ---- criteria 5 and 6: jordan svd and the polar equivalence ----------------

criterion c5_jsvd(const std::vector<pair_mat_c>& instances) {
  criterion c;
  for (const auto& m : instances) {
    if (!c.pass) break;
    double scale = m.max_abs();
    try {
      auto s = jordan_svd(m);
      c.require(max_abs_diff(s.reconstruct(), m) <= 1e-6 * scale,
                "reconstruction residual above 1e-6*|M|");
      for (const auto& b : s.blocks)
        c.require(in_half_plane(b.lambda), "eigenvalue of J outside the half-plane");
      c.require(uniqueness_probe(m), "uniqueness probe found diverging block multisets");
    } catch (const error& e) {
      c.fail(std::string("jordan_svd raised: ") + e.what());
    }
  }
  return c;
}

criterion c6_polar(const std::vector<pair_mat_c>& instances) {
  criterion c;
  for (const auto& m : instances) {
    if (!c.pass) break;
    double scale = m.max_abs();
    try {
      auto s = jordan_svd(m);
      auto p = jsvd_to_polar(s);
      c.require(max_abs_diff(p.U * p.P, m) <= 1e-7 * scale, "U P != M beyond 1e-7");
      c.require(is_unitary(p.U, 1e-7 * scale) && is_hermitian(p.P, 1e-7 * scale),
                "polar factors lost their structure");
      auto s2 = polar_to_jsvd(p);
      c.require(max_abs_diff(s2.reconstruct(), m) <= 1e-7 * scale,
                "polar -> jordan svd direction misses M beyond 1e-7");
    } catch (const error& e) {
      c.fail(std::string("polar equivalence raised: ") + e.what());
    }
  }
  return c;
}

// ---- criterion 7: jordan blocks of the square root -------------------------

criterion c7_sqrt_blocks(rng_t& g) {
  criterion c;
  int generic = 0;
  while (generic < 30 && c.pass) {
    int n = rint(g, 1, 4);
    mat_c a = complexify(rand_invertible(g, n, -4, 4));
    auto eigs = eig_oracle(a);
    bool sep = true;
    for (size_t i = 0; i < eigs.size() && sep; ++i) {
      if (std::abs(eigs[i]) < 1e-2) sep = false;
      for (size_t j = i + 1; j < eigs.size() && sep; ++j)
        if (std::abs(eigs[i] - eigs[j]) < 1e-2) sep = false;
    }
    if (!sep) continue;
    ++generic;
    auto blocks = jordan_form(principal_sqrt(a)).blocks;
    std::vector<cplx> got, want;
    for (const auto& b : blocks) {
      got.push_back(b.lambda);
      c.require(b.size == 1, "generic matrix produced a nontrivial block");
    }
    for (const auto& z : eigs) want.push_back(sqrt_half_plane(z));
    c.require(multiset_close(got, want, 1e-6 * std::max(1.0, a.max_abs())),
              "sqrt blocks miss the half-plane roots of the spectrum");
  }
  for (int t = 0; t < 20 && c.pass; ++t) {
    // constructed defective cases: sizes <= 3, separated eigenvalues
    int n = rint(g, 2, 4);
    std::vector<jordan_block> want;
    int left = n;
    double base = rreal(g, 1.0, 2.0);
    while (left > 0) {
      int sz = std::min(rint(g, 1, 3), left);
      want.push_back({cplx(base, double(rint(g, -2, 2))), sz});
      base += rreal(g, 2.0, 4.0);
      left -= sz;
    }
    mat_c tmat = complexify(rand_invertible(g, n, -2, 2));
    mat_c a = tmat * assemble_jordan(want) * inverse(tmat);
    std::vector<jordan_block> expect;
    for (const auto& b : want) expect.push_back({sqrt_half_plane(b.lambda), b.size});
    try {
      auto got = jordan_form(principal_sqrt(a)).blocks;
      c.require(blocks_equal(got, expect, 1e-5 * std::max(1.0, a.max_abs())),
                "sqrt of a defective matrix has the wrong block multiset");
    } catch (const error& e) {
      c.fail(std::string("jnf-square-root case raised: ") + e.what());
    }
  }
  return c;
}

// ---- criterion 8: pseudoinverse --------------------------------------------

criterion c8_pinv(rng_t& g) {
  criterion c;
  for (int t = 0; t < 100 && c.pass; ++t) {
    int n = rint(g, 1, 4);
    pair_mat_c m = separated_pair(g, n, 1e-2);
    try {
      pair_mat_c x = pinv(m);
      pair_mat_c direct{inverse(m.A), inverse(m.B)};
      c.require(max_abs_diff(x, direct) <= 1e-7 * std::max(1.0, direct.max_abs()),
                "pinv of an invertible pair differs from [A^-1, B^-1]");
      c.require(penrose_check(m, x).all(), "a Penrose identity failed");
    } catch (const error& e) {
      c.fail(std::string("pinv raised: ") + e.what());
    }
  }
  // the rank-mismatch rejection, with the computed four ranks
  pair_mat_d bad{mat_d{{1, 0}, {0, 0}}, mat_d{{0, 0}, {1, 0}}};
  bool rejected = false;
  try {
    pinv(bad);
  } catch (const rank_mismatch_error& e) {
    rejected = true;
    // rank(A)=1, rank(B)=1, rank(AB)=0, rank(BA)=1
    c.require(e.ranks() == std::array<int, 4>{1, 1, 0, 1},
              "reported ranks are not (1,1,0,1)");
  } catch (const error&) {
  }
  c.require(rejected, "rank-mismatch instance was not rejected");
  return c;
}

// ---- criterion 9: counterexample instances ----------------------------------

criterion c9_counterexamples() {
  criterion c;
  pair_mat_d ce{mat_d::identity(2), mat_d{{0, 1}, {1, 0}}};
  c.require(!lup_restricted(ce).has_value(), "lup_restricted(I, swap) should be infeasible");

  auto m = yaglom::counterexample();
  auto cls = yaglom::classify(m);
  c.require(!cls.covered, "the counterexample should be NotCovered");
  c.require(yaglom::proposed_family_covers(m), "the proposed family must cover it");

  auto demo = yaglom::demo_invariants();
  c.require(demo.size() == 4, "demo should cover the four families");
  // diag(k, 1) class: real ratio
  {
    const auto& b = demo[0].second.blocks;
    c.require(b.size() == 2 && std::abs((b[1].lambda / b[0].lambda).imag()) < 1e-8,
              "first-kind invariant is not diag(k,1)-shaped");
  }
  // J2(2), literally
  {
    const auto& b = demo[1].second.blocks;
    c.require(demo[1].second.is_jordan2() && std::abs(b[0].lambda - 2.0) < 1e-6,
              "second-kind invariant is not J2(2)");
  }
  // diag(z, conj z)
  {
    const auto& b = demo[2].second.blocks;
    c.require(b.size() == 2 && std::abs(b[1].lambda - std::conj(b[0].lambda)) < 1e-6,
              "third-kind invariant is not a conjugate pair");
  }
  // diag(c(1-i)/sqrt2, c(1+i)/sqrt2): perpendicular pair of equal modulus
  {
    const auto& b = demo[3].second.blocks;
    bool ok = b.size() == 2;
    if (ok) {
      cplx rho = b[1].lambda / b[0].lambda;
      ok = std::abs(rho.real()) < 1e-6 && std::abs(std::abs(rho) - 1.0) < 1e-6;
    }
    c.require(ok, "fourth-kind invariant is not the perpendicular equal-modulus pair");
  }
  return c;
}

// ---- criterion 10: pivoted analogues ----------------------------------------

criterion c10_pivoted(rng_t& g) {
  criterion c;
  for (int t = 0; t < 100 && c.pass; ++t) {
    int n = rint(g, 1, 5);
    mat_d a = rand_int_mat(g, n, -4, 4);
    if (t % 4 == 0 && n > 1)
      for (int j = 0; j < n; ++j) a(n - 1, j) = a(0, j);  // rank-deficient slice
    auto f = bkp_double(pair_mat_d{a, a});
    mat_d paq = f.perm.P.apply_rows(a) * f.perm.Q.to_matrix<double>();
    c.require(max_abs_diff(paq, f.L * f.D * f.U) <= 1e-8 * std::max(1.0, a.max_abs()),
              "bkp reconstruction beyond 1e-8");
  }
  for (int t = 0; t < 100 && c.pass; ++t) {
    int n = rint(g, 2, 4);
    pair_mat_d m{rand_invertible(g, n, -4, 4), rand_invertible(g, n, -4, 4)};
    try {
      auto f = rrqr_double(m);
      c.require(max_abs_diff(m * f.perm.to_pair<double>(), f.Q * f.R) <=
                    1e-8 * std::max(1.0, m.max_abs()),
                "rrqr reconstruction beyond 1e-8");
      c.require(is_unitary(f.Q, 1e-8 * std::max(1.0, m.max_abs())), "rrqr Q lost unitarity");
    } catch (const error& e) {
      c.fail(std::string("rrqr raised: ") + e.what());
    }
  }
  // the instance where the unpivoted algorithm provably stalls
  pair_mat_d hard{mat_d::identity(2), mat_d{{0, 1}, {1, 0}}};
  bool pf = false;
  try {
    qr_components(hard);
  } catch (const error& e) {
    pf = (e.code() == errc::pivot_failure);
  }
  c.require(pf, "qr_components(I, swap) should raise pivot_failure");
  try {
    auto f = rrqr_double(hard);
    c.require(max_abs_diff(hard * f.perm.to_pair<double>(), f.Q * f.R) <= 1e-10,
              "rrqr fails on the qr_components counterexample");
  } catch (const error& e) {
    c.fail(std::string("rrqr raised on the counterexample: ") + e.what());
  }
  return c;
}

}  // namespace

bool run_acceptance(std::ostream& out, uint64_t seed) {
  struct row {
    const char* name;
    criterion result;
  };
  std::vector<row> rows;

  {
    rng_t g(seed + 1);
    rows.push_back({"algebra identities (500 random scalar/matrix instances)", c1_algebra(g)});
  }
  {
    rng_t g(seed + 2);
    rows.push_back({"LDL -> LDU reduction vs component ldu (200 instances)", c2_ldu(g)});
  }
  {
    rng_t g(seed + 3);
    rows.push_back({"LR-SVD diagonal vs eigen/singular value oracles (100+100)", c3_svd_lr(g)});
  }
  {
    rng_t g(seed + 4);
    rows.push_back({"three QR routes: QR=M, Q*Q=I, LU=BA, R agreement (100)", c4_qr(g)});
  }
  std::vector<pair_mat_c> shared;
  {
    rng_t g(seed + 5);
    for (int t = 0; t < 100; ++t) shared.push_back(separated_pair(g, rint(g, 1, 4), 1e-2));
  }
  rows.push_back({"jordan svd: residual, half-plane, uniqueness (100)", c5_jsvd(shared)});
  rows.push_back({"polar <-> jordan svd equivalence, both directions (100)", c6_polar(shared)});
  {
    rng_t g(seed + 7);
    rows.push_back({"square-root jordan block multisets (50)", c7_sqrt_blocks(g)});
  }
  {
    rng_t g(seed + 8);
    rows.push_back({"pseudoinverse: inverse agreement, Penrose, rank gate (100)", c8_pinv(g)});
  }
  rows.push_back({"counterexample instances: restricted LUP, yaglom classifier", c9_counterexamples()});
  {
    rng_t g(seed + 10);
    rows.push_back({"pivoted analogues: bkp + rrqr reconstruction (200)", c10_pivoted(g)});
  }

  bool all = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    bool p = rows[i].result.pass;
    all = all && p;
    out << "[" << (i + 1 < 10 ? " " : "") << i + 1 << "/10] " << (p ? "PASS" : "FAIL") << "  "
        << rows[i].name;
    if (!p) out << " -- " << rows[i].result.detail;
    out << "\n";
  }
  out << (all ? "RESULT: 10/10 criteria passed\n"
              : "RESULT: acceptance suite FAILED\n");
  return all;
}

}  // namespace doublemat
