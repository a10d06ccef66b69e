#pragma once

#include <vector>

#include "doublemat/pair_matrix.hpp"
#include "doublemat/real_linalg.hpp"

namespace doublemat {

template <class F>
struct ldl_result {
  pair_mat<F> L;  // unit lower triangular (split sense)
  pair_mat<F> D;  // diagonal, Hermitian (equal components)
};

template <class F>
struct qr_result {
  pair_mat<F> Q;  // unitary (split sense)
  pair_mat<F> R;  // upper triangular (split sense): [U, L]
};

template <class F>
std::vector<split<F>> pair_col(const pair_mat<F>& m, int k) {
  std::vector<split<F>> v(m.rows());
  for (int i = 0; i < m.rows(); ++i) v[i] = m.entry(i, k);
  return v;
}

// u^* . v with the split conjugation.
template <class F>
split<F> split_dot(const std::vector<split<F>>& u, const std::vector<split<F>>& v) {
  split<F> acc{};
  for (size_t i = 0; i < u.size(); ++i) acc += u[i].conj() * v[i];
  return acc;
}

// LDL of a Hermitian split matrix M = L D L^* by the classical recurrences
//   D_j  = M_jj - sum_k L_jk L_jk^* D_k
//   L_ij = (M_ij - sum_k L_ik L_jk^* D_k) / D_j.
// Unpacking the components of [A,A] = [L,U][D,D][L,U]^* yields the LDU of A.
template <class F>
ldl_result<F> ldl_double(const pair_mat<F>& m, bool check_hermitian = true,
                         double zd_tol = zero_divisor_tol) {
  if (!m.square()) throw error(errc::dimension_mismatch, "ldl needs a square matrix");
  if (check_hermitian && !is_hermitian(m))
    throw error(errc::not_hermitian, "ldl input is not Hermitian (components differ)");
  const int n = m.rows();
  std::vector<std::vector<split<F>>> l(n, std::vector<split<F>>(n));
  std::vector<split<F>> d(n);
  for (int i = 0; i < n; ++i) l[i][i] = split<F>::one();
  for (int j = 0; j < n; ++j) {
    split<F> dj = m.entry(j, j);
    for (int k = 0; k < j; ++k) dj -= l[j][k] * l[j][k].conj() * d[k];
    if (is_zero_divisor(dj, zd_tol))
      throw error(errc::pivot_zero_divisor,
                  "pivot D[" + std::to_string(j) + "] is a zero divisor", j);
    d[j] = dj;
    split<F> dj_inv = inv(dj, zd_tol);
    for (int i = j + 1; i < n; ++i) {
      split<F> acc = m.entry(i, j);
      for (int k = 0; k < j; ++k) acc -= l[i][k] * l[j][k].conj() * d[k];
      l[i][j] = acc * dj_inv;
    }
  }
  pair_mat<F> lmat = pair_mat<F>::from_entries(l);
  pair_mat<F> dmat = pair_mat<F>::zeros(n, n);
  for (int j = 0; j < n; ++j) dmat.set_entry(j, j, d[j]);
  return {std::move(lmat), std::move(dmat)};
}

// LDU of a real (or complex) matrix obtained through the split reduction:
// run ldl_double on [A,A] and read the components back off.
template <class F>
ldu_result<F> ldu_via_double(const mat<F>& a, double zd_tol = zero_divisor_tol) {
  auto f = ldl_double(pair_mat<F>{a, a}, true, zd_tol);
  return {f.L.A, f.D.A, f.L.B};
}

// QR through the components: LU = BA, then A = CU and B = L C^{-1} by
// substitution; R = [U, L], Q = [C, C^{-1}]. Inherits LU's existence
// condition and surfaces it as pivot_failure (the pivoted variant lives in
// pivoted.hpp as rrqr_double). All three QR routes cost 8n^3/3 flops;
// counts are documented, not measured.
template <class F>
qr_result<F> qr_components(const pair_mat<F>& m) {
  if (!m.square()) throw error(errc::dimension_mismatch, "qr needs a square matrix");
  lu_result<F> f = lu(m.B * m.A);
  // C from A = C U: U^T C^T = A^T, forward substitution on the lower U^T;
  // C^{-1} from B = L C^{-1} directly.
  mat<F> c = solve_lower(f.U.transpose(), m.A.transpose()).transpose();
  mat<F> cinv = solve_unit_lower(f.L, m.B);
  return {pair_mat<F>{std::move(c), std::move(cinv)},
          pair_mat<F>{std::move(f.U), std::move(f.L)}};
}

// Split Householder reflector for a vector whose first entry has
// scabs > tol: H = I - 2 v v^* / (v^* v), mapping x onto a multiple of e1.
// H is Hermitian, unitary and an involution.
template <class F>
pair_mat<F> householder_reflection(const std::vector<split<F>>& x, double zd_tol = zero_divisor_tol) {
  const int n = int(x.size());
  // scabs(x_i) != 0 means x_i is not a zero divisor; numerically that is a
  // bound on min(|p|, |q|) relative to the column scale, not on the
  // geometric mean, which would let rounding dust through.
  double col_scale = 1.0;
  for (const auto& e : x)
    col_scale = std::max({col_scale, field_traits<F>::abs(e.p()), field_traits<F>::abs(e.q())});
  const double gate = zd_tol * col_scale;
  const double gate2 = zd_tol * col_scale * col_scale;
  int lead = -1;
  for (int i = 0; i < n; ++i)
    if (!is_zero_divisor(x[i], gate)) {
      lead = i;
      break;
    }
  if (lead < 0)
    throw error(errc::degenerate_column, "every entry of the working column is a zero divisor");
  if (lead != 0) {
    // rotate the usable entry into the leading slot first
    mat<F> rot = mat<F>::identity(n);
    rot(0, 0) = F(0);
    rot(lead, lead) = F(0);
    rot(lead, 0) = F(-1);
    rot(0, lead) = F(1);
    pair_mat<F> rpair = pair_mat<F>::embed(rot);
    std::vector<split<F>> rx(n);
    for (int i = 0; i < n; ++i) {
      split<F> acc{};
      for (int k = 0; k < n; ++k) acc += rpair.entry(i, k) * x[k];
      rx[i] = acc;
    }
    return householder_reflection(rx, zd_tol) * rpair;
  }
  auto norm_of = [&](const std::vector<split<F>>& v) {
    split<F> g = split_dot(v, v);
    if (is_zero_divisor(g, gate2))
      throw error(errc::zero_divisor_norm, "vector norm is a zero divisor");
    return split_sqrt(g);
  };
  split<F> n0 = norm_of({x[0]});
  split<F> nx = norm_of(x);
  // Any componentwise sign choice is a valid split square root; pick the
  // branch that keeps Re(|x| / |x0|) >= 0 per component so u = x - alpha e1
  // never cancels (the split transcription of the classical sign rule).
  F np = nx.p(), nq = nx.q();
  if (field_traits<F>::real_part(np / n0.p()) < 0.0) np = -np;
  if (field_traits<F>::real_part(nq / n0.q()) < 0.0) nq = -nq;
  nx = split<F>::from_idempotent(np, nq);
  split<F> alpha = -(x[0] * nx) * inv(n0, gate);
  std::vector<split<F>> u = x;
  u[0] -= alpha;
  split<F> un = norm_of(u);
  split<F> un_inv = inv(un, gate);
  std::vector<split<F>> v(n);
  for (int i = 0; i < n; ++i) v[i] = u[i] * un_inv;
  std::vector<std::vector<split<F>>> h(n, std::vector<split<F>>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      split<F> e = -(v[i] * v[k].conj() * split<F>{F(2), F(0)});
      if (i == k) e += split<F>::one();
      h[i][k] = e;
    }
  return pair_mat<F>::from_entries(h);
}

// Householder QR: reflectors (with the rotation fallback for zero-divisor
// leading entries) applied column by column; the trailing 1x1 reflector is
// the sign flip -1, as in the component algorithms.
template <class F>
qr_result<F> qr_householder(const pair_mat<F>& m, double zd_tol = zero_divisor_tol) {
  if (!m.square()) throw error(errc::dimension_mismatch, "qr needs a square matrix");
  const int n = m.rows();
  pair_mat<F> r = m;
  pair_mat<F> q = pair_mat<F>::identity(n);
  for (int k = 0; k < n; ++k) {
    std::vector<split<F>> x(n - k);
    for (int i = k; i < n; ++i) x[i - k] = r.entry(i, k);
    pair_mat<F> hsub;
    try {
      hsub = householder_reflection(x, zd_tol);
    } catch (const error& e) {
      if (e.code() == errc::degenerate_column)
        throw error(errc::degenerate_column,
                    "column " + std::to_string(k) + ": every usable entry is a zero divisor", k);
      throw;
    }
    pair_mat<F> h = pair_mat<F>::identity(n);
    h.A.set_block(k, k, hsub.A);
    h.B.set_block(k, k, hsub.B);
    r = h * r;
    q = q * h.conj_transpose();
  }
  // the transforms leave sub-diagonal dust of order eps; clear it
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) r.set_entry(i, j, split<F>{});
  return {std::move(q), std::move(r)};
}

// Classical Gram-Schmidt with the split inner product; columns are
// normalized by (u^* u)^{-1/2}.
template <class F>
qr_result<F> qr_gram_schmidt(const pair_mat<F>& m, double zd_tol = zero_divisor_tol) {
  if (!m.square()) throw error(errc::dimension_mismatch, "qr needs a square matrix");
  const int n = m.rows();
  std::vector<std::vector<split<F>>> u(n);
  std::vector<std::vector<split<F>>> q(n);
  for (int k = 0; k < n; ++k) {
    std::vector<split<F>> col = pair_col(m, k);
    for (int j = 0; j < k; ++j) {
      split<F> g = split_dot(u[j], u[j]);
      split<F> coef = split_dot(u[j], col) * inv(g, zd_tol);
      for (int i = 0; i < n; ++i) col[i] -= u[j][i] * coef;
    }
    u[k] = col;
    split<F> g = split_dot(col, col);
    if (is_zero_divisor(g, zd_tol))
      throw error(errc::zero_divisor_norm,
                  "column " + std::to_string(k) + " has zero-divisor split norm", k);
    split<F> scale = inv(split_sqrt(g), zd_tol);
    q[k].resize(n);
    for (int i = 0; i < n; ++i) q[k][i] = col[i] * scale;
  }
  std::vector<std::vector<split<F>>> qgrid(n, std::vector<split<F>>(n));
  std::vector<std::vector<split<F>>> rgrid(n, std::vector<split<F>>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) qgrid[i][k] = q[k][i];
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) rgrid[i][j] = split_dot(q[i], pair_col(m, j));
  return {pair_mat<F>::from_entries(qgrid), pair_mat<F>::from_entries(rgrid)};
}

// LR iteration for singular values: M <- D^{1/2} L^* L D^{1/2} with
// (L, D) = LDL(M), starting from M^* M, for a fixed iteration count (no
// convergence detection; the count is the caller's knob). The returned
// diagonal is D^{1/2} of the last sweep; its square tracks the eigenvalues
// of the components of M^* M, i.e. of BA. Flop count per sweep matches the
// componentwise LR pass.
template <class F>
pair_mat<F> svd_lr(const pair_mat<F>& m, int iters = 20, double zd_tol = zero_divisor_tol) {
  if (iters < 1) throw error(errc::invalid_param, "svd_lr needs iters >= 1");
  if (!m.square()) throw error(errc::dimension_mismatch, "svd_lr needs a square matrix");
  const int n = m.rows();
  pair_mat<F> work = m.conj_transpose() * m;
  pair_mat<F> droot = pair_mat<F>::identity(n);
  for (int it = 0; it < iters; ++it) {
    ldl_result<F> f = ldl_double(work, false, zd_tol);
    droot = pair_mat<F>::zeros(n, n);
    for (int j = 0; j < n; ++j) droot.set_entry(j, j, split_sqrt(f.D.entry(j, j)));
    work = droot * (f.L.conj_transpose() * f.L) * droot;
  }
  return droot;
}

struct polar_result {
  pair_mat_c U;  // unitary
  pair_mat_c P;  // Hermitian; first component squared is similar to BA
};

// Algebraic polar decomposition M = U P through the Jordan SVD
// construction (U = W V^*, P = V [J,J] V^*). Needs both components
// invertible. Defined in jordan_svd.cpp.
polar_result polar(const pair_mat_c& m);
inline polar_result polar(const pair_mat_d& m) { return polar(complexify(m)); }

}  // namespace doublemat
