#include "doublemat/jordan_svd.hpp"

#include <algorithm>
#include <cmath>

namespace doublemat {

namespace {

// Cluster centers re-derived through jordan_form drift off the branch
// boundary by rounding; snap them back so in_half_plane stays exact.
std::vector<jordan_block> snap_boundary(std::vector<jordan_block> blocks, double tol) {
  for (auto& b : blocks)
    if (std::abs(b.lambda.real()) <= tol) b.lambda = cplx(0.0, b.lambda.imag());
  return blocks;
}

jordan_svd_result assemble_from_root(const pair_mat_c& m, const mat_c& root,
                                     double recon_tol) {
  const double scale = std::max(1.0, m.max_abs());
  jordan_form_result jf = jordan_form(root);
  jf.blocks = snap_boundary(std::move(jf.blocks), 1e-9 * std::max(1.0, root.max_abs()));
  mat_c j = assemble_jordan(jf.blocks);
  mat_c q = solve(m.A, jf.P * j);
  jordan_svd_result s{{jf.P, inverse(jf.P)}, {q, inverse(q)}, std::move(jf.blocks)};
  double resid = max_abs_diff(s.reconstruct(), m);
  if (resid > recon_tol * scale)
    throw error(errc::reconstruction_failure,
                "jordan svd residual " + std::to_string(resid) +
                    " exceeds tolerance; similarity transform may be ill-conditioned");
  if (!is_unitary(s.U, 1e-8 * scale) || !is_unitary(s.V, 1e-8 * scale))
    throw error(errc::reconstruction_failure, "constructed factors drifted from unitarity");
  return s;
}

}  // namespace

jordan_svd_result jordan_svd(const pair_mat_c& m, double recon_tol) {
  if (!m.square()) throw error(errc::dimension_mismatch, "jordan_svd needs a square matrix");
  if (!is_invertible(m.A)) throw error(errc::singular, "component A is singular");
  if (!is_invertible(m.B)) throw error(errc::singular, "component B is singular");
  mat_c root = principal_sqrt(m.A * m.B);
  return assemble_from_root(m, root, recon_tol);
}

jordan_svd_result normalize_half_plane(const jordan_svd_result& s) {
  const int n = s.U.rows();
  bool any = false;
  for (const auto& b : s.blocks)
    if (!in_half_plane(b.lambda)) any = true;
  if (!any) return s;

  // Sigma is -1 on offending blocks, +1 elsewhere; [Sigma, Sigma] is both
  // Hermitian and unitary, and commutes blockwise with J.
  mat_c sigma(n, n);
  int at = 0;
  for (const auto& b : s.blocks) {
    double sgn = in_half_plane(b.lambda) ? 1.0 : -1.0;
    for (int i = 0; i < b.size; ++i) sigma(at + i, at + i) = sgn;
    at += b.size;
  }
  mat_c jflip = sigma * s.J();
  jordan_form_result jf = jordan_form(jflip);
  jf.blocks = snap_boundary(std::move(jf.blocks), 1e-9 * std::max(1.0, jflip.max_abs()));
  pair_mat_c sig_pair{sigma, sigma};
  pair_mat_c p2{jf.P, inverse(jf.P)};
  return {s.U * sig_pair * p2, s.V * p2, std::move(jf.blocks)};
}

polar_result jsvd_to_polar(const jordan_svd_result& s) {
  return {s.U * s.V.conj_transpose(), s.V * s.middle() * s.V.conj_transpose()};
}

polar_result polar(const pair_mat_c& m) { return jsvd_to_polar(jordan_svd(m)); }

jordan_svd_result polar_to_jsvd(const polar_result& p) {
  // P = [C,C]; Jordanize C and push the similarity into the unitary factors.
  mat_c c = p.P.A;
  jordan_form_result jf = jordan_form(c);
  pair_mat_c w{jf.P, inverse(jf.P)};
  return {p.U * w, w, jf.blocks};
}

penrose_report penrose_check(const pair_mat_c& m, const pair_mat_c& x, double tol) {
  if (m.rows() != x.cols() || m.cols() != x.rows())
    throw error(errc::dimension_mismatch, "penrose check shapes disagree");
  const double scale = std::max({1.0, m.max_abs(), x.max_abs()});
  pair_mat_c mx = m * x;
  pair_mat_c xm = x * m;
  penrose_report r;
  r.m_x_m = max_abs_diff(mx * m, m) <= tol * scale;
  r.x_m_x = max_abs_diff(xm * x, x) <= tol * scale;
  r.mx_herm = max_abs_diff(mx.A, mx.B) <= tol * scale;
  r.xm_herm = max_abs_diff(xm.A, xm.B) <= tol * scale;
  return r;
}

mat_c mp_pinv(const mat_c& a, double tol) {
  auto f = lu_complete_pivot(a, tol);
  const int n = a.rows();
  const int r = f.rank;
  if (r == 0) return mat_c(n, n);
  mat_c ld = f.L * f.D;
  mat_c fmat = f.P.inverse().apply_rows(ld.block(0, 0, n, r));
  mat_c gmat = f.U.block(0, 0, r, n) * col_perm_matrix<cplx>(f.Q).transpose();
  mat_c gg = gmat * gmat.conj_transpose();
  mat_c ff = fmat.conj_transpose() * fmat;
  return gmat.conj_transpose() * solve(gg, solve(ff, fmat.conj_transpose()));
}

namespace {

mat_c jordan_plus(const std::vector<jordan_block>& blocks, double zero_gate) {
  int n = 0;
  for (const auto& b : blocks) n += b.size;
  mat_c jp(n, n);
  int at = 0;
  for (const auto& b : blocks) {
    if (std::abs(b.lambda) <= zero_gate) {
      if (b.size > 1)
        throw error(errc::nilpotent_block, "nontrivial nilpotent jordan block in J^+");
      // 1x1 zero block inverts to zero
    } else {
      // inverse of J_k(lambda): alternating powers of -1/lambda
      cplx c = 1.0 / b.lambda;
      for (int d = 0; d < b.size; ++d) {
        for (int row = 0; row + d < b.size; ++row) jp(at + row, at + row + d) = c;
        c *= -1.0 / b.lambda;
      }
    }
    at += b.size;
  }
  return jp;
}

// Jordan SVD of a singular input with matching ranks: the same
// construction, with pseudo-inverted solves and a kernel completion that
// makes Q invertible.
jordan_svd_result jordan_svd_singular(const pair_mat_c& m, const std::array<int, 4>& ranks) {
  const int n = m.rows();
  const double scale = std::max(1.0, m.max_abs());
  mat_c ab = m.A * m.B;
  jordan_form_result jf_ab = jordan_form(ab);
  const double zero_gate = 1e-10 * std::max(1.0, ab.max_abs());
  for (const auto& b : jf_ab.blocks)
    if (std::abs(b.lambda) <= zero_gate && b.size > 1)
      throw error(errc::nilpotent_block,
                  "AB has a nontrivial nilpotent jordan block; no square root");
  mat_c root = sqrt_via_jordan(ab, true);
  jordan_form_result jf = jordan_form(root);
  jf.blocks = snap_boundary(std::move(jf.blocks), 1e-9 * std::max(1.0, root.max_abs()));
  mat_c j = assemble_jordan(jf.blocks);
  const double root_gate = 1e-9 * std::max(1.0, root.max_abs());

  mat_c pj = jf.P * j;
  mat_c apinv = mp_pinv(m.A);
  mat_c q0 = apinv * pj;
  if (max_abs_diff(m.A * q0, pj) > 1e-6 * scale)
    throw error(errc::reconstruction_failure, "A X = P J has no solution at this rank");

  // Z J = B P - Q0 J with A Z = 0; solved blockwise left to right.
  mat_c c = m.B * jf.P - q0 * j;
  mat_c z(n, n);
  std::vector<int> zero_cols;
  int at = 0;
  for (const auto& b : jf.blocks) {
    if (std::abs(b.lambda) <= root_gate) {
      for (int i = 0; i < b.size; ++i) {
        if (c.col(at + i).max_abs() > 1e-6 * scale)
          throw error(errc::reconstruction_failure, "B P = Q J is inconsistent on ker(J)");
        zero_cols.push_back(at + i);
      }
    } else {
      for (int i = 0; i < b.size; ++i) {
        mat_c rhs = c.col(at + i);
        if (i > 0) rhs = rhs - z.col(at + i - 1);
        z.set_col(at + i, rhs * (1.0 / b.lambda));
      }
    }
    at += b.size;
  }
  if ((m.A * z).max_abs() > 1e-6 * scale)
    throw error(errc::reconstruction_failure, "Q correction left the kernel of A");

  mat_c q = q0 + z;
  mat_c ker = nullspace(m.A);
  if (int(zero_cols.size()) != ker.cols())
    throw error(errc::reconstruction_failure, "kernel dimension does not match ker(J)");
  for (size_t t = 0; t < zero_cols.size(); ++t) {
    mat_c qc = q.col(zero_cols[t]) + ker.col(int(t));
    q.set_col(zero_cols[t], qc);
  }
  if (!is_invertible(q)) {
    // retry with sign-flipped kernel directions before giving up
    for (size_t t = 0; t < zero_cols.size() && !is_invertible(q); ++t) {
      mat_c qc = q.col(zero_cols[t]) - 2.0 * ker.col(int(t));
      q.set_col(zero_cols[t], qc);
    }
    if (!is_invertible(q))
      throw error(errc::reconstruction_failure, "could not complete Q to an invertible factor");
  }

  jordan_svd_result s{{jf.P, inverse(jf.P)}, {q, inverse(q)}, jf.blocks};
  if (max_abs_diff(s.reconstruct(), m) > jsvd_reconstruction_tol * scale)
    throw error(errc::reconstruction_failure, "singular jordan svd residual too large");
  (void)ranks;
  return s;
}

}  // namespace

pair_mat_c pinv(const pair_mat_c& m) {
  if (!m.square()) throw error(errc::dimension_mismatch, "pinv needs a square matrix");
  const int n = m.rows();
  std::array<int, 4> ranks{rank(m.A), rank(m.B), rank(m.A * m.B), rank(m.B * m.A)};
  if (!(ranks[0] == ranks[1] && ranks[1] == ranks[2] && ranks[2] == ranks[3]))
    throw rank_mismatch_error(ranks, "rank(A)=" + std::to_string(ranks[0]) +
                                         " rank(B)=" + std::to_string(ranks[1]) +
                                         " rank(AB)=" + std::to_string(ranks[2]) +
                                         " rank(BA)=" + std::to_string(ranks[3]) +
                                         " must all agree");
  jordan_svd_result s = (ranks[0] == n) ? jordan_svd(m) : jordan_svd_singular(m, ranks);
  const double zero_gate = 1e-10 * std::max(1.0, s.J().max_abs());
  mat_c jp = jordan_plus(s.blocks, zero_gate);
  return s.V * pair_mat_c{jp, jp} * s.U.conj_transpose();
}

bool blocks_equal(const std::vector<jordan_block>& x, const std::vector<jordan_block>& y,
                  double tol) {
  if (x.size() != y.size()) return false;
  std::vector<bool> used(y.size(), false);
  for (const auto& bx : x) {
    bool matched = false;
    for (size_t i = 0; i < y.size() && !matched; ++i) {
      if (used[i] || y[i].size != bx.size) continue;
      if (std::abs(y[i].lambda - bx.lambda) <= tol) {
        used[i] = true;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}

bool uniqueness_probe(const pair_mat_c& m) {
  jordan_svd_result base = jordan_svd(m);
  const double scale = std::max(1.0, m.max_abs());
  mat_c root = principal_sqrt(m.A * m.B);

  std::vector<mat_c> branches;
  branches.push_back(-root);
  jordan_form_result jf = jordan_form(root);
  if (jf.blocks.size() >= 2) {
    // flip only the first block
    const int n = root.rows();
    mat_c sigma(n, n);
    int at = 0;
    for (size_t bi = 0; bi < jf.blocks.size(); ++bi) {
      double sgn = (bi == 0) ? -1.0 : 1.0;
      for (int i = 0; i < jf.blocks[bi].size; ++i) sigma(at + i, at + i) = sgn;
      at += jf.blocks[bi].size;
    }
    branches.push_back(jf.P * (sigma * assemble_jordan(jf.blocks)) * inverse(jf.P));
  }

  for (const auto& alt : branches) {
    jordan_svd_result s = assemble_from_root(m, alt, jsvd_reconstruction_tol);
    jordan_svd_result norm = normalize_half_plane(s);
    if (max_abs_diff(norm.reconstruct(), m) > jsvd_reconstruction_tol * scale) return false;
    if (!blocks_equal(norm.blocks, base.blocks, 1e-6 * scale)) return false;
  }
  return true;
}

}  // namespace doublemat
