#pragma once

#include <vector>

#include "doublemat/matrix.hpp"

namespace doublemat {

// Pivot magnitudes at or below pivot_tol * max(1, scale) fail the
// no-pivoting factorizations.
inline constexpr double pivot_tol = 1e-12;
// Rank decisions under complete pivoting.
inline constexpr double rank_tol = 1e-8;
// Relative eigenvalue clustering radius for the Jordan machinery. A
// defective block of size k smears its computed eigenvalue by roughly
// eps^(1/k), so the radius has to sit well above that for k <= 4.
inline constexpr double cluster_tol = 1e-4;
// Residual gate on P*J*P^{-1} = A.
inline constexpr double jordan_residual_tol = 1e-6;

inline constexpr int eigen_max_n = 8;

template <class F>
struct lu_result {
  mat<F> L;  // unit lower
  mat<F> U;  // upper
};

template <class F>
struct ldu_result {
  mat<F> L;  // unit lower
  mat<F> D;  // diagonal
  mat<F> U;  // unit upper
};

template <class F>
struct lup_result {
  perm P;    // P*A = L*U
  mat<F> L;  // unit lower
  mat<F> U;  // upper
};

template <class F>
struct complete_pivot_result {
  perm P;    // rows
  perm Q;    // cols; P*A*Q = L*D*U
  mat<F> L;  // unit lower
  mat<F> D;  // diagonal
  mat<F> U;  // unit upper
  int rank = 0;
};

// Doolittle elimination without pivoting. Requires every leading principal
// minor nonzero; pivot_failure names the first failing minor (1-based
// order, LAPACK style).
template <class F>
lu_result<F> lu(const mat<F>& a, double tol = pivot_tol) {
  if (!a.square()) throw error(errc::dimension_mismatch, "lu needs a square matrix");
  const int n = a.rows();
  const double gate = tol * std::max(1.0, a.max_abs());
  mat<F> u = a;
  mat<F> l = mat<F>::identity(n);
  for (int k = 0; k < n; ++k) {
    if (field_traits<F>::abs(u(k, k)) <= gate) {
      throw error(errc::pivot_failure,
                  "leading principal minor of order " + std::to_string(k + 1) + " is singular",
                  k + 1);
    }
    for (int i = k + 1; i < n; ++i) {
      F m = u(i, k) / u(k, k);
      l(i, k) = m;
      u(i, k) = F(0);
      for (int j = k + 1; j < n; ++j) u(i, j) -= m * u(k, j);
    }
  }
  return {std::move(l), std::move(u)};
}

template <class F>
ldu_result<F> ldu(const mat<F>& a, double tol = pivot_tol) {
  lu_result<F> f = lu(a, tol);
  const int n = a.rows();
  mat<F> d(n, n), u = mat<F>::identity(n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = f.U(i, i);
    for (int j = i + 1; j < n; ++j) u(i, j) = f.U(i, j) / f.U(i, i);
  }
  return {std::move(f.L), std::move(d), std::move(u)};
}

// Partial-pivoting P*A = L*U; total (rank-deficient inputs included: a
// structurally zero column is skipped).
template <class F>
lup_result<F> lup(const mat<F>& a) {
  if (!a.square()) throw error(errc::dimension_mismatch, "lup needs a square matrix");
  const int n = a.rows();
  mat<F> u = a;
  mat<F> l = mat<F>::identity(n);
  perm p(n);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = field_traits<F>::abs(u(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = field_traits<F>::abs(u(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(u(k, j), u(piv, j));
      for (int j = 0; j < k; ++j) std::swap(l(k, j), l(piv, j));
      p.swap(k, piv);
    }
    if (best == 0.0) continue;
    for (int i = k + 1; i < n; ++i) {
      F m = u(i, k) / u(k, k);
      l(i, k) = m;
      u(i, k) = F(0);
      for (int j = k + 1; j < n; ++j) u(i, j) -= m * u(k, j);
    }
  }
  return {std::move(p), std::move(l), std::move(u)};
}

// Complete-pivoting P*A*Q = L*D*U with 1x1 pivots; always succeeds and
// reveals rank as the number of pivots above tol * max(1, |A|).
template <class F>
complete_pivot_result<F> lu_complete_pivot(const mat<F>& a, double tol = rank_tol) {
  if (!a.square()) throw error(errc::dimension_mismatch, "complete pivoting needs a square matrix");
  const int n = a.rows();
  const double gate = tol * std::max(1.0, a.max_abs());
  mat<F> w = a;
  mat<F> l = mat<F>::identity(n);
  perm p(n), q(n);
  int r = 0;
  for (int k = 0; k < n; ++k) {
    int pi = k, pj = k;
    double best = 0.0;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j) {
        double v = field_traits<F>::abs(w(i, j));
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best <= gate) break;
    if (pi != k) {
      for (int j = 0; j < n; ++j) std::swap(w(k, j), w(pi, j));
      for (int j = 0; j < k; ++j) std::swap(l(k, j), l(pi, j));
      p.swap(k, pi);
    }
    if (pj != k) {
      for (int i = 0; i < n; ++i) std::swap(w(i, k), w(i, pj));
      q.swap(k, pj);
    }
    for (int i = k + 1; i < n; ++i) {
      F m = w(i, k) / w(k, k);
      l(i, k) = m;
      w(i, k) = F(0);
      for (int j = k + 1; j < n; ++j) w(i, j) -= m * w(k, j);
    }
    ++r;
  }
  mat<F> d(n, n), u = mat<F>::identity(n);
  for (int i = 0; i < r; ++i) {
    d(i, i) = w(i, i);
    for (int j = i + 1; j < n; ++j) u(i, j) = w(i, j) / w(i, i);
  }
  // Q stored as a column permutation: result perm maps A's columns so that
  // (P*A*Q)(i,j) = A(p[i], qcols[j]) with qcols = q.idx.
  complete_pivot_result<F> res;
  res.P = std::move(p);
  res.Q = std::move(q);
  res.L = std::move(l);
  res.D = std::move(d);
  res.U = std::move(u);
  res.rank = r;
  return res;
}

// Matrix form of the column permutation in lu_complete_pivot: A*Qm has
// column j equal to A's column Q.idx[j], i.e. Qm = Q.to_matrix().transpose().
template <class F>
mat<F> col_perm_matrix(const perm& q) {
  return q.to_matrix<F>().transpose();
}

template <class F>
int rank(const mat<F>& a, double tol = rank_tol) {
  if (a.square()) return lu_complete_pivot(a, tol).rank;
  // Rectangular: pad to square with zeros.
  int n = std::max(a.rows(), a.cols());
  mat<F> w(n, n);
  w.set_block(0, 0, a);
  return lu_complete_pivot(w, tol).rank;
}

// Solve L*X = B with L unit lower triangular.
template <class F>
mat<F> solve_unit_lower(const mat<F>& l, const mat<F>& b) {
  const int n = l.rows();
  mat<F> x = b;
  for (int c = 0; c < b.cols(); ++c)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < i; ++k) x(i, c) -= l(i, k) * x(k, c);
  return x;
}

// Solve L*X = B with L lower triangular (invertible, not unit).
template <class F>
mat<F> solve_lower(const mat<F>& l, const mat<F>& b, double tol = pivot_tol) {
  const int n = l.rows();
  const double gate = tol * std::max(1.0, l.max_abs());
  mat<F> x = b;
  for (int c = 0; c < b.cols(); ++c)
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < i; ++k) x(i, c) -= l(i, k) * x(k, c);
      if (field_traits<F>::abs(l(i, i)) <= gate)
        throw error(errc::singular, "lower triangular solve hit a negligible diagonal");
      x(i, c) /= l(i, i);
    }
  return x;
}

// Solve U*X = B with U upper triangular (invertible).
template <class F>
mat<F> solve_upper(const mat<F>& u, const mat<F>& b, double tol = pivot_tol) {
  const int n = u.rows();
  const double gate = tol * std::max(1.0, u.max_abs());
  mat<F> x = b;
  for (int c = 0; c < b.cols(); ++c)
    for (int i = n - 1; i >= 0; --i) {
      for (int k = i + 1; k < n; ++k) x(i, c) -= u(i, k) * x(k, c);
      if (field_traits<F>::abs(u(i, i)) <= gate)
        throw error(errc::singular, "upper triangular solve hit a negligible diagonal");
      x(i, c) /= u(i, i);
    }
  return x;
}

template <class F>
mat<F> solve(const mat<F>& a, const mat<F>& b) {
  lup_result<F> f = lup(a);
  return solve_upper(f.U, solve_unit_lower(f.L, f.P.apply_rows(b)));
}

template <class F>
mat<F> inverse(const mat<F>& a) {
  return solve(a, mat<F>::identity(a.rows()));
}

template <class F>
F det(const mat<F>& a) {
  lup_result<F> f = lup(a);
  F d(1);
  for (int i = 0; i < a.rows(); ++i) d *= f.U(i, i);
  // permutation sign
  std::vector<int> v = f.P.idx;
  int swaps = 0;
  for (int i = 0; i < int(v.size()); ++i)
    while (v[i] != i) {
      std::swap(v[i], v[v[i]]);
      ++swaps;
    }
  return (swaps % 2) ? -d : d;
}

template <class F>
bool is_invertible(const mat<F>& a, double tol = rank_tol) {
  return a.square() && lu_complete_pivot(a, tol).rank == a.rows();
}

// Orthonormal basis (columns) of the nullspace of A at the given relative
// rank tolerance.
mat_c nullspace(const mat_c& a, double tol = rank_tol);

struct jordan_block {
  cplx lambda;
  int size = 1;
  bool operator==(const jordan_block&) const = default;
};

// Assembles the block-diagonal Jordan matrix from an ordered block list.
mat_c assemble_jordan(const std::vector<jordan_block>& blocks);

struct jordan_form_result {
  mat_c P;  // invertible similarity: A = P * J * P^{-1}
  std::vector<jordan_block> blocks;
  mat_c J() const { return assemble_jordan(blocks); }
};

// Eigenvalues with multiplicity via Hessenberg reduction followed by
// unshifted-then-shifted QR iteration; n <= n_max.
std::vector<cplx> eigenvalues(const mat_c& a, int n_max = eigen_max_n);

// Jordan normal form by the staircase method: chains from nullspaces of
// (A - lambda*I)^k. Eigenvalue clusters are ordered lexicographically by
// (Re, Im); blocks within a cluster by decreasing size. Throws
// cluster_ambiguity when the spectrum cannot be reliably clustered --
// Jordan structure is discontinuous, so everything here is conditional on
// spectral separation.
jordan_form_result jordan_form(const mat_c& a);

// Principal matrix square root via the Jordan form: the branch whose
// eigenvalues lie in the half-plane {Re > 0} u {Re = 0, Im >= 0}.
mat_c principal_sqrt(const mat_c& a);

// Blockwise square root through the Jordan form. With allow_singular, a
// zero eigenvalue block of size 1 maps to zero and larger ones are
// rejected (nilpotent_block); without it any negligible eigenvalue throws
// singular.
mat_c sqrt_via_jordan(const mat_c& a, bool allow_singular);

// The half-plane H that fixes the square root branch.
bool in_half_plane(const cplx& z);

// sqrt with the branch normalized into H.
cplx sqrt_half_plane(const cplx& z);

}  // namespace doublemat
