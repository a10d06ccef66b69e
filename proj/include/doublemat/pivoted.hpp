#pragma once

#include <algorithm>
#include <optional>

#include "doublemat/decompositions.hpp"

namespace doublemat {

// Pair of ordinary permutations acting as the split permutation matrix
// [P,Q]; composition follows the pair product rule [P,Q][P',Q'] = [PP', Q'Q].
struct perm_pair {
  perm P;
  perm Q;

  perm_pair() = default;
  perm_pair(perm p, perm q) : P(std::move(p)), Q(std::move(q)) {}
  static perm_pair identity(int n) { return {perm(n), perm(n)}; }

  perm_pair compose(const perm_pair& o) const { return {P.compose(o.P), o.Q.compose(Q)}; }

  template <class F>
  pair_mat<F> to_pair() const {
    return {P.to_matrix<F>(), Q.to_matrix<F>()};
  }

  // [P,Q]^* [P,Q] = [QP, QP]: unitary in the split sense iff Q = P^{-1}.
  bool is_unitary_pair() const { return Q.compose(P) == perm(P.size()); }

  bool operator==(const perm_pair&) const = default;
};

// LU by elimination that skips a pivot only when everything below it is
// negligible too; returns nothing when elimination is stuck, which is
// exactly the no-LU case.
template <class F>
std::optional<lu_result<F>> lu_if_exists(const mat<F>& a, double tol = pivot_tol) {
  const int n = a.rows();
  const double gate = tol * std::max(1.0, a.max_abs());
  mat<F> u = a;
  mat<F> l = mat<F>::identity(n);
  for (int k = 0; k < n; ++k) {
    if (field_traits<F>::abs(u(k, k)) <= gate) {
      for (int i = k + 1; i < n; ++i)
        if (field_traits<F>::abs(u(i, k)) > gate) return std::nullopt;
      continue;
    }
    for (int i = k + 1; i < n; ++i) {
      F m = u(i, k) / u(k, k);
      l(i, k) = m;
      u(i, k) = F(0);
      for (int j = k + 1; j < n; ++j) u(i, j) -= m * u(k, j);
    }
  }
  return lu_result<F>{std::move(l), std::move(u)};
}

template <class F>
struct lup_restricted_result {
  pair_mat<F> lower;  // [L1, U1]
  pair_mat<F> upper;  // [U2, L2]
  perm P;             // restricted permutation pair [P, P^{-1}]
};

// Searches every permutation P for A = L1 U2 P and B = P^{-1} L2 U1, the
// factorization forced by insisting the permutation factor be [P, P^{-1}].
// Infeasible inputs (the I/swap pair) come back empty. Exhaustive, n <= 6.
template <class F>
std::optional<lup_restricted_result<F>> lup_restricted(const pair_mat<F>& m,
                                                       double tol = pivot_tol) {
  if (!m.square()) throw error(errc::dimension_mismatch, "lup_restricted needs a square matrix");
  const int n = m.rows();
  if (n > 6) throw error(errc::invalid_param, "lup_restricted searches n! permutations; n <= 6");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end());
  do {
    perm p(idx);
    mat<F> pinv_m = p.inverse().template to_matrix<F>();
    mat<F> ap = m.A * pinv_m;            // A P^{-1}
    mat<F> pb = p.template to_matrix<F>() * m.B;  // P B
    auto f1 = lu_if_exists(ap, tol);
    if (!f1) continue;
    auto f2 = lu_if_exists(pb, tol);
    if (!f2) continue;
    return lup_restricted_result<F>{
        pair_mat<F>{f1->L, f2->U},  // [L1, U1]
        pair_mat<F>{f1->U, f2->L},  // [U2, L2]
        p};
  } while (std::next_permutation(idx.begin(), idx.end()));
  return std::nullopt;
}

template <class F>
struct lup_general_result {
  pair_mat<F> lower;  // [L1, U1]
  pair_mat<F> upper;  // [U2, L2]
  perm_pair perm;     // [P, Q]; M = lower * upper * [P, Q]
};

// With the permutation factor widened to an arbitrary pair [P,Q], the split
// LUP is just the componentwise pivoted factorization; always succeeds.
template <class F>
lup_general_result<F> lup_general(const pair_mat<F>& m) {
  if (!m.square()) throw error(errc::dimension_mismatch, "lup_general needs a square matrix");
  // A = L1 U2 P from the transposed row-pivoted factorization of A^T.
  lup_result<F> fa = lup(m.A.transpose());
  mat<F> l1 = fa.U.transpose();
  mat<F> u2 = fa.L.transpose();
  // B = Q L2 U1 directly from P_B B = L_B U_B.
  lup_result<F> fb = lup(m.B);
  return {pair_mat<F>{std::move(l1), fb.U},
          pair_mat<F>{std::move(u2), fb.L},
          perm_pair{fa.P, fb.P.inverse()}};
}

template <class F>
struct bkp_result {
  perm_pair perm;  // components of [P,Q][A,A][Q,P] = [L,U][D,D][U,L]
  mat<F> L;        // unit lower
  mat<F> D;        // diagonal; nonzero count reveals rank
  mat<F> U;        // unit upper
};

// Pivoted LDL analogue for Hermitian split matrices, taken componentwise:
// P A Q = L D U under complete pivoting with 1x1 pivots. (The 2x2-block
// pivot variant of the component decomposition is not reproduced; complete
// pivoting already guarantees existence.)
template <class F>
bkp_result<F> bkp_double(const pair_mat<F>& m, double tol = pair_compare_tol) {
  if (!is_hermitian(m, tol))
    throw error(errc::not_hermitian, "bkp needs a Hermitian split matrix");
  complete_pivot_result<F> f = lu_complete_pivot(m.A);
  return {perm_pair{f.P, f.Q.inverse()}, std::move(f.L), std::move(f.D), std::move(f.U)};
}

template <class F>
struct rrqr_result {
  perm_pair perm;  // [Pi1, Pi2]; M * [Pi1, Pi2] = Q * R
  pair_mat<F> Q;   // unitary [C, C^{-1}]
  pair_mat<F> R;   // upper triangular [U, L] with Pi2 B A Pi1 = L U
};

// Rank-revealing QR analogue: pick the permutations from the pivoted LU of
// the product BA, then recover C by substitution. Succeeds where the
// unpivoted qr_components stalls.
template <class F>
rrqr_result<F> rrqr_double(const pair_mat<F>& m) {
  if (!m.square()) throw error(errc::dimension_mismatch, "rrqr needs a square matrix");
  if (!is_invertible(m.A) || !is_invertible(m.B))
    throw error(errc::singular, "rrqr needs both components invertible");
  complete_pivot_result<F> f = lu_complete_pivot(m.B * m.A);
  mat<F> ufull = f.D * f.U;  // upper, invertible since BA is
  mat<F> pi1 = col_perm_matrix<F>(f.Q);
  mat<F> c = solve_lower(ufull.transpose(), (m.A * pi1).transpose()).transpose();
  mat<F> cinv = solve_unit_lower(f.L, f.P.apply_rows(m.B));
  return {perm_pair{f.Q.inverse(), f.P},
          pair_mat<F>{std::move(c), std::move(cinv)},
          pair_mat<F>{std::move(ufull), f.L}};
}

}  // namespace doublemat
