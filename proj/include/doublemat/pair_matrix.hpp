#pragma once

#include <vector>

#include "doublemat/matrix.hpp"

namespace doublemat {

// Default comparison tolerance for the matrix family predicates (max-abs
// entrywise), overridable per call.
inline constexpr double pair_compare_tol = 1e-9;

// A split (double or double-complex) matrix in the pair representation
// M = [A,B] = A*(1+j)/2 + B^T*(1-j)/2. B is stored untransposed, exactly
// the B of [A,B], so the calculus is the literal
//   [A,B] + [C,D] = [A+C, B+D]
//   [A,B] * [C,D] = [AC, DB]
//   [A,B]^*       = [B,A].
// Entry (i,k) has idempotent components (A(i,k), B(k,i)).
template <class F>
struct pair_mat {
  mat<F> A;
  mat<F> B;

  pair_mat() = default;
  pair_mat(mat<F> a, mat<F> b) : A(std::move(a)), B(std::move(b)) {
    if (A.rows() != B.cols() || A.cols() != B.rows())
      throw error(errc::dimension_mismatch, "pair components must have transposed shapes");
  }

  static pair_mat identity(int n) { return {mat<F>::identity(n), mat<F>::identity(n)}; }
  static pair_mat zeros(int rows, int cols) { return {mat<F>(rows, cols), mat<F>(cols, rows)}; }

  // Embeds a base-field matrix: real/complex matrices are exactly those of
  // the form [A, A^T].
  static pair_mat embed(const mat<F>& a) { return {a, a.transpose()}; }

  int rows() const { return A.rows(); }
  int cols() const { return A.cols(); }
  bool square() const { return A.square(); }

  split<F> entry(int i, int k) const {
    return split<F>::from_idempotent(A(i, k), B(k, i));
  }

  void set_entry(int i, int k, const split<F>& x) {
    A(i, k) = x.p();
    B(k, i) = x.q();
  }

  static pair_mat from_entries(const std::vector<std::vector<split<F>>>& grid) {
    int r = int(grid.size());
    int c = r ? int(grid[0].size()) : 0;
    pair_mat m = zeros(r, c);
    for (int i = 0; i < r; ++i) {
      if (int(grid[i].size()) != c) throw error(errc::dimension_mismatch, "ragged entry grid");
      for (int k = 0; k < c; ++k) m.set_entry(i, k, grid[i][k]);
    }
    return m;
  }

  pair_mat operator+(const pair_mat& o) const { return {A + o.A, B + o.B}; }
  pair_mat operator-(const pair_mat& o) const { return {A - o.A, B - o.B}; }
  pair_mat operator-() const { return {-A, -B}; }

  // [A,B] * [C,D] = [AC, DB]; note the reversed order in the second slot.
  pair_mat operator*(const pair_mat& o) const { return {A * o.A, o.B * B}; }

  // Scaling by a split scalar acts componentwise in the idempotent basis.
  pair_mat operator*(const split<F>& s) const { return {A * s.p(), B * s.q()}; }

  // [A,B]^* = [B,A]
  pair_mat conj_transpose() const { return {B, A}; }

  double max_abs() const { return std::max(A.max_abs(), B.max_abs()); }

  bool operator==(const pair_mat&) const = default;
};

using pair_mat_d = pair_mat<double>;
using pair_mat_c = pair_mat<cplx>;

template <class F>
double max_abs_diff(const pair_mat<F>& x, const pair_mat<F>& y) {
  return std::max(max_abs_diff(x.A, y.A), max_abs_diff(x.B, y.B));
}

inline pair_mat_c complexify(const pair_mat_d& m) {
  return {complexify(m.A), complexify(m.B)};
}

inline pair_mat_c complexify(const pair_mat_c& m) { return m; }

// Hermitian (M^* = M) <=> equal components.
template <class F>
bool is_hermitian(const pair_mat<F>& m, double tol = pair_compare_tol) {
  return m.square() && max_abs_diff(m.A, m.B) <= tol;
}

// Unitary (M^* M = I) <=> B = A^{-1}.
template <class F>
bool is_unitary(const pair_mat<F>& m, double tol = pair_compare_tol) {
  return m.square() && max_abs_diff(m.B * m.A, mat<F>::identity(m.rows())) <= tol;
}

namespace detail {
template <class F>
bool lower_tri(const mat<F>& a, double tol) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j)
      if (field_traits<F>::abs(a(i, j)) > tol) return false;
  return true;
}
template <class F>
bool upper_tri(const mat<F>& a, double tol) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < std::min(i, a.cols()); ++j)
      if (field_traits<F>::abs(a(i, j)) > tol) return false;
  return true;
}
template <class F>
bool diagonal(const mat<F>& a, double tol) {
  return lower_tri(a, tol) && upper_tri(a, tol);
}
}  // namespace detail

// Lower triangular in the split sense: [L, U] with L lower and U upper.
template <class F>
bool is_lower_triangular(const pair_mat<F>& m, double tol = pair_compare_tol) {
  return m.square() && detail::lower_tri(m.A, tol) && detail::upper_tri(m.B, tol);
}

// Upper triangular in the split sense: [U, L].
template <class F>
bool is_upper_triangular(const pair_mat<F>& m, double tol = pair_compare_tol) {
  return m.square() && detail::upper_tri(m.A, tol) && detail::lower_tri(m.B, tol);
}

template <class F>
bool is_diagonal(const pair_mat<F>& m, double tol = pair_compare_tol) {
  return m.square() && detail::diagonal(m.A, tol) && detail::diagonal(m.B, tol);
}

// Real/complex-embedded <=> B = A^T.
template <class F>
bool is_base_embedded(const pair_mat<F>& m, double tol = pair_compare_tol) {
  return max_abs_diff(m.B, m.A.transpose()) <= tol;
}

}  // namespace doublemat
