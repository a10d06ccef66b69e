#pragma once

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "doublemat/scalars.hpp"

namespace doublemat {

// Dense row-major base-field matrix. Desk-scale (the library targets
// n <= 8); everything is by-value with no aliasing tricks.
template <class F>
class mat {
public:
  mat() = default;
  mat(int rows, int cols) : rows_(rows), cols_(cols), d_(size_t(rows) * cols, F{}) {}
  mat(std::initializer_list<std::initializer_list<F>> rows) {
    rows_ = int(rows.size());
    cols_ = rows_ ? int(rows.begin()->size()) : 0;
    d_.reserve(size_t(rows_) * cols_);
    for (const auto& r : rows) {
      if (int(r.size()) != cols_) throw error(errc::dimension_mismatch, "ragged initializer");
      d_.insert(d_.end(), r.begin(), r.end());
    }
  }

  static mat identity(int n) {
    mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  static mat zeros(int rows, int cols) { return mat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  F& operator()(int i, int j) { return d_[size_t(i) * cols_ + j]; }
  const F& operator()(int i, int j) const { return d_[size_t(i) * cols_ + j]; }

  bool operator==(const mat&) const = default;

  mat operator-() const {
    mat r = *this;
    for (auto& x : r.d_) x = -x;
    return r;
  }
  mat operator+(const mat& o) const {
    check_same_shape(o);
    mat r = *this;
    for (size_t k = 0; k < d_.size(); ++k) r.d_[k] += o.d_[k];
    return r;
  }
  mat operator-(const mat& o) const {
    check_same_shape(o);
    mat r = *this;
    for (size_t k = 0; k < d_.size(); ++k) r.d_[k] -= o.d_[k];
    return r;
  }
  mat operator*(const mat& o) const {
    if (cols_ != o.rows_) throw error(errc::dimension_mismatch, "matrix product shapes disagree");
    mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        F aik = (*this)(i, k);
        for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }
  mat operator*(const F& s) const {
    mat r = *this;
    for (auto& x : r.d_) x *= s;
    return r;
  }
  friend mat operator*(const F& s, const mat& m) { return m * s; }

  mat transpose() const {
    mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  mat conj() const {
    mat r = *this;
    if constexpr (field_traits<F>::is_complex) {
      for (auto& x : r.d_) x = std::conj(x);
    }
    return r;
  }

  mat conj_transpose() const { return transpose().conj(); }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : d_) m = std::max(m, field_traits<F>::abs(x));
    return m;
  }

  mat col(int j) const {
    mat c(rows_, 1);
    for (int i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  void set_col(int j, const mat& c) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = c(i, 0);
  }

  mat block(int i0, int j0, int r, int c) const {
    mat b(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }

  void set_block(int i0, int j0, const mat& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

private:
  void check_same_shape(const mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw error(errc::dimension_mismatch, "matrix shapes disagree");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<F> d_;
};

using mat_d = mat<double>;
using mat_c = mat<cplx>;

template <class F>
double max_abs_diff(const mat<F>& a, const mat<F>& b) {
  return (a - b).max_abs();
}

inline mat_c complexify(const mat_d& a) {
  mat_c r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  return r;
}

inline mat_c complexify(const mat_c& a) { return a; }

// Permutation of {0..n-1}: (P*A).row(i) = A.row(idx[i]).
struct perm {
  std::vector<int> idx;

  perm() = default;
  explicit perm(int n) : idx(n) { std::iota(idx.begin(), idx.end(), 0); }
  explicit perm(std::vector<int> v) : idx(std::move(v)) {}

  int size() const { return int(idx.size()); }

  void swap(int i, int j) { std::swap(idx[i], idx[j]); }

  perm inverse() const {
    perm r(size());
    for (int i = 0; i < size(); ++i) r.idx[idx[i]] = i;
    return r;
  }

  // (this o other): apply other first, then this.
  perm compose(const perm& other) const {
    perm r(size());
    for (int i = 0; i < size(); ++i) r.idx[i] = other.idx[idx[i]];
    return r;
  }

  template <class F>
  mat<F> to_matrix() const {
    mat<F> p(size(), size());
    for (int i = 0; i < size(); ++i) p(i, idx[i]) = F(1);
    return p;
  }

  template <class F>
  mat<F> apply_rows(const mat<F>& a) const {
    mat<F> r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) r(i, j) = a(idx[i], j);
    return r;
  }

  bool operator==(const perm&) const = default;
};

}  // namespace doublemat
