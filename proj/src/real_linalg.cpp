#include "doublemat/real_linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace doublemat {

bool in_half_plane(const cplx& z) {
  if (z.real() > 0.0) return true;
  return z.real() == 0.0 && z.imag() >= 0.0;
}

cplx sqrt_half_plane(const cplx& z) {
  cplx s = std::sqrt(z);
  // Noise in z can push the root a hair off the branch boundary; snap it
  // onto the imaginary axis before the membership test decides the sign.
  if (std::abs(s) > 0.0 && std::abs(s.real()) <= 1e-12 * std::abs(s)) s = cplx(0.0, s.imag());
  if (!in_half_plane(s)) s = -s;
  if (s.real() == 0.0) s = cplx(0.0, s.imag());
  return s;
}

mat_c assemble_jordan(const std::vector<jordan_block>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.size;
  mat_c j(n, n);
  int at = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.size; ++i) {
      j(at + i, at + i) = b.lambda;
      if (i + 1 < b.size) j(at + i, at + i + 1) = 1.0;
    }
    at += b.size;
  }
  return j;
}

namespace {

// Householder similarity reduction to upper Hessenberg form, in place.
void hessenberg(mat_c& h) {
  const int n = h.rows();
  for (int k = 0; k + 2 < n; ++k) {
    const int m = n - k - 1;
    std::vector<cplx> v(m);
    double norm2 = 0.0;
    for (int i = 0; i < m; ++i) {
      v[i] = h(k + 1 + i, k);
      norm2 += std::norm(v[i]);
    }
    double nrm = std::sqrt(norm2);
    if (nrm == 0.0) continue;
    cplx phase = (std::abs(v[0]) > 0.0) ? v[0] / std::abs(v[0]) : cplx(1.0);
    cplx alpha = -phase * nrm;
    v[0] -= alpha;
    double vn2 = 0.0;
    for (const auto& c : v) vn2 += std::norm(c);
    if (vn2 == 0.0) continue;
    // left: rows k+1.., all columns
    for (int j = 0; j < n; ++j) {
      cplx dot = 0.0;
      for (int i = 0; i < m; ++i) dot += std::conj(v[i]) * h(k + 1 + i, j);
      dot *= 2.0 / vn2;
      for (int i = 0; i < m; ++i) h(k + 1 + i, j) -= v[i] * dot;
    }
    // right: all rows, columns k+1..
    for (int i = 0; i < n; ++i) {
      cplx dot = 0.0;
      for (int j = 0; j < m; ++j) dot += h(i, k + 1 + j) * v[j];
      dot *= 2.0 / vn2;
      for (int j = 0; j < m; ++j) h(i, k + 1 + j) -= dot * std::conj(v[j]);
    }
    h(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

std::array<cplx, 2> eig2(const cplx& a, const cplx& b, const cplx& c, const cplx& d) {
  cplx tr = a + d;
  cplx disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
  return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

struct givens {
  double c;
  cplx s;
};

// Unitary G with G * (a, b)^T = (r, 0)^T; G = [[c, s], [-conj(s), c]].
givens make_givens(const cplx& a, const cplx& b) {
  double r = std::hypot(std::abs(a), std::abs(b));
  if (r == 0.0) return {1.0, 0.0};
  if (std::abs(a) == 0.0) return {0.0, std::conj(b) / r};
  cplx phase = a / std::abs(a);
  return {std::abs(a) / r, phase * std::conj(b) / r};
}

}  // namespace

std::vector<cplx> eigenvalues(const mat_c& a, int n_max) {
  if (!a.square()) throw error(errc::dimension_mismatch, "eigenvalues need a square matrix");
  const int n = a.rows();
  if (n > n_max)
    throw error(errc::invalid_param, "eigenvalue iteration is limited to n <= " + std::to_string(n_max));
  if (n == 0) return {};
  if (n == 1) return {a(0, 0)};

  mat_c h = a;
  hessenberg(h);
  const double scale = std::max(1.0, a.max_abs());
  auto negligible = [&](int i) {
    return std::abs(h(i, i - 1)) <=
           1e-13 * std::max(scale, std::abs(h(i - 1, i - 1)) + std::abs(h(i, i)));
  };

  std::vector<cplx> out;
  out.reserve(n);
  int hi = n - 1;
  int window_iters = 0;
  int total_iters = 0;
  const int max_iters = 500;
  while (hi >= 0) {
    if (hi == 0) {
      out.push_back(h(0, 0));
      break;
    }
    if (negligible(hi)) {
      out.push_back(h(hi, hi));
      --hi;
      window_iters = 0;
      continue;
    }
    int lo = hi;
    while (lo > 0 && !negligible(lo)) --lo;
    if (hi - lo == 1) {
      auto e = eig2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
      out.push_back(e[0]);
      out.push_back(e[1]);
      hi = lo - 1;
      window_iters = 0;
      continue;
    }
    if (++total_iters > max_iters)
      throw error(errc::cluster_ambiguity, "QR eigenvalue iteration did not converge");
    // A few unshifted sweeps first, then Wilkinson shifts; occasional
    // exceptional shift to break cycles.
    cplx sigma = 0.0;
    ++window_iters;
    if (window_iters > 4) {
      auto e = eig2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
      sigma = (std::abs(e[0] - h(hi, hi)) <= std::abs(e[1] - h(hi, hi))) ? e[0] : e[1];
      if (window_iters % 13 == 0) sigma += 0.7 * std::abs(h(hi, hi - 1));
    }
    for (int i = lo; i <= hi; ++i) h(i, i) -= sigma;
    std::vector<givens> rots(hi - lo);
    for (int k = lo; k < hi; ++k) {
      givens g = make_givens(h(k, k), h(k + 1, k));
      rots[k - lo] = g;
      for (int j = k; j <= hi; ++j) {
        cplx t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = g.c * t1 + g.s * t2;
        h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
      }
    }
    for (int k = lo; k < hi; ++k) {
      const givens& g = rots[k - lo];
      for (int i = lo; i <= std::min(k + 2, hi); ++i) {
        cplx t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = g.c * t1 + std::conj(g.s) * t2;
        h(i, k + 1) = -g.s * t1 + g.c * t2;
      }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += sigma;
  }
  return out;
}

namespace {

struct eig_cluster {
  cplx center;
  int mult = 0;
};

std::vector<eig_cluster> cluster_eigenvalues(const std::vector<cplx>& eigs, double radius) {
  const int n = int(eigs.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(eigs[i] - eigs[j]) <= radius) parent[find(i)] = find(j);

  std::vector<eig_cluster> clusters;
  std::vector<int> root_of;
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    int idx = -1;
    for (int c = 0; c < int(root_of.size()); ++c)
      if (root_of[c] == r) idx = c;
    if (idx < 0) {
      root_of.push_back(r);
      clusters.push_back({0.0, 0});
      idx = int(clusters.size()) - 1;
    }
    clusters[idx].center += eigs[i];
    clusters[idx].mult += 1;
  }
  for (auto& c : clusters) c.center /= double(c.mult);

  // Clustering is only trustworthy when clusters are cleanly separated and
  // individually tight.
  for (size_t i = 0; i < clusters.size(); ++i)
    for (size_t j = i + 1; j < clusters.size(); ++j)
      if (std::abs(clusters[i].center - clusters[j].center) < 3.0 * radius)
        throw error(errc::cluster_ambiguity, "eigenvalue clusters are separated by less than the clustering radius");
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    for (size_t c = 0; c < clusters.size(); ++c)
      if (root_of[c] == r && std::abs(eigs[i] - clusters[c].center) > 2.5 * radius)
        throw error(errc::cluster_ambiguity, "eigenvalue cluster diameter exceeds the clustering radius");
  }
  std::sort(clusters.begin(), clusters.end(), [](const eig_cluster& x, const eig_cluster& y) {
    if (x.center.real() != y.center.real()) return x.center.real() < y.center.real();
    return x.center.imag() < y.center.imag();
  });
  return clusters;
}

double col_norm(const mat_c& v) {
  double s = 0.0;
  for (int i = 0; i < v.rows(); ++i) s += std::norm(v(i, 0));
  return std::sqrt(s);
}

cplx col_dot(const mat_c& u, const mat_c& v) {
  cplx s = 0.0;
  for (int i = 0; i < u.rows(); ++i) s += std::conj(u(i, 0)) * v(i, 0);
  return s;
}

// Projects v out of the span of the orthonormal set, twice for stability.
mat_c project_out(const std::vector<mat_c>& ortho, mat_c v) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& u : ortho) {
      cplx d = col_dot(u, v);
      for (int i = 0; i < v.rows(); ++i) v(i, 0) -= d * u(i, 0);
    }
  return v;
}

}  // namespace

mat_c nullspace(const mat_c& a, double tol) {
  auto f = lu_complete_pivot(a, tol);
  const int n = a.rows();
  const int r = f.rank;
  const int k = n - r;
  mat_c ns(n, k);
  for (int fcol = 0; fcol < k; ++fcol) {
    std::vector<cplx> z(n, 0.0);
    z[r + fcol] = 1.0;
    for (int i = r - 1; i >= 0; --i) {
      cplx s = 0.0;
      for (int j = i + 1; j < n; ++j) s += f.U(i, j) * z[j];
      z[i] = -s;
    }
    for (int j = 0; j < n; ++j) ns(f.Q.idx[j], fcol) = z[j];
  }
  // orthonormalize
  std::vector<mat_c> ortho;
  for (int c = 0; c < k; ++c) {
    mat_c v = project_out(ortho, ns.col(c));
    double nn = col_norm(v);
    if (nn == 0.0) continue;
    for (int i = 0; i < n; ++i) v(i, 0) /= nn;
    ortho.push_back(v);
  }
  mat_c out(n, int(ortho.size()));
  for (int c = 0; c < int(ortho.size()); ++c) out.set_col(c, ortho[c]);
  return out;
}

jordan_form_result jordan_form(const mat_c& a) {
  if (!a.square()) throw error(errc::dimension_mismatch, "jordan_form needs a square matrix");
  const int n = a.rows();
  const double scale = std::max(1.0, a.max_abs());
  const double indep_tol = 1e-7;

  auto clusters = cluster_eigenvalues(eigenvalues(a), cluster_tol * scale);

  mat_c p(n, n);
  std::vector<jordan_block> blocks;
  int col = 0;
  for (const auto& cl : clusters) {
    mat_c nmat = a - mat_c::identity(n) * cl.center;
    const int m = cl.mult;

    // nullspace filtration of (A - lambda I)^k
    std::vector<mat_c> kernels;  // kernels[k-1] = orthonormal basis of ker N^k
    std::vector<int> dims;
    mat_c npow = nmat;
    while (true) {
      mat_c kb = nullspace(npow, rank_tol);
      if (!dims.empty() && kb.cols() <= dims.back())
        throw error(errc::cluster_ambiguity, "jordan nullspace filtration stalled");
      kernels.push_back(kb);
      dims.push_back(kb.cols());
      if (kb.cols() > m)
        throw error(errc::cluster_ambiguity, "jordan nullspace exceeds cluster multiplicity");
      if (kb.cols() == m) break;
      if (int(kernels.size()) > m)
        throw error(errc::cluster_ambiguity, "jordan filtration exceeded multiplicity depth");
      npow = npow * nmat;
    }
    const int height = int(kernels.size());

    // Chain heads, tallest first: at height k a new head must be
    // independent of ker N^{k-1} and of taller chains mapped down.
    std::vector<std::pair<mat_c, int>> heads;
    std::vector<mat_c> carried;
    for (int k = height; k >= 1; --k) {
      std::vector<mat_c> blocked;
      if (k >= 2) {
        const mat_c& kb = kernels[k - 2];
        for (int c = 0; c < kb.cols(); ++c) {
          mat_c v = project_out(blocked, kb.col(c));
          double nn = col_norm(v);
          if (nn > indep_tol) {
            for (int i = 0; i < n; ++i) v(i, 0) /= nn;
            blocked.push_back(v);
          }
        }
      }
      for (const auto& cv : carried) {
        mat_c v = project_out(blocked, cv);
        double nn = col_norm(v);
        if (nn > indep_tol * col_norm(cv)) {
          for (int i = 0; i < n; ++i) v(i, 0) /= nn;
          blocked.push_back(v);
        }
      }
      int expected = dims[k - 1] - (k >= 2 ? dims[k - 2] : 0) - int(carried.size());
      int found = 0;
      std::vector<mat_c> new_heads;
      const mat_c& kb = kernels[k - 1];
      for (int c = 0; c < kb.cols() && found < expected; ++c) {
        mat_c v = project_out(blocked, kb.col(c));
        double nn = col_norm(v);
        if (nn > indep_tol) {
          for (int i = 0; i < n; ++i) v(i, 0) /= nn;
          blocked.push_back(v);
          new_heads.push_back(v);
          heads.emplace_back(v, k);
          ++found;
        }
      }
      if (found != expected)
        throw error(errc::cluster_ambiguity, "jordan chain head selection failed");
      std::vector<mat_c> next_carried;
      for (const auto& cv : carried) next_carried.push_back(nmat * cv);
      for (const auto& hv : new_heads) next_carried.push_back(nmat * hv);
      carried = std::move(next_carried);
    }

    for (const auto& [v, k] : heads) {
      std::vector<mat_c> chain(static_cast<size_t>(k));
      chain[k - 1] = v;
      for (int t = k - 2; t >= 0; --t) chain[t] = nmat * chain[t + 1];
      for (const auto& cvec : chain) p.set_col(col++, cvec);
      blocks.push_back({cl.center, k});
    }
  }

  jordan_form_result res{std::move(p), std::move(blocks)};
  mat_c pinv;
  try {
    pinv = inverse(res.P);
  } catch (const error&) {
    throw error(errc::cluster_ambiguity, "jordan similarity transform is singular");
  }
  double resid = max_abs_diff(res.P * res.J() * pinv, a);
  if (resid > jordan_residual_tol * scale)
    throw error(errc::cluster_ambiguity, "jordan reconstruction residual too large");
  return res;
}

mat_c sqrt_via_jordan(const mat_c& a, bool allow_singular) {
  const double scale = std::max(1.0, a.max_abs());
  auto jf = jordan_form(a);
  const double sing_gate = 1e-10 * scale;
  int n = a.rows();
  mat_c f(n, n);
  int at = 0;
  for (const auto& b : jf.blocks) {
    if (std::abs(b.lambda) <= sing_gate) {
      if (!allow_singular)
        throw error(errc::singular, "matrix square root needs an invertible matrix");
      if (b.size > 1)
        throw error(errc::nilpotent_block,
                    "nontrivial nilpotent jordan block has no square root");
      // 1x1 zero block maps to zero
      at += b.size;
      continue;
    }
    // Taylor coefficients of sqrt around lambda: c_i = binom(1/2, i) lambda^{1/2 - i}
    cplx c = sqrt_half_plane(b.lambda);
    for (int i = 0; i < b.size; ++i) {
      for (int r = 0; r + i < b.size; ++r) f(at + r, at + r + i) = c;
      c *= (0.5 - double(i)) / (double(i) + 1.0) / b.lambda;
    }
    at += b.size;
  }
  return jf.P * f * inverse(jf.P);
}

mat_c principal_sqrt(const mat_c& a) { return sqrt_via_jordan(a, false); }

}  // namespace doublemat
