#pragma once

#include <vector>

#include "doublemat/decompositions.hpp"
#include "doublemat/real_linalg.hpp"

namespace doublemat {

// Residual gate on U [J,J] V^* = M, relative to |M|.
inline constexpr double jsvd_reconstruction_tol = 1e-6;

// M = U [J,J] V^* with U, V unitary in the split sense ([P, P^{-1}] by
// construction, not re-orthogonalized) and J a complex Jordan matrix whose
// eigenvalues lie in the half-plane H.
struct jordan_svd_result {
  pair_mat_c U;
  pair_mat_c V;
  std::vector<jordan_block> blocks;

  mat_c J() const { return assemble_jordan(blocks); }
  pair_mat_c middle() const {
    mat_c j = assemble_jordan(blocks);
    return {j, j};
  }
  pair_mat_c reconstruct() const { return U * middle() * V.conj_transpose(); }
};

// Jordan SVD of an invertible split matrix: J is the Jordan form of
// sqrt(AB) on the principal branch, U = [P, P^{-1}], V = [Q, Q^{-1}] with
// Q = A^{-1} P J. Composing with normalize_half_plane is the identity.
jordan_svd_result jordan_svd(const pair_mat_c& m,
                             double recon_tol = jsvd_reconstruction_tol);
inline jordan_svd_result jordan_svd(const pair_mat_d& m,
                                    double recon_tol = jsvd_reconstruction_tol) {
  return jordan_svd(complexify(m), recon_tol);
}

// Sign-flips the Jordan blocks whose eigenvalue lies outside H, absorbs the
// flips into U, and re-Jordanizes. Block multiset is preserved up to the
// eigenvalue sign changes.
jordan_svd_result normalize_half_plane(const jordan_svd_result& s);

struct penrose_report {
  bool m_x_m = false;   // M X M = M
  bool x_m_x = false;   // X M X = X
  bool mx_herm = false; // (M X)^* = M X
  bool xm_herm = false; // (X M)^* = X M
  bool all() const { return m_x_m && x_m_x && mx_herm && xm_herm; }
};

penrose_report penrose_check(const pair_mat_c& m, const pair_mat_c& x, double tol = 1e-6);

// Moore-Penrose pseudoinverse V [J^+, J^+] U^*. Requires
// rank(A) = rank(B) = rank(AB) = rank(BA) (rank_mismatch_error reports the
// four ranks otherwise) and no nontrivial nilpotent Jordan block. The
// singular case runs the same construction with pseudo-inverted solves and
// a kernel completion of Q; failures are reported, never guessed around.
pair_mat_c pinv(const pair_mat_c& m);
inline pair_mat_c pinv(const pair_mat_d& m) { return pinv(complexify(m)); }

// Recomputes the Jordan SVD along independently flipped square-root
// branches, renormalizes each into H, and checks that every branch lands on
// the same block multiset.
bool uniqueness_probe(const pair_mat_c& m);
inline bool uniqueness_probe(const pair_mat_d& m) { return uniqueness_probe(complexify(m)); }

// Equivalence with the polar decomposition, both directions.
polar_result jsvd_to_polar(const jordan_svd_result& s);
jordan_svd_result polar_to_jsvd(const polar_result& p);

// Moore-Penrose pseudoinverse of a plain complex matrix via a rank
// factorization from complete pivoting (used by the singular-case solves
// and handy as an oracle).
mat_c mp_pinv(const mat_c& a, double tol = rank_tol);

bool blocks_equal(const std::vector<jordan_block>& x, const std::vector<jordan_block>& y,
                  double tol);

}  // namespace doublemat
