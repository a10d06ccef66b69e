#pragma once

#include <optional>
#include <vector>

#include "doublemat/jordan_svd.hpp"

namespace doublemat::yaglom {

// The four axial-inversion families of Yaglom's classification of linear
// fractional transformations over the double numbers.
enum class inversion_kind { first, second, third, fourth };

const char* kind_name(inversion_kind k);

struct inversion_spec {
  inversion_kind kind;
  double param = 0.0;  // k for first/fourth, alpha (>= 0) for third
};

// The literal 2x2 split matrix of the family member.
pair_mat_d inversion_matrix(const inversion_spec& spec);

// Projective Jordan invariant of a 2x2 split matrix: the Jordan-SVD middle
// factor, eigenvalues in H, blocks in lex order. Comparison against the
// four families quotients diagonal invariants by scalars (ratio tests); a
// J2 invariant admits no rescaling that stays Jordan, so it is compared
// literally.
struct j_invariant {
  std::vector<jordan_block> blocks;
  bool is_jordan2() const { return blocks.size() == 1 && blocks[0].size == 2; }
};

j_invariant jordan_invariant(const pair_mat_c& s);
inline j_invariant jordan_invariant(const pair_mat_d& s) {
  return jordan_invariant(complexify(s));
}

struct classification {
  bool covered = false;
  std::optional<inversion_kind> kind;  // first matching family when covered
};

// Every family whose invariant class contains this invariant. Families
// genuinely overlap on degenerate parameters, so this can have more than
// one element.
std::vector<inversion_kind> matching_kinds(const j_invariant& inv, double tol = 1e-6);

classification classify(const pair_mat_c& m, double tol = 1e-6);
inline classification classify(const pair_mat_d& m, double tol = 1e-6) {
  return classify(complexify(m), tol);
}

// [[k, 1+j], [1-j, k]]: the proposed replacement for the second family.
pair_mat_d proposed_family_matrix(double k);

// Coverage under the replacement classification: the three diagonal
// families plus the J-invariants swept by the proposed family.
bool proposed_family_covers(const pair_mat_c& m, double tol = 1e-6);
inline bool proposed_family_covers(const pair_mat_d& m, double tol = 1e-6) {
  return proposed_family_covers(complexify(m), tol);
}

// The LFT (2z + (1+j)) / ((1-j)z + 2), i.e. [J2(1), J2(1)]: the matrix the
// original classification misses.
pair_mat_d counterexample();

// Representative member of each family with its computed invariant; what
// the demo prints.
std::vector<std::pair<inversion_spec, j_invariant>> demo_invariants();

}  // namespace doublemat::yaglom
