#include "doublemat/yaglom.hpp"

#include <cmath>

namespace doublemat::yaglom {

const char* kind_name(inversion_kind k) {
  switch (k) {
    case inversion_kind::first: return "first";
    case inversion_kind::second: return "second";
    case inversion_kind::third: return "third";
    case inversion_kind::fourth: return "fourth";
  }
  return "unknown";
}

pair_mat_d inversion_matrix(const inversion_spec& spec) {
  const split_d zero{};
  const split_d one{1, 0};
  const split_d j{0, 1};
  switch (spec.kind) {
    case inversion_kind::first: {
      double k = spec.param;
      return pair_mat_d::from_entries({{zero, split_d{-k, 0}}, {one, zero}});
    }
    case inversion_kind::second:
      return pair_mat_d::from_entries({{j, split_d{-1, 0}}, {split_d{3, 0}, j}});
    case inversion_kind::third: {
      double a = spec.param;
      if (a < 0.0) throw error(errc::invalid_param, "third-kind inversion needs alpha >= 0");
      split_d diag{0, 1 - a};
      return pair_mat_d::from_entries(
          {{diag, split_d{1 + a, 0}}, {split_d{-(1 + a), 0}, diag}});
    }
    case inversion_kind::fourth: {
      double k = spec.param;
      return pair_mat_d::from_entries({{zero, split_d{0, k}}, {one, zero}});
    }
  }
  throw error(errc::invalid_param, "unknown inversion kind");
}

j_invariant jordan_invariant(const pair_mat_c& s) {
  if (s.rows() != 2 || s.cols() != 2)
    throw error(errc::dimension_mismatch, "jordan_invariant is defined for 2x2 matrices");
  return {jordan_svd(s).blocks};
}

namespace {

double inv_scale(const j_invariant& inv) {
  double m = 0.0;
  for (const auto& b : inv.blocks) m = std::max(m, std::abs(b.lambda));
  return std::max(1.0, m);
}

bool ratio_real(const cplx& rho, double tol) { return std::abs(rho.imag()) <= tol * std::abs(rho); }
bool ratio_imag(const cplx& rho, double tol) { return std::abs(rho.real()) <= tol * std::abs(rho); }

}  // namespace

std::vector<inversion_kind> matching_kinds(const j_invariant& inv, double tol) {
  std::vector<inversion_kind> out;
  if (inv.is_jordan2()) {
    // No scalar multiple of a nontrivial Jordan block stays a Jordan
    // matrix, so the second family is the single class J2(2).
    if (std::abs(inv.blocks[0].lambda - 2.0) <= tol * std::max(1.0, std::abs(inv.blocks[0].lambda)))
      out.push_back(inversion_kind::second);
    return out;
  }
  if (inv.blocks.size() != 2) return out;
  cplx l1 = inv.blocks[0].lambda;
  cplx l2 = inv.blocks[1].lambda;
  if (std::abs(l1) == 0.0 || std::abs(l2) == 0.0) return out;
  cplx rho = l2 / l1;
  double sc = inv_scale(inv);
  // diag(a, b), a and b real, up to scaling: real ratio
  if (ratio_real(rho, tol)) out.push_back(inversion_kind::first);
  // diag(z, conj z), up to scaling: a genuine conjugate pair
  if (std::abs(l2 - std::conj(l1)) <= tol * sc) out.push_back(inversion_kind::third);
  // diag(c(1-i)/sqrt2, c(1+i)/sqrt2) and its k-sweep: purely imaginary ratio
  if (ratio_imag(rho, tol)) out.push_back(inversion_kind::fourth);
  return out;
}

classification classify(const pair_mat_c& m, double tol) {
  j_invariant inv = jordan_invariant(m);
  std::vector<inversion_kind> kinds = matching_kinds(inv, tol);
  if (kinds.empty()) return {false, std::nullopt};
  return {true, kinds.front()};
}

pair_mat_d proposed_family_matrix(double k) {
  split_d kk{k, 0};
  return pair_mat_d::from_entries({{kk, split_d{1, 1}}, {split_d{1, -1}, kk}});
}

bool proposed_family_covers(const pair_mat_c& m, double tol) {
  j_invariant inv = jordan_invariant(m);
  if (inv.is_jordan2()) {
    // the proposed family sweeps J2(|k|) over real k
    cplx l = inv.blocks[0].lambda;
    return l.real() > 0.0 && std::abs(l.imag()) <= tol * std::abs(l);
  }
  auto kinds = matching_kinds(inv, tol);
  for (inversion_kind k : kinds)
    if (k != inversion_kind::second) return true;
  return false;
}

pair_mat_d counterexample() {
  mat_d j0{{1, 1}, {0, 1}};
  return pair_mat_d{j0, j0};
}

std::vector<std::pair<inversion_spec, j_invariant>> demo_invariants() {
  std::vector<inversion_spec> specs = {
      {inversion_kind::first, 3.0},
      {inversion_kind::second, 0.0},
      {inversion_kind::third, 0.5},
      {inversion_kind::fourth, 1.0},
  };
  std::vector<std::pair<inversion_spec, j_invariant>> out;
  for (const auto& s : specs) out.emplace_back(s, jordan_invariant(inversion_matrix(s)));
  return out;
}

}  // namespace doublemat::yaglom
