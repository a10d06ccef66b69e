#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace doublemat {

// Failure modes surfaced by the library. Each carries a machine-readable
// code so callers (and the CLI) can branch without string matching.
enum class errc {
  zero_divisor,
  domain_error,
  dimension_mismatch,
  pivot_failure,
  pivot_zero_divisor,
  zero_divisor_norm,
  degenerate_column,
  not_hermitian,
  singular,
  cluster_ambiguity,
  reconstruction_failure,
  rank_mismatch,
  nilpotent_block,
  invalid_param,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::zero_divisor: return "zero_divisor";
    case errc::domain_error: return "domain_error";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::pivot_failure: return "pivot_failure";
    case errc::pivot_zero_divisor: return "pivot_zero_divisor";
    case errc::zero_divisor_norm: return "zero_divisor_norm";
    case errc::degenerate_column: return "degenerate_column";
    case errc::not_hermitian: return "not_hermitian";
    case errc::singular: return "singular";
    case errc::cluster_ambiguity: return "cluster_ambiguity";
    case errc::reconstruction_failure: return "reconstruction_failure";
    case errc::rank_mismatch: return "rank_mismatch";
    case errc::nilpotent_block: return "nilpotent_block";
    case errc::invalid_param: return "invalid_param";
  }
  return "unknown";
}

class error : public std::runtime_error {
public:
  error(errc code, std::string msg, long index = -1)
      : std::runtime_error(std::move(msg)), code_(code), index_(index) {}

  errc code() const { return code_; }
  // Offending pivot/column index when the failure names one, else -1.
  long index() const { return index_; }

private:
  errc code_;
  long index_;
};

// Carries rank(A), rank(B), rank(AB), rank(BA) at the point of rejection.
class rank_mismatch_error : public error {
public:
  rank_mismatch_error(std::array<int, 4> ranks, std::string msg)
      : error(errc::rank_mismatch, std::move(msg)), ranks_(ranks) {}
  const std::array<int, 4>& ranks() const { return ranks_; }

private:
  std::array<int, 4> ranks_;
};

}  // namespace doublemat
