#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "doublemat/pair_matrix.hpp"

namespace doublemat {

using json = nlohmann::json;
using pair_variant = std::variant<pair_mat_d, pair_mat_c>;

// Matrix-pair file format:
//   {"field": "real"|"complex", "A": [[...]], "B": [[...]]}
// Complex entries are [re, im] (plain numbers are accepted too). "B" may be
// omitted and defaults to A^T, the real/complex embedding.
pair_variant parse_pair_json(const json& j);
pair_variant load_pair_file(const std::string& path);

json pair_to_json(const pair_mat_d& m);
json pair_to_json(const pair_mat_c& m);
json mat_to_json(const mat_d& a);
json mat_to_json(const mat_c& a);
mat_d parse_real_mat(const json& rows);
mat_c parse_complex_mat(const json& rows);

// All numeric output is rounded to 12 significant digits; residuals are
// reported separately so the rounding hides no error.
double round_sig(double x, int digits = 12);
json num(double x);
json num(const cplx& x);

inline bool variant_is_complex(const pair_variant& v) {
  return std::holds_alternative<pair_mat_c>(v);
}
pair_mat_c variant_complexify(const pair_variant& v);

}  // namespace doublemat
