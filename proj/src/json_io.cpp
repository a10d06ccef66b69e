#include "doublemat/json_io.hpp"

#include <cstdio>
#include <fstream>

namespace doublemat {

double round_sig(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

json num(double x) { return round_sig(x); }

json num(const cplx& x) { return json::array({round_sig(x.real()), round_sig(x.imag())}); }

json mat_to_json(const mat_d& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < a.cols(); ++j) r.push_back(num(a(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

json mat_to_json(const mat_c& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < a.cols(); ++j) r.push_back(num(a(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

json pair_to_json(const pair_mat_d& m) {
  return json{{"field", "real"}, {"A", mat_to_json(m.A)}, {"B", mat_to_json(m.B)}};
}

json pair_to_json(const pair_mat_c& m) {
  return json{{"field", "complex"}, {"A", mat_to_json(m.A)}, {"B", mat_to_json(m.B)}};
}

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw error(errc::invalid_param, "matrix json: " + what);
}

double entry_real(const json& e) {
  if (e.is_number()) return e.get<double>();
  bad("expected a real number entry");
}

cplx entry_complex(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  bad("expected a number or [re, im] pair");
}

template <class F, class Fn>
mat<F> parse_mat(const json& rows, Fn&& entry) {
  if (!rows.is_array() || rows.empty()) bad("matrix must be a non-empty array of rows");
  int r = int(rows.size());
  if (!rows[0].is_array() || rows[0].empty()) bad("rows must be non-empty arrays");
  int c = int(rows[0].size());
  mat<F> a(r, c);
  for (int i = 0; i < r; ++i) {
    if (!rows[i].is_array() || int(rows[i].size()) != c) bad("ragged rows");
    for (int j = 0; j < c; ++j) a(i, j) = entry(rows[i][j]);
  }
  return a;
}

}  // namespace

mat_d parse_real_mat(const json& rows) { return parse_mat<double>(rows, entry_real); }
mat_c parse_complex_mat(const json& rows) { return parse_mat<cplx>(rows, entry_complex); }

pair_variant parse_pair_json(const json& j) {
  if (!j.is_object()) bad("top level must be an object");
  std::string field = j.value("field", "real");
  if (!j.contains("A")) bad("missing \"A\"");
  if (field == "real") {
    mat_d a = parse_real_mat(j.at("A"));
    mat_d b = j.contains("B") ? parse_real_mat(j.at("B")) : a.transpose();
    if (b.rows() != a.cols() || b.cols() != a.rows()) bad("\"B\" must have the transposed shape of \"A\"");
    return pair_mat_d{std::move(a), std::move(b)};
  }
  if (field == "complex") {
    mat_c a = parse_complex_mat(j.at("A"));
    mat_c b = j.contains("B") ? parse_complex_mat(j.at("B")) : a.transpose();
    if (b.rows() != a.cols() || b.cols() != a.rows()) bad("\"B\" must have the transposed shape of \"A\"");
    return pair_mat_c{std::move(a), std::move(b)};
  }
  bad("\"field\" must be \"real\" or \"complex\"");
}

pair_variant load_pair_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::invalid_param, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw error(errc::invalid_param, std::string("json parse error: ") + e.what());
  }
  return parse_pair_json(j);
}

pair_mat_c variant_complexify(const pair_variant& v) {
  if (std::holds_alternative<pair_mat_c>(v)) return std::get<pair_mat_c>(v);
  return complexify(std::get<pair_mat_d>(v));
}

}  // namespace doublemat
