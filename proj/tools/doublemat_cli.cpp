#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "doublemat/json_io.hpp"
#include "doublemat/jordan_svd.hpp"
#include "doublemat/pivoted.hpp"
#include "doublemat/verify.hpp"
#include "doublemat/yaglom.hpp"

namespace dm = doublemat;
using dm::json;

namespace {

struct options {
  std::string op;
  std::string input;
  double tol = dm::zero_divisor_tol;
  int iters = 20;
  std::string format = "json";
  bool check = false;
  uint64_t seed = 20240817;
};

json perm_to_json(const dm::perm& p) {
  json a = json::array();
  for (int i : p.idx) a.push_back(i);
  return a;
}

dm::perm perm_from_json(const json& a) {
  std::vector<int> idx;
  for (const auto& e : a) idx.push_back(e.get<int>());
  return dm::perm(idx);
}

json blocks_to_json(const std::vector<dm::jordan_block>& blocks) {
  json a = json::array();
  for (const auto& b : blocks)
    a.push_back(json{{"eigenvalue", dm::num(b.lambda)}, {"size", b.size}});
  return a;
}

json pair_variant_json(const dm::pair_variant& v) {
  if (std::holds_alternative<dm::pair_mat_d>(v)) return dm::pair_to_json(std::get<dm::pair_mat_d>(v));
  return dm::pair_to_json(std::get<dm::pair_mat_c>(v));
}

template <class F>
std::string render_pair_text(const dm::pair_mat<F>& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    out += "  [ ";
    for (int k = 0; k < m.cols(); ++k) {
      out += dm::format_split(m.entry(i, k));
      if (k + 1 < m.cols()) out += ",  ";
    }
    out += " ]\n";
  }
  return out;
}

void print_result(const json& result, const options& opt) {
  if (opt.format == "json") {
    std::cout << result.dump(2) << "\n";
    return;
  }
  // text: factors rendered entrywise in the a+bj form
  std::cout << result["op"].get<std::string>() << "\n";
  if (result.contains("factors"))
    for (const auto& [name, val] : result["factors"].items()) {
      std::cout << name << ":\n";
      if (val.is_object() && val.contains("field")) {
        dm::pair_variant v = dm::parse_pair_json(val);
        if (std::holds_alternative<dm::pair_mat_d>(v))
          std::cout << render_pair_text(std::get<dm::pair_mat_d>(v));
        else
          std::cout << render_pair_text(std::get<dm::pair_mat_c>(v));
      } else {
        std::cout << "  " << val.dump() << "\n";
      }
    }
  if (result.contains("residuals")) std::cout << "residuals: " << result["residuals"].dump() << "\n";
  for (const char* key : {"verdict", "covered", "kind", "proposed_covers", "penrose"})
    if (result.contains(key)) std::cout << key << ": " << result[key].dump() << "\n";
}

// ---- decompose -------------------------------------------------------------

template <class F>
json decompose_one(const std::string& op, const dm::pair_mat<F>& m, const options& opt) {
  json out;
  out["op"] = op;
  out["input"] = dm::pair_to_json(m);
  json factors, residuals;
  double scale = std::max(1.0, m.max_abs());

  if (op == "ldl") {
    auto f = dm::ldl_double(m, true, opt.tol);
    factors["L"] = dm::pair_to_json(f.L);
    factors["D"] = dm::pair_to_json(f.D);
    residuals["reconstruction"] =
        dm::num(max_abs_diff(f.L * f.D * f.L.conj_transpose(), m));
  } else if (op == "ldu") {
    auto f = dm::ldu_via_double(m.A, opt.tol);
    factors["L"] = dm::mat_to_json(f.L);
    factors["D"] = dm::mat_to_json(f.D);
    factors["U"] = dm::mat_to_json(f.U);
    residuals["reconstruction"] = dm::num(max_abs_diff(f.L * f.D * f.U, m.A));
  } else if (op == "qr-comp" || op == "qr-gs" || op == "qr-hh") {
    dm::qr_result<F> f = (op == "qr-comp")  ? dm::qr_components(m)
                         : (op == "qr-gs") ? dm::qr_gram_schmidt(m, opt.tol)
                                           : dm::qr_householder(m, opt.tol);
    factors["Q"] = dm::pair_to_json(f.Q);
    factors["R"] = dm::pair_to_json(f.R);
    residuals["reconstruction"] = dm::num(max_abs_diff(f.Q * f.R, m));
    residuals["unitarity"] = dm::num(max_abs_diff(f.Q.conj_transpose() * f.Q,
                                                  dm::pair_mat<F>::identity(m.rows())));
  } else if (op == "svd-lr") {
    dm::pair_mat<F> d = dm::svd_lr(m, opt.iters, opt.tol);
    factors["S"] = dm::pair_to_json(d);
    out["iters"] = opt.iters;
  } else if (op == "lup") {
    auto f = dm::lup_general(m);
    factors["lower"] = dm::pair_to_json(f.lower);
    factors["upper"] = dm::pair_to_json(f.upper);
    factors["P"] = perm_to_json(f.perm.P);
    factors["Q"] = perm_to_json(f.perm.Q);
    residuals["reconstruction"] =
        dm::num(max_abs_diff(f.lower * f.upper * f.perm.template to_pair<F>(), m));
  } else if (op == "lup-restricted") {
    auto f = dm::lup_restricted(m, opt.tol);
    if (!f) {
      out["verdict"] = "infeasible";
      out["detail"] = "no permutation P admits A = L1 U2 P and B = P^-1 L2 U1";
      return out;
    }
    out["verdict"] = "feasible";
    factors["lower"] = dm::pair_to_json(f->lower);
    factors["upper"] = dm::pair_to_json(f->upper);
    factors["P"] = perm_to_json(f->P);
    dm::pair_mat<F> pp{f->P.template to_matrix<F>(), f->P.inverse().template to_matrix<F>()};
    residuals["reconstruction"] = dm::num(max_abs_diff(f->lower * f->upper * pp, m));
  } else if (op == "bkp") {
    auto f = dm::bkp_double(m);
    factors["P"] = perm_to_json(f.perm.P);
    factors["Q"] = perm_to_json(f.perm.Q);
    factors["L"] = dm::mat_to_json(f.L);
    factors["D"] = dm::mat_to_json(f.D);
    factors["U"] = dm::mat_to_json(f.U);
    dm::mat<F> paq = f.perm.P.apply_rows(m.A) * f.perm.Q.template to_matrix<F>();
    residuals["reconstruction"] = dm::num(max_abs_diff(paq, f.L * f.D * f.U));
  } else if (op == "rrqr") {
    auto f = dm::rrqr_double(m);
    factors["Pi1"] = perm_to_json(f.perm.P);
    factors["Pi2"] = perm_to_json(f.perm.Q);
    factors["Q"] = dm::pair_to_json(f.Q);
    factors["R"] = dm::pair_to_json(f.R);
    residuals["reconstruction"] =
        dm::num(max_abs_diff(m * f.perm.template to_pair<F>(), f.Q * f.R));
    residuals["unitarity"] = dm::num(max_abs_diff(f.Q.conj_transpose() * f.Q,
                                                  dm::pair_mat<F>::identity(m.rows())));
  } else {
    throw dm::error(dm::errc::invalid_param, "unknown decompose op: " + op);
  }
  (void)scale;
  out["factors"] = std::move(factors);
  out["residuals"] = std::move(residuals);
  return out;
}

json decompose_complex_only(const std::string& op, const dm::pair_mat_c& m, const options&) {
  json out;
  out["op"] = op;
  out["input"] = dm::pair_to_json(m);
  json factors, residuals;
  if (op == "polar") {
    auto f = dm::polar(m);
    factors["U"] = dm::pair_to_json(f.U);
    factors["P"] = dm::pair_to_json(f.P);
    residuals["reconstruction"] = dm::num(max_abs_diff(f.U * f.P, m));
    residuals["unitarity"] = dm::num(
        max_abs_diff(f.U.conj_transpose() * f.U, dm::pair_mat_c::identity(m.rows())));
    residuals["hermitian_defect"] = dm::num(max_abs_diff(f.P.A, f.P.B));
  } else {  // jsvd
    auto s = dm::jordan_svd(m);
    factors["U"] = dm::pair_to_json(s.U);
    factors["V"] = dm::pair_to_json(s.V);
    factors["J"] = dm::mat_to_json(s.J());
    out["blocks"] = blocks_to_json(s.blocks);
    residuals["reconstruction"] = dm::num(max_abs_diff(s.reconstruct(), m));
  }
  out["factors"] = std::move(factors);
  out["residuals"] = std::move(residuals);
  return out;
}

json run_decompose(const options& opt) {
  dm::pair_variant v = dm::load_pair_file(opt.input);
  if (opt.op == "polar" || opt.op == "jsvd")
    return decompose_complex_only(opt.op, dm::variant_complexify(v), opt);
  if (std::holds_alternative<dm::pair_mat_d>(v))
    return decompose_one(opt.op, std::get<dm::pair_mat_d>(v), opt);
  return decompose_one(opt.op, std::get<dm::pair_mat_c>(v), opt);
}

// ---- --check: recompute the factor product against the embedded input ------

json run_check(const options& opt) {
  std::ifstream in(opt.input);
  if (!in) throw dm::error(dm::errc::invalid_param, "cannot open " + opt.input);
  json r;
  in >> r;
  const std::string op = r.at("op").get<std::string>();
  dm::pair_mat_c m = dm::variant_complexify(dm::parse_pair_json(r.at("input")));
  const double scale = std::max(1.0, m.max_abs());
  double reported = 0.0;
  if (r.contains("residuals") && r["residuals"].contains("reconstruction"))
    reported = r["residuals"]["reconstruction"].get<double>();
  const double gate = reported + 1e-9 * scale;

  auto pair_of = [&](const char* key) {
    return dm::variant_complexify(dm::parse_pair_json(r.at("factors").at(key)));
  };
  auto mat_of = [&](const char* key) { return dm::parse_complex_mat(r.at("factors").at(key)); };

  double resid = 0.0;
  if (op == "ldl") {
    auto l = pair_of("L"), d = pair_of("D");
    resid = max_abs_diff(l * d * l.conj_transpose(), m);
  } else if (op == "ldu") {
    resid = max_abs_diff(mat_of("L") * mat_of("D") * mat_of("U"), m.A);
  } else if (op == "qr-comp" || op == "qr-gs" || op == "qr-hh") {
    resid = max_abs_diff(pair_of("Q") * pair_of("R"), m);
  } else if (op == "svd-lr") {
    dm::pair_mat_c again = dm::svd_lr(m, r.value("iters", 20));
    resid = max_abs_diff(again, pair_of("S"));
  } else if (op == "polar") {
    resid = max_abs_diff(pair_of("U") * pair_of("P"), m);
  } else if (op == "jsvd") {
    dm::mat_c j = mat_of("J");
    resid = max_abs_diff(pair_of("U") * dm::pair_mat_c{j, j} * pair_of("V").conj_transpose(), m);
  } else if (op == "lup") {
    dm::perm_pair pp{perm_from_json(r.at("factors").at("P")), perm_from_json(r.at("factors").at("Q"))};
    resid = max_abs_diff(pair_of("lower") * pair_of("upper") * pp.to_pair<dm::cplx>(), m);
  } else if (op == "lup-restricted") {
    if (r.value("verdict", "") != "feasible")
      throw dm::error(dm::errc::invalid_param, "cannot check an infeasible verdict");
    dm::perm p = perm_from_json(r.at("factors").at("P"));
    dm::pair_mat_c pp{p.to_matrix<dm::cplx>(), p.inverse().to_matrix<dm::cplx>()};
    resid = max_abs_diff(pair_of("lower") * pair_of("upper") * pp, m);
  } else if (op == "bkp") {
    dm::perm p = perm_from_json(r.at("factors").at("P"));
    dm::perm q = perm_from_json(r.at("factors").at("Q"));
    resid = max_abs_diff(p.apply_rows(m.A) * q.to_matrix<dm::cplx>(),
                         mat_of("L") * mat_of("D") * mat_of("U"));
  } else if (op == "rrqr") {
    dm::perm_pair pp{perm_from_json(r.at("factors").at("Pi1")),
                     perm_from_json(r.at("factors").at("Pi2"))};
    resid = max_abs_diff(m * pp.to_pair<dm::cplx>(), pair_of("Q") * pair_of("R"));
  } else {
    throw dm::error(dm::errc::invalid_param, "cannot check op: " + op);
  }
  json out{{"op", op}, {"check", resid <= gate ? "ok" : "mismatch"},
           {"residual", dm::num(resid)}, {"gate", dm::num(gate)}};
  if (resid > gate) out["verdict"] = "mismatch";
  return out;
}

// ---- yaglom ----------------------------------------------------------------

json yaglom_check(const std::string& path) {
  dm::pair_mat_c m = dm::variant_complexify(dm::load_pair_file(path));
  auto inv = dm::yaglom::jordan_invariant(m);
  auto cls = dm::yaglom::classify(m);
  json out;
  out["invariant"] = blocks_to_json(inv.blocks);
  out["covered"] = cls.covered;
  if (cls.kind) out["kind"] = dm::yaglom::kind_name(*cls.kind);
  out["proposed_covers"] = dm::yaglom::proposed_family_covers(m);
  return out;
}

int yaglom_demo() {
  auto demo = dm::yaglom::demo_invariants();
  const char* label[] = {"first (k=3)", "second", "third (alpha=1/2)", "fourth (k=1)"};
  std::cout << "Axial inversion J-invariants:\n";
  for (size_t i = 0; i < demo.size(); ++i) {
    std::cout << "  " << label[i] << ": ";
    const auto& blocks = demo[i].second.blocks;
    if (demo[i].second.is_jordan2()) {
      std::cout << "J2(" << dm::round_sig(blocks[0].lambda.real()) << ")";
    } else {
      std::cout << "diag(";
      for (size_t b = 0; b < blocks.size(); ++b) {
        const auto& l = blocks[b].lambda;
        std::cout << dm::round_sig(l.real()) << (l.imag() < 0 ? "-" : "+")
                  << dm::round_sig(std::abs(l.imag())) << "i";
        if (b + 1 < blocks.size()) std::cout << ", ";
      }
      std::cout << ")";
    }
    std::cout << "\n";
  }
  auto ce = dm::yaglom::counterexample();
  auto inv = dm::yaglom::jordan_invariant(ce);
  auto cls = dm::yaglom::classify(ce);
  std::cout << "Counterexample (2z + (1+j)) / ((1-j)z + 2): invariant J2("
            << dm::round_sig(inv.blocks[0].lambda.real()) << ") -> "
            << (cls.covered ? "Covered" : "NotCovered") << "\n";
  std::cout << "Proposed family [[k, 1+j], [1-j, k]] covers it: "
            << (dm::yaglom::proposed_family_covers(ce) ? "true" : "false") << "\n";
  return cls.covered ? 2 : 0;
}

json pinv_cmd(const std::string& path) {
  dm::pair_mat_c m = dm::variant_complexify(dm::load_pair_file(path));
  dm::pair_mat_c x = dm::pinv(m);
  auto rep = dm::penrose_check(m, x);
  json out;
  out["op"] = "pinv";
  out["input"] = dm::pair_to_json(m);
  out["pinv"] = dm::pair_to_json(x);
  out["penrose"] = json{{"m_x_m", rep.m_x_m},
                        {"x_m_x", rep.x_m_x},
                        {"mx_hermitian", rep.mx_herm},
                        {"xm_hermitian", rep.xm_herm}};
  out["residuals"] = json{{"m_x_m", dm::num(max_abs_diff(m * x * m, m))}};
  return out;
}

int dispatch(const options& opt, const std::string& cmd) {
  try {
    if (cmd == "decompose") {
      json out = opt.check ? run_check(opt) : run_decompose(opt);
      print_result(out, opt);
      if (out.value("verdict", "") == "infeasible" || out.value("verdict", "") == "mismatch")
        return 2;
      return 0;
    }
    if (cmd == "pinv") {
      print_result(pinv_cmd(opt.input), opt);
      return 0;
    }
    if (cmd == "yaglom-check") {
      print_result(yaglom_check(opt.input), opt);
      return 0;
    }
    if (cmd == "yaglom-demo") return yaglom_demo();
    if (cmd == "verify") return dm::run_acceptance(std::cout, opt.seed) ? 0 : 2;
  } catch (const dm::rank_mismatch_error& e) {
    json diag{{"error", dm::errc_name(e.code())},
              {"detail", e.what()},
              {"ranks", {e.ranks()[0], e.ranks()[1], e.ranks()[2], e.ranks()[3]}}};
    std::cout << diag.dump(2) << "\n";
    return 2;
  } catch (const dm::error& e) {
    if (e.code() == dm::errc::invalid_param) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
    json diag{{"error", dm::errc_name(e.code())}, {"detail", e.what()}};
    if (e.index() >= 0) diag["index"] = e.index();
    std::cout << diag.dump(2) << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no command\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix decompositions over the double (split-complex) and tessarine numbers"};
  app.require_subcommand(1);
  options opt;

  auto* dec = app.add_subcommand("decompose", "run a decomposition on a matrix-pair json file");
  dec->add_option("op", opt.op,
                  "one of: ldl ldu qr-comp qr-gs qr-hh svd-lr polar jsvd lup lup-restricted bkp rrqr")
      ->required();
  dec->add_option("input", opt.input, "matrix-pair json file (or a previous result with --check)")
      ->required();
  dec->add_option("--tol", opt.tol, "zero-divisor tolerance override");
  dec->add_option("--iters", opt.iters, "LR-SVD iteration count")->check(CLI::PositiveNumber);
  dec->add_option("--format", opt.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  dec->add_flag("--check", opt.check, "treat input as a previous result and re-verify it");

  auto* pv = app.add_subcommand("pinv", "Moore-Penrose pseudoinverse via the Jordan SVD");
  pv->add_option("input", opt.input)->required();
  pv->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));

  auto* yg = app.add_subcommand("yaglom", "LFT classification checker");
  yg->require_subcommand(1);
  auto* ygc = yg->add_subcommand("check", "classify a 2x2 matrix-pair file");
  ygc->add_option("input", opt.input)->required();
  ygc->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));
  auto* ygd = yg->add_subcommand("demo", "reproduce the classification counterexample");

  auto* vf = app.add_subcommand("verify", "run the full acceptance suite");
  vf->add_option("--seed", opt.seed, "seed for the randomized criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::string cmd;
  if (dec->parsed()) cmd = "decompose";
  else if (pv->parsed()) cmd = "pinv";
  else if (yg->parsed()) cmd = ygc->parsed() ? "yaglom-check" : "yaglom-demo";
  else if (vf->parsed()) cmd = "verify";
  (void)ygd;
  return dispatch(opt, cmd);
}
