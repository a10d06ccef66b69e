#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "doublemat/jordan_svd.hpp"
#include "doublemat/pivoted.hpp"
#include "doublemat/verify.hpp"
#include "doublemat/yaglom.hpp"

#include <sstream>

namespace py = pybind11;
namespace dm = doublemat;

namespace {

using rows_t = std::vector<std::vector<dm::cplx>>;

dm::mat_c to_mat(const rows_t& rows) {
  int r = int(rows.size());
  int c = r ? int(rows[0].size()) : 0;
  dm::mat_c a(r, c);
  for (int i = 0; i < r; ++i) {
    if (int(rows[i].size()) != c) throw dm::error(dm::errc::dimension_mismatch, "ragged rows");
    for (int j = 0; j < c; ++j) a(i, j) = rows[i][j];
  }
  return a;
}

rows_t to_rows(const dm::mat_c& a) {
  rows_t rows(a.rows(), std::vector<dm::cplx>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) rows[i][j] = a(i, j);
  return rows;
}

dm::pair_mat_c to_pair_mat(const rows_t& a, const std::optional<rows_t>& b) {
  dm::mat_c am = to_mat(a);
  dm::mat_c bm = b ? to_mat(*b) : am.transpose();
  return {std::move(am), std::move(bm)};
}

py::dict pair_dict(const dm::pair_mat_c& m) {
  py::dict d;
  d["A"] = to_rows(m.A);
  d["B"] = to_rows(m.B);
  return d;
}

py::list blocks_list(const std::vector<dm::jordan_block>& blocks) {
  py::list out;
  for (const auto& b : blocks) out.append(py::make_tuple(b.lambda, b.size));
  return out;
}

py::list perm_list(const dm::perm& p) {
  py::list out;
  for (int i : p.idx) out.append(i);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "matrix decompositions over the double (split-complex) and tessarine numbers";

  py::register_exception<dm::error>(m, "DoubleMatError");

  m.def(
      "mul",
      [](const rows_t& a1, const rows_t& b1, const rows_t& a2, const rows_t& b2) {
        return pair_dict(to_pair_mat(a1, b1) * to_pair_mat(a2, b2));
      },
      "Pair product [A1,B1] @ [A2,B2] = [A1 A2, B2 B1].", py::arg("a1"), py::arg("b1"),
      py::arg("a2"), py::arg("b2"));

  m.def(
      "conj_transpose",
      [](const rows_t& a, const std::optional<rows_t>& b) {
        return pair_dict(to_pair_mat(a, b).conj_transpose());
      },
      py::arg("a"), py::arg("b") = std::nullopt);

  m.def(
      "ldl",
      [](const rows_t& a, const std::optional<rows_t>& b) {
        auto f = dm::ldl_double(to_pair_mat(a, b));
        py::dict d;
        d["L"] = pair_dict(f.L);
        d["D"] = pair_dict(f.D);
        return d;
      },
      "LDL of a Hermitian split matrix; unpacks to the LDU of the component.", py::arg("a"),
      py::arg("b") = std::nullopt);

  m.def(
      "ldu",
      [](const rows_t& a) {
        auto f = dm::ldu_via_double(to_mat(a));
        return py::make_tuple(to_rows(f.L), to_rows(f.D), to_rows(f.U));
      },
      "LDU of a base-field matrix through the split LDL reduction.", py::arg("a"));

  m.def(
      "qr",
      [](const rows_t& a, const std::optional<rows_t>& b, const std::string& method) {
        dm::pair_mat_c mm = to_pair_mat(a, b);
        dm::qr_result<dm::cplx> f;
        if (method == "components") f = dm::qr_components(mm);
        else if (method == "gram-schmidt") f = dm::qr_gram_schmidt(mm);
        else if (method == "householder") f = dm::qr_householder(mm);
        else throw dm::error(dm::errc::invalid_param, "method must be components, gram-schmidt or householder");
        py::dict d;
        d["Q"] = pair_dict(f.Q);
        d["R"] = pair_dict(f.R);
        return d;
      },
      "QR via one of the three algorithms; R = [U, L] with L U = B A.", py::arg("a"),
      py::arg("b") = std::nullopt, py::arg("method") = "householder");

  m.def(
      "svd_lr",
      [](const rows_t& a, const std::optional<rows_t>& b, int iters) {
        return pair_dict(dm::svd_lr(to_pair_mat(a, b), iters));
      },
      "LR-iteration singular values; fixed sweep count, no convergence test.", py::arg("a"),
      py::arg("b") = std::nullopt, py::arg("iters") = 20);

  m.def(
      "polar",
      [](const rows_t& a, const std::optional<rows_t>& b) {
        auto f = dm::polar(to_pair_mat(a, b));
        py::dict d;
        d["U"] = pair_dict(f.U);
        d["P"] = pair_dict(f.P);
        return d;
      },
      py::arg("a"), py::arg("b") = std::nullopt);

  m.def(
      "jordan_svd",
      [](const rows_t& a, const std::optional<rows_t>& b) {
        auto s = dm::jordan_svd(to_pair_mat(a, b));
        py::dict d;
        d["U"] = pair_dict(s.U);
        d["V"] = pair_dict(s.V);
        d["J"] = to_rows(s.J());
        d["blocks"] = blocks_list(s.blocks);
        return d;
      },
      "M = U [J,J] V* with J a complex Jordan matrix, eigenvalues in the half-plane.",
      py::arg("a"), py::arg("b") = std::nullopt);

  m.def(
      "pinv",
      [](const rows_t& a, const std::optional<rows_t>& b) {
        return pair_dict(dm::pinv(to_pair_mat(a, b)));
      },
      "Moore-Penrose pseudoinverse V [J+,J+] U*; needs matching component ranks.", py::arg("a"),
      py::arg("b") = std::nullopt);

  m.def(
      "penrose_check",
      [](const rows_t& a, const rows_t& b, const rows_t& xa, const rows_t& xb) {
        auto rep = dm::penrose_check(dm::pair_mat_c{to_mat(a), to_mat(b)},
                                     dm::pair_mat_c{to_mat(xa), to_mat(xb)});
        py::dict d;
        d["m_x_m"] = rep.m_x_m;
        d["x_m_x"] = rep.x_m_x;
        d["mx_hermitian"] = rep.mx_herm;
        d["xm_hermitian"] = rep.xm_herm;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("xa"), py::arg("xb"));

  m.def(
      "uniqueness_probe",
      [](const rows_t& a, const std::optional<rows_t>& b) {
        return dm::uniqueness_probe(to_pair_mat(a, b));
      },
      py::arg("a"), py::arg("b") = std::nullopt);

  m.def("in_half_plane", [](dm::cplx z) { return dm::in_half_plane(z); }, py::arg("z"));

  m.def(
      "lup",
      [](const rows_t& a, const std::optional<rows_t>& b) {
        auto f = dm::lup_general(to_pair_mat(a, b));
        py::dict d;
        d["lower"] = pair_dict(f.lower);
        d["upper"] = pair_dict(f.upper);
        d["P"] = perm_list(f.perm.P);
        d["Q"] = perm_list(f.perm.Q);
        return d;
      },
      "Split LUP with the permutation pair [P, Q]; always exists.", py::arg("a"),
      py::arg("b") = std::nullopt);

  m.def(
      "lup_restricted",
      [](const rows_t& a, const std::optional<rows_t>& b) -> py::object {
        auto f = dm::lup_restricted(to_pair_mat(a, b));
        if (!f) return py::none();
        py::dict d;
        d["lower"] = pair_dict(f->lower);
        d["upper"] = pair_dict(f->upper);
        d["P"] = perm_list(f->P);
        return d;
      },
      "Exhaustive search for a [P, P^-1]-pivoted LUP; None when infeasible.", py::arg("a"),
      py::arg("b") = std::nullopt);

  m.def(
      "bkp",
      [](const rows_t& a, const std::optional<rows_t>& b) {
        auto f = dm::bkp_double(to_pair_mat(a, b));
        py::dict d;
        d["P"] = perm_list(f.perm.P);
        d["Q"] = perm_list(f.perm.Q);
        d["L"] = to_rows(f.L);
        d["D"] = to_rows(f.D);
        d["U"] = to_rows(f.U);
        return d;
      },
      "Pivoted split LDL: P A Q = L D U under complete pivoting.", py::arg("a"),
      py::arg("b") = std::nullopt);

  m.def(
      "rrqr",
      [](const rows_t& a, const std::optional<rows_t>& b) {
        auto f = dm::rrqr_double(to_pair_mat(a, b));
        py::dict d;
        d["Pi1"] = perm_list(f.perm.P);
        d["Pi2"] = perm_list(f.perm.Q);
        d["Q"] = pair_dict(f.Q);
        d["R"] = pair_dict(f.R);
        return d;
      },
      "Rank-revealing QR analogue: M [Pi1, Pi2] = Q R.", py::arg("a"),
      py::arg("b") = std::nullopt);

  m.def(
      "yaglom_classify",
      [](const rows_t& a, const std::optional<rows_t>& b) {
        dm::pair_mat_c mm = to_pair_mat(a, b);
        auto inv = dm::yaglom::jordan_invariant(mm);
        auto cls = dm::yaglom::classify(mm);
        py::dict d;
        d["blocks"] = blocks_list(inv.blocks);
        d["covered"] = cls.covered;
        d["kind"] = cls.kind ? py::cast(dm::yaglom::kind_name(*cls.kind)) : py::none();
        d["proposed_covers"] = dm::yaglom::proposed_family_covers(mm);
        return d;
      },
      "Jordan invariant of a 2x2 split matrix against the four inversion families.",
      py::arg("a"), py::arg("b") = std::nullopt);

  m.def(
      "inversion_matrix",
      [](const std::string& kind, double param) {
        dm::yaglom::inversion_kind k;
        if (kind == "first") k = dm::yaglom::inversion_kind::first;
        else if (kind == "second") k = dm::yaglom::inversion_kind::second;
        else if (kind == "third") k = dm::yaglom::inversion_kind::third;
        else if (kind == "fourth") k = dm::yaglom::inversion_kind::fourth;
        else throw dm::error(dm::errc::invalid_param, "kind must be first/second/third/fourth");
        return pair_dict(complexify(dm::yaglom::inversion_matrix({k, param})));
      },
      py::arg("kind"), py::arg("param") = 0.0);

  m.def(
      "run_acceptance",
      [](uint64_t seed) {
        std::ostringstream os;
        bool ok = dm::run_acceptance(os, seed);
        return py::make_tuple(ok, os.str());
      },
      "Run the acceptance suite; returns (passed, report).", py::arg("seed") = 20240817);

  m.attr("__version__") = "0.1.0";
}
