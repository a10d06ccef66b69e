#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct run_result {
  int exit_code;
  std::string out;
};

run_result run_cli(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_tmp(const std::string& name, const std::string& body) {
  std::string path = std::string("cli_") + name;
  std::ofstream f(path);
  f << body;
  return path;
}

}  // namespace

TEST_CASE("jsvd of the identity pair") {
  auto in = write_tmp("id.json", R"({"field":"real","A":[[1,0],[0,1]]})");
  auto r = run_cli("decompose jsvd " + in);
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  REQUIRE(j.contains("blocks"));
  CHECK(j["blocks"].size() == 2);
  for (const auto& b : j["blocks"]) {
    CHECK(b["size"] == 1);
    CHECK(b["eigenvalue"][0].get<double>() == doctest::Approx(1.0));
  }
  CHECK(j["residuals"]["reconstruction"].get<double>() < 1e-9);
}

TEST_CASE("the restricted LUP counterexample exits 2 with an infeasible verdict") {
  auto in = write_tmp("ce.json", R"({"field":"real","A":[[1,0],[0,1]],"B":[[0,1],[1,0]]})");
  auto r = run_cli("decompose lup-restricted " + in);
  CHECK(r.exit_code == 2);
  json j = json::parse(r.out);
  CHECK(j["verdict"] == "infeasible");
}

TEST_CASE("yaglom demo prints the four invariants and NotCovered") {
  auto r = run_cli("yaglom demo");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("J2(2)") != std::string::npos);
  CHECK(r.out.find("NotCovered") != std::string::npos);
  CHECK(r.out.find("covers it: true") != std::string::npos);
}

TEST_CASE("yaglom check classifies a family member") {
  auto in = write_tmp("second.json",
                      R"({"field":"real","A":[[1,-1],[3,1]],"B":[[-1,3],[-1,-1]]})");
  auto r = run_cli("yaglom check " + in);
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["covered"] == true);
  CHECK(j["kind"] == "second");
}

TEST_CASE("every decomposition output passes its own --check") {
  auto in = write_tmp("m.json", R"({"field":"real","A":[[2,1],[1,3]],"B":[[1,0],[1,2]]})");
  auto herm = write_tmp("h.json", R"({"field":"real","A":[[3,1],[1,2]],"B":[[3,1],[1,2]]})");
  for (const std::string op :
       {"ldl", "ldu", "qr-comp", "qr-gs", "qr-hh", "svd-lr", "polar", "jsvd", "lup",
        "lup-restricted", "bkp", "rrqr"}) {
    const std::string& src = (op == "ldl" || op == "bkp") ? herm : in;
    auto r = run_cli("decompose " + op + " " + src);
    REQUIRE_MESSAGE(r.exit_code == 0, op);
    std::string res = write_tmp("res_" + op + ".json", r.out);
    auto chk = run_cli("decompose " + op + " " + res + " --check");
    CHECK_MESSAGE(chk.exit_code == 0, op);
    json j = json::parse(chk.out);
    CHECK_MESSAGE(j["check"] == "ok", op);
  }
}

TEST_CASE("identical inputs produce byte-identical output") {
  auto in = write_tmp("det.json", R"({"field":"real","A":[[2,1],[1,3]],"B":[[1,0],[1,2]]})");
  auto r1 = run_cli("decompose qr-hh " + in);
  auto r2 = run_cli("decompose qr-hh " + in);
  CHECK(r1.out == r2.out);
}

TEST_CASE("rank mismatch reports the four ranks and exits 2") {
  auto in = write_tmp("rk.json", R"({"field":"real","A":[[1,0],[0,0]],"B":[[0,0],[1,0]]})");
  auto r = run_cli("pinv " + in);
  CHECK(r.exit_code == 2);
  json j = json::parse(r.out);
  CHECK(j["error"] == "rank_mismatch");
  CHECK(j["ranks"] == json::array({1, 1, 0, 1}));
}

TEST_CASE("io errors exit 1") {
  auto r = run_cli("pinv does_not_exist.json");
  CHECK(r.exit_code == 1);
}

TEST_CASE("complex-field input is accepted") {
  auto in = write_tmp("cx.json",
                      R"({"field":"complex","A":[[[2,1],[0,0]],[[0,0],[1,-1]]]})");
  auto r = run_cli("decompose jsvd " + in);
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["residuals"]["reconstruction"].get<double>() < 1e-8);
}
