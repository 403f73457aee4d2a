#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dslab/cli.hpp"
#include "dslab/report.hpp"
#include "support.hpp"

using namespace dslab;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

bool tagged(const std::string& err, const std::string& tag) { return err.rfind("error[" + tag + "]: ", 0) == 0; }

}  // namespace

TEST_CASE("analyze") {
  const Run r = run({"analyze", "--surface", "homogeneous", "--param", "a=0.6,b=0.8", "--grid", "64x64"});
  REQUIRE(r.code == 0);
  const json j = r.report();
  CHECK(j["invariants"]["willmore"].get<double>() == doctest::Approx(M_PI * M_PI / 1.92).epsilon(1e-12));
  CHECK(j["invariants"]["grid"] == json::array({64, 64}));

  const json c = run({"analyze", "--surface", "clifford", "--grid", "32x32"}).report();
  for (const char* k : {"gauss", "codazzi", "ricci"}) CHECK(c["invariants"]["integrability"][k].get<double>() < 1e-10);
  CHECK(c["invariants"]["degree"]["trivial"] == true);
}

TEST_CASE("usage errors") {
  Run r = run({"analyze"});
  CHECK(r.code == 2);
  CHECK(tagged(r.err, "invalid-argument"));
  CHECK(r.err.find("usage:") != std::string::npos);
  CHECK(run({"analyze", "--surface", "clifford", "--input", "x.txt"}).code == 2);
  CHECK(run({"frobnicate", "--surface", "clifford"}).code == 2);
  CHECK(tagged(run({"analyze", "--surface", "clifford", "--grid", "31x32"}).err, "invalid-argument"));
  CHECK(tagged(run({"analyze", "--surface", "clifford", "--grid", "big"}).err, "parse"));
  CHECK(run({"analyze", "--surface", "clifford", "--param", "a=0.5"}).code == 2);
  CHECK(run({"analyze", "--surface", "homogeneous", "--param", "a=zero"}).code == 2);
  CHECK(run({"analyze", "--surface", "clifford", "--tol-stat", "-1"}).code == 2);
  CHECK(run({"flow", "--surface", "clifford", "--scheme", "leapfrog"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("reports are reproducible unless stamped") {
  const std::vector<std::string> args{"stationary", "--surface", "homogeneous", "--param", "a=0.5"};
  CHECK(run(args).out == run(args).out);
  auto stamped = args;
  stamped.push_back("--stamp");
  json s = run(stamped).report();
  CHECK(s.contains("generated_at"));
  s.erase("generated_at");
  CHECK(s.dump(2) + "\n" == run(args).out);
}

TEST_CASE("stationary") {
  const Run c = run({"stationary", "--surface", "clifford"});
  CHECK(c.code == 0);
  const json j = c.report();
  CHECK(j["stationarity"]["verdict"] == true);
  CHECK(j["stationarity"]["residuals"]["total"].get<double>() < 1e-8);
  CHECK(j["stationarity"]["alpha"].size() == 2);
  CHECK(j["stationarity"]["rank"].contains("dim_null"));
  CHECK(j["classification"]["consistent"] == true);

  const Run p = run({"stationary", "--surface", "perturbed", "--param", "eps=0.01", "--grid", "64x64"});
  CHECK(p.code == 0);
  CHECK(p.report()["stationarity"]["verdict"] == false);
}

TEST_CASE("quartic") {
  const json h = run({"quartic", "--surface", "homogeneous", "--param", "a=0.6,b=0.8"}).report();
  CHECK(h["quartic"]["branch"] == "cmc");
  CHECK(h["quartic"]["lambda_mean"][0].get<double>() == doctest::Approx(0.151910).epsilon(1e-6));
  CHECK(run({"quartic", "--surface", "clifford"}).report()["quartic"]["branch"] == "willmore");

  REQUIRE(run({"make-surface", "--surface", "product", "--out", "cli_product.txt"}).code == 0);
  const Run r = run({"quartic", "--input", "cli_product.txt"});
  CHECK(r.code == 2);
  CHECK(tagged(r.err, "not-in-s3"));
}

TEST_CASE("flow") {
  const Run r = run({"flow", "--surface", "clifford", "--steps", "100", "--dt", "1e-3", "--trace", "cli_trace.csv",
                     "--final", "cli_final.txt"});
  REQUIRE(r.code == 0);
  const json j = r.report();
  CHECK(j["drift"]["kappa_sup"].get<double>() < 1e-8);
  const std::string trace = slurp("cli_trace.csv");
  CHECK(trace.rfind("t,conf_residual,willmore,c_sup,kappa_sup,gauss,codazzi,ricci\n", 0) == 0);
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 102);

  const Run big = run({"flow", "--surface", "homogeneous", "--dt", "10", "--steps", "1"});
  CHECK(big.code == 4);
  CHECK(tagged(big.err, "step-rejected"));
}

TEST_CASE("zero steps reproduce the input surface") {
  REQUIRE(run({"make-surface", "--surface", "perturbed", "--grid", "48x48", "--out", "cli_in.txt"}).code == 0);
  REQUIRE(run({"flow", "--input", "cli_in.txt", "--steps", "0", "--final", "cli_out.txt"}).code == 0);
  const LiftField a = load_immersion("cli_in.txt"), b = load_immersion("cli_out.txt");
  double gap = 0;
  for (std::size_t p = 0; p < a.grid().size(); ++p) {
    for (int c = 1; c < a.psi.dim(); ++c) {
      gap = std::max(gap, std::abs(a.psi[c][p] / a.psi[0][p] - b.psi[c][p] / b.psi[0][p]));
    }
  }
  CHECK(gap < 1e-14);
}

TEST_CASE("config file, flags win") {
  std::ofstream("cli_config.ini") << "surface=homogeneous\nparam=a=0.5\ngrid=16x16\n";
  const json a = run({"analyze", "--config", "cli_config.ini"}).report();
  CHECK(a["surface"]["params"]["a"] == 0.5);
  CHECK(a["invariants"]["grid"] == json::array({16, 16}));
  const json b = run({"analyze", "--config", "cli_config.ini", "--grid", "24x24"}).report();
  CHECK(b["invariants"]["grid"] == json::array({24, 24}));
  CHECK(run({"analyze", "--config", "missing.ini"}).code == 2);
}

TEST_CASE("field dump and I/O failures") {
  REQUIRE(run({"quartic", "--surface", "homogeneous", "--grid", "16x16", "--dump-fields", "cli_fields.csv"}).code == 0);
  const std::string csv = slurp("cli_fields.csv");
  CHECK(csv.rfind("j,k,x,y,re_kappa1,im_kappa1,re_kappa2,im_kappa2,re_c,im_c,re_rho,im_rho,re_q,im_q", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 257);

  const Run r = run({"analyze", "--surface", "clifford", "--out", "/nonexistent-dir/report.json"});
  CHECK(r.code == 5);
  CHECK(tagged(r.err, "io"));
  CHECK(run({"analyze", "--input", "/nonexistent-dir/in.txt"}).code == 5);
  CHECK(run({"make-surface", "--surface", "clifford"}).code == 2);
}
