#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef MX_CLI_PATH
#error "MX_CLI_PATH must name the CLI binary"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Per-process scratch directory, removed at exit.
struct Scratch {
  fs::path dir = fs::temp_directory_path() / ("mx_cli_test_" + std::to_string(::getpid()));
  Scratch() { fs::create_directories(dir); }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

fs::path scratch() {
  static const Scratch s;
  return s.dir;
}

Run run(const std::string& args) {
  const auto out = scratch() / "stdout";
  const auto err = scratch() / "stderr";
  const std::string cmd = std::string("\"") + MX_CLI_PATH + "\" " + args + " >\"" + out.string() +
                          "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write(const std::string& name, const std::string& content) {
  const auto p = scratch() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

const char* kVJson =
    R"({"poset": {"size": 3, "leq": [[0, 1], [0, 2]]},
        "upsets": ["000", "010", "001", "011", "111"],
        "values": ["-inf", -2, -2, -1, 0]})";

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("finite --instances 3").code == 2);
  CHECK(run("cramer").code == 2);
  CHECK(run("--seed 1 --format xml finite").code == 2);
  CHECK(run("--help").code == 0);
  const auto r = run("finite --instances 3");
  CHECK(r.err.find("--seed") != std::string::npos);
}

TEST_CASE("input errors exit 2") {
  CHECK(run("cramer --a-grid 0.9:0.5:0.1").code == 2);
  CHECK(run("cramer --model exponential:1 --a-grid 2:3:1").code == 2);
  CHECK(run("cramer --model exponential:1 --a-grid 2:3:1 --trials 100").code == 2);
  CHECK(run("conjugate --input /nonexistent/path.csv").code == 2);
  const auto bad = write("bad.json", "{");
  const auto r = run("--seed 1 check --input \"" + bad.string() + "\"");
  CHECK(r.code == 2);
  CHECK(r.err.find("parse_error") != std::string::npos);
  const auto poset = write("bad.poset", "3\n0 <= 9\n");
  CHECK(run("--seed 1 finite --poset \"" + poset.string() + "\"").code == 2);
}

TEST_CASE("finite suite output is byte-identical across runs and threads") {
  const std::string args = "finite --instances 30 --functions 20 --plant-v";
  const auto a = run("--seed 11 --threads 1 " + args);
  const auto b = run("--seed 11 --threads 1 " + args);
  const auto c = run("--seed 11 --threads 4 " + args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.out.find("\"violations\": 0") != std::string::npos);
  const auto file = scratch() / "finite.json";
  CHECK(run("--seed 11 --out \"" + file.string() + "\" " + args).code == 0);
  CHECK(slurp(file) == a.out);
  const auto csv = run("--seed 11 --format csv " + args);
  CHECK(csv.out.rfind("suite,check,checked,failed,worst_gap,witness\n", 0) == 0);
}

TEST_CASE("cramer exit codes") {
  const auto ok = run("cramer --a-grid 0.5:0.95:0.05");
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("a,n,log_tail_over_n,rate_ref,gap\n", 0) == 0);
  // A tolerance far below the finite-n error turns the limit check into a violation.
  const auto strict = run("--tol 1e-9 cramer --a-grid 0.6:0.8:0.1 --n-max 200");
  CHECK(strict.code == 1);
  CHECK(strict.err.find("violation") != std::string::npos);
  const auto mc = run("--seed 4 cramer --model exponential:1 --a-grid 2:3:1 --n-list 10:20:10 --trials 2000");
  CHECK(mc.code == 0);
  CHECK(mc.out == run("--seed 4 --threads 3 cramer --model exponential:1 --a-grid 2:3:1 "
                      "--n-list 10:20:10 --trials 2000").out);
}

TEST_CASE("asym, conjugate and check") {
  const auto asym = run("asym --schedule 100:400:100");
  CHECK(asym.code == 0);
  CHECK(asym.out.rfind("n,log_mu,rate_trace\n", 0) == 0);
  CHECK(run("asym --model bernoulli:0.3 --model bernoulli:0.6 --set 'a>0.7' --schedule 10:30:10").code == 0);
  CHECK(run("asym --set b=1").code == 2);

  std::string csv = "x,I\n";
  for (int i = -40; i <= 40; ++i) {
    char line[64];
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", i / 10.0, 0.5 * (i / 10.0) * (i / 10.0));
    csv += line;
  }
  const auto input = write("half_square.csv", csv);
  const auto conj = run("conjugate --input \"" + input.string() + "\"");
  CHECK(conj.code == 0);
  CHECK(conj.out.find("\n3,4.5,3\n") != std::string::npos);

  const auto v = write("v.json", kVJson);
  const auto check = run("--seed 2 check --input \"" + v.string() + "\"");
  CHECK(check.code == 0);
  CHECK(check.out.find("\"weakly_maxitive\": false") != std::string::npos);
  CHECK(run("check --input \"" + v.string() + "\" --samples 0").code == 0);
  CHECK(run("check --input \"" + v.string() + "\"").code == 2);
}
