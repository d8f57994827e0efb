// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Library results are cross-checked against the independent
// reference implementations in tests/oracles.hpp where one exists.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "concentration.hpp"
#include "convex.hpp"
#include "cramer.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "maxitivity.hpp"
#include "oracles.hpp"

#ifndef MX_CLI_PATH
#error "MX_CLI_PATH must name the CLI binary"
#endif

using namespace maxitive;
namespace fs = std::filesystem;

namespace {

/// Outcome of one criterion; detail names the first failed condition or the
/// headline numbers on success.
struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

const CheckTally* find_tally(const FiniteSuiteReport& r, const std::string& name) {
  for (const auto& t : r.checks)
    if (t.name == name) return &t;
  return nullptr;
}

void require_tallies(Outcome& o, const FiniteSuiteReport& r, const std::vector<std::string>& names) {
  for (const auto& name : names) {
    const auto* t = find_tally(r, name);
    o.require(t != nullptr, "missing check " + name);
    if (!t) return;
    o.require(t->checked > 0, "check " + name + " never ran");
    o.require(t->failed == 0, "check " + name + " failed: " + t->witness);
  }
}

Outcome finite_theorems() {
  Outcome o;
  FiniteConfig c;
  c.instances = 500;
  c.max_size = 6;
  c.functions = 100;
  c.plant_v_example = true;
  const auto r = finite_theorem_suite(c);
  o.require(r.instances >= 500, "fewer than 500 instances");
  o.require(r.violations() == 0, "suite reported violations");
  require_tallies(o, r,
                  {"indicator_recovery", "bounds_vs_integral_lower", "bounds_vs_integral_upper",
                   "rate_uniqueness", "principal_vs_cover_search", "planted_classification"});
  o.require(r.weakly_maxitive > 0 && r.not_weakly_maxitive > 0, "only one maxitivity class generated");

  // Literal cover enumeration, independent of the library, on size <= 5.
  // It costs 2^(up-set count), so families above 16 up-sets are skipped.
  Rng rng(20260);
  std::size_t compared = 0;
  std::size_t negatives = 0;
  while (compared < 300) {
    const auto p = random_preorder(rng, 1 + rng.below(5));
    const auto fam = make_family(p);
    if (fam->size() > 16) continue;
    const auto j = random_concentration(rng, fam);
    std::vector<oracle::Set> sets;
    for (const auto& s : fam->sets()) sets.push_back(fixtures::set_of(s));
    const bool expected = oracle::weakly_maxitive_by_covers(sets, fixtures::table_of(j));
    o.require(is_weakly_maxitive(j).verdict == expected, "principal criterion disagrees with cover enumeration");
    negatives += expected ? 0 : 1;
    ++compared;
  }
  o.require(negatives > 0, "cover enumeration saw no negative case");
  if (o.pass) {
    o.detail = std::to_string(r.instances) + " instances, " + std::to_string(r.not_weakly_maxitive) +
               " not weakly maxitive, " + std::to_string(compared) + " enumeration cross-checks";
  }
  return o;
}

Outcome representation() {
  Outcome o;
  FiniteConfig c;
  c.instances = 500;
  c.max_size = 6;
  c.functions = 100;
  c.staircase_max = 64;
  const auto r = representation_suite(c);
  o.require(r.violations() == 0, "suite reported violations");
  require_tallies(o, r, {"induced_concentration_recovery", "representation_gap", "staircase_sandwich",
                         "staircase_integral"});
  const auto* gap = find_tally(r, "representation_gap");
  if (gap) o.require(gap->worst_gap >= -1e-9, "representation gap exceeds 1e-9");
  if (o.pass) {
    o.detail = std::to_string(r.weakly_maxitive) + " weakly maxitive instances, " +
               std::to_string(gap->checked) + " representation checks";
  }
  return o;
}

Outcome bernoulli() {
  Outcome o;
  const auto m = SampleModel::bernoulli(0.5);
  const double lt = exact_tail_log(m, 0.75, 2000);
  o.require(std::abs(lt - oracle::binomial_log_tail(2000, 1500, 0.5)) <= 1e-9,
            "exact tail disagrees with direct summation");
  const double trace = lt / 2000.0;
  o.require(std::abs(trace + 0.130812) <= 0.005, fmt("trace %.6f not within 0.005 of -0.130812", trace));
  double worst = 0.0;
  for (int k = 11; k <= 19; ++k) {
    const double a = 0.05 * k;
    worst = std::max(worst, std::abs(monotone_cramer_rate(m, a) - oracle::kl_bernoulli(a, 0.5)));
  }
  o.require(worst <= 1e-6, fmt("rate vs KL error %.3g", worst));
  for (int k = -10; k <= 10; ++k) {
    const double a = 0.05 * k;
    o.require(monotone_cramer_rate(m, a) == 0.0, fmt("rate at a = %.2f is not 0", a));
  }
  if (o.pass) o.detail = fmt("trace(2000) = %.6f, KL error %.2g", trace, worst);
  return o;
}

Outcome gaussian() {
  Outcome o;
  const auto m = SampleModel::gaussian(0.0, 1.0);
  const double lt = exact_tail_log(m, 1.0, 3000);
  o.require(std::abs(lt - oracle::log_normal_tail(std::sqrt(3000.0))) <= 1e-9 * std::abs(lt),
            "normal tail disagrees with the reference");
  const double trace = lt / 3000.0;
  o.require(std::abs(trace + 0.5) <= 0.005, fmt("trace %.6f not within 0.005 of -0.5", trace));
  const double rate = monotone_cramer_rate(m, 1.0);
  o.require(std::abs(rate - 0.5) <= 1e-9, fmt("rate(1) = %.12f", rate));
  if (o.pass) o.detail = fmt("trace(3000) = %.6f, rate(1) = %.12f", trace, rate);
  return o;
}

Outcome supermultiplicativity() {
  Outcome o;
  std::vector<std::size_t> ns;
  for (std::size_t n = 1; 2 * n <= 2048; n *= 2) ns.push_back(n);
  const std::vector<std::size_t> short_ns = {1, 2, 4, 8, 16, 32};
  struct Case {
    const char* spec;
    bool full_range;
  };
  const Case cases[] = {{"bernoulli:0.5", true},
                        {"bernoulli:0.2", true},
                        {"finite:-1@0.5,0@0.2,2@0.3", true},
                        {"finite:0@0.4,1@0.35,1.7320508075688772@0.25", false}};
  std::size_t pairs = 0;
  for (const auto& cs : cases) {
    const auto m = SampleModel::parse(cs.spec);
    std::vector<double> as;
    const double hi = m.support_max();
    for (int k = 1; k <= 9; ++k) as.push_back(m.mean() + 0.1 * k * (hi - m.mean()));
    const auto r = supermultiplicativity_check(m, as, cs.full_range ? ns : short_ns, 1e-12);
    o.require(r.ok, std::string("doubling inequality fails for ") + cs.spec);
    pairs += r.pairs;
  }
  if (o.pass) o.detail = std::to_string(pairs) + " (a, n) pairs, lattice models to n = 2048";
  return o;
}

Outcome fenchel() {
  Outcome o;
  const auto x = linear_grid(-2.0, 2.0, 401);
  const double dx = x[1] - x[0];
  const auto mu = linear_grid(0.0, 10.0, 1001);
  const double dmu = mu[1] - mu[0];
  const std::vector<std::pair<const char*, std::function<double(double)>>> rates = {
      {"positive part", [](double t) { return std::max(t, 0.0); }},
      {"half square", [](double t) { return t > 0.0 ? 0.5 * t * t : 0.0; }},
      {"exponential", [](double t) { return std::exp(t) / 8.0; }},
      {"power 1.5", [](double t) { return t > 0.5 ? std::pow(t - 0.5, 1.5) : 0.0; }}};
  double worst = 0.0;
  for (const auto& [name, fn] : rates) {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = fn(x[i]);
    const Grid1D g(x, v);
    const auto bi = biconjugate(g, mu);
    // Two primal steps at the steepest slope plus two dual steps at |x| <= 2.
    double slope = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) slope = std::max(slope, (v[i] - v[i - 1]) / dx);
    const double tol = 2.0 * dx * slope + 2.0 * dmu * 2.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double err = std::abs(bi.values[i] - v[i]);
      worst = std::max(worst, err);
      o.require(err <= tol, std::string("biconjugate misses ") + name);
    }
    const auto star = fenchel_conjugate(g, mu);
    for (std::size_t k = 0; k < mu.size(); ++k)
      for (std::size_t i = 0; i < x.size(); ++i)
        o.require(v[i] + star.values[k] >= mu[k] * x[i] - 1e-12,
                  std::string("Young inequality fails for ") + name);
  }

  const auto m = SampleModel::bernoulli(0.5);
  const auto xs = linear_grid(0.0, 1.0, 2001);
  std::vector<double> rate(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) rate[i] = monotone_cramer_rate(m, xs[i]);
  const auto mus = linear_grid(0.0, 3.0, 301);
  const auto star = fenchel_conjugate_nonneg(Grid1D(xs, rate), mus);
  double lambda_err = 0.0;
  for (std::size_t k = 0; k < mus.size(); ++k)
    lambda_err = std::max(lambda_err, std::abs(star.values[k] - std::log(0.5 + 0.5 * std::exp(mus[k]))));
  o.require(lambda_err <= 0.01, fmt("log-MGF reproduced within %.3g only", lambda_err));
  if (o.pass) o.detail = fmt("biconjugate error %.3g, log-MGF error %.3g", worst, lambda_err);
  return o;
}

Outcome largest_term() {
  Outcome o;
  std::vector<std::size_t> schedule;
  for (std::size_t n = 100; n <= 2000; n += 100) schedule.push_back(n);
  std::vector<std::vector<double>> comps(2);
  for (auto n : schedule) {
    const double nd = static_cast<double>(n);
    comps[0].push_back(std::log(3.0) - 0.3 * nd);
    comps[1].push_back(std::log(5.0) - 0.5 * nd);
  }
  const auto lt = largest_term_check(schedule, comps, 1e-3);
  o.require(lt.ok, "largest term check failed");
  o.require(std::abs(lt.combined - lt.largest) <= 1e-3, "combined rate differs from the largest");

  const MaxOfMeasures seq({SampleModel::bernoulli(0.3), SampleModel::bernoulli(0.6)});
  const std::vector<std::pair<const char*, std::function<double(double)>>> fs = {
      {"x", [](double t) { return t; }},
      {"2 (x - 0.5)+", [](double t) { return 2.0 * std::max(t - 0.5, 0.0); }},
      {"x^2", [](double t) { return t * t; }}};
  double worst = 0.0;
  for (const auto& [name, f] : fs) {
    const auto r = entropic_vs_choquet(seq, f, schedule, 2);
    worst = std::max(worst, r.difference);
    o.require(r.difference <= 0.01, std::string("entropic and Choquet differ for f = ") + name);
  }

  const double mu = 1.0;
  const double limit = std::max(std::log(0.7 + 0.3 * std::exp(mu)), std::log(0.4 + 0.6 * std::exp(mu)));
  double linear_err = 0.0;
  for (std::size_t n = 1; n <= 2000; n += (n < 50 ? 1 : 97)) {
    const double t = seq.log_expectation(n, [mu](double v) { return mu * v; }) / static_cast<double>(n);
    linear_err = std::max(linear_err, std::abs(t - limit));
  }
  o.require(linear_err <= 1e-12, fmt("linear trace off by %.3g", linear_err));
  if (o.pass) o.detail = fmt("entropic/Choquet gap %.3g, linear trace error %.2g", worst, linear_err);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs the CLI and returns (exit code, stdout bytes).
std::pair<int, std::string> run_cli(const fs::path& dir, const std::string& args) {
  const auto out = dir / "stdout";
  const std::string cmd = std::string("\"") + MX_CLI_PATH + "\" " + args + " >\"" + out.string() +
                          "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

Outcome determinism() {
  Outcome o;
  const auto dir = fs::temp_directory_path() / ("mx_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream(dir / "rate.csv") << "x,I\n-1,0\n0,0\n0.5,0.125\n1,0.5\n1.5,1.125\n2,2\n";
    std::ofstream(dir / "v.json") << concentration_to_json(fixtures::v_violation()).dump();
  }
  const std::string rate = "\"" + (dir / "rate.csv").string() + "\"";
  const std::string v = "\"" + (dir / "v.json").string() + "\"";
  const std::vector<std::string> commands = {
      "--seed 7 finite --instances 60 --functions 40 --plant-v",
      "--seed 7 --format csv finite --instances 60 --functions 40",
      "cramer --a-grid 0.55:0.95:0.05",
      "--format json cramer --model gaussian:0,1 --a-grid 0.5:1.5:0.5 --n-max 3000",
      "--seed 7 cramer --model exponential:1 --a-grid 1.5:2.5:0.5 --n-list 10:40:10 --trials 4000",
      "asym --model bernoulli:0.3 --model bernoulli:0.6 --schedule 100:1000:100",
      "--seed 7 asym --schedule 10:40:10 --trials 4000",
      "conjugate --input " + rate,
      "--format csv conjugate --input " + rate,
      "--seed 7 check --input " + v};
  std::size_t runs = 0;
  for (const auto& cmd : commands) {
    const auto base = run_cli(dir, "--threads 1 " + cmd);
    o.require(base.first == 0 || base.first == 1, "CLI error on: " + cmd);
    o.require(!base.second.empty(), "empty output on: " + cmd);
    for (const char* threads : {"--threads 1 ", "--threads 4 ", "--threads 8 "}) {
      const auto again = run_cli(dir, threads + cmd);
      o.require(again == base, std::string("output differs with ") + threads + "on: " + cmd);
      ++runs;
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (o.pass) o.detail = std::to_string(commands.size()) + " configs, " + std::to_string(runs) + " repeat runs identical";
  return o;
}

struct Criterion {
  const char* name;
  double budget_s;  ///< wall-clock limit; 0 means none
  Outcome (*fn)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"finite theorem suite", 60.0, finite_theorems},
      {"representation theorem", 30.0, representation},
      {"monotone Cramer, Bernoulli(0.5)", 5.0, bernoulli},
      {"monotone Cramer, Gaussian(0,1)", 1.0, gaussian},
      {"supermultiplicativity", 5.0, supermultiplicativity},
      {"Fenchel machinery", 5.0, fenchel},
      {"largest term and entropic limits", 60.0, largest_term},
      {"CLI determinism", 0.0, determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.pass && c.budget_s > 0.0 && secs > c.budget_s) {
      o.pass = false;
      o.detail = fmt("took %.2f s, budget %.0f s", secs, c.budget_s);
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", index, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
