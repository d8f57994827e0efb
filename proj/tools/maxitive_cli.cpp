// Command-line front end. Links only the C interface.
//
// Exit codes: 0 success, 1 a checked invariant was violated, 2 bad
// configuration or input, 3 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maxitive/maxitive.h"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

struct ConfigError {
  std::string message;
};

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::optional<double> tol;
  std::size_t threads = 1;
};

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError{"cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

mx_common_config common(const Globals& g, mx_format default_format, bool stochastic,
                        const char* what) {
  mx_common_config c;
  c.seed = 1;
  if (stochastic && !g.seed) throw ConfigError{std::string("--seed is required for ") + what};
  if (g.seed) c.seed = *g.seed;
  c.threads = g.threads == 0 ? 1 : g.threads;
  c.has_tol = g.tol ? 1 : 0;
  c.tol = g.tol.value_or(0.0);
  if (g.format.empty()) {
    c.format = default_format;
  } else if (g.format == "csv") {
    c.format = MX_FORMAT_CSV;
  } else if (g.format == "json") {
    c.format = MX_FORMAT_JSON;
  } else {
    throw ConfigError{"--format must be csv or json"};
  }
  return c;
}

std::vector<double> real_range(const std::string& text, const char* flag) {
  double* data = nullptr;
  std::size_t n = 0;
  if (mx_parse_real_range(text.c_str(), &data, &n) != MX_OK) {
    throw ConfigError{std::string(flag) + ": " + mx_last_error()};
  }
  std::vector<double> out(data, data + n);
  mx_doubles_free(data);
  return out;
}

std::vector<std::size_t> count_range(const std::string& text, const char* flag) {
  std::size_t* data = nullptr;
  std::size_t n = 0;
  if (mx_parse_count_range(text.c_str(), &data, &n) != MX_OK) {
    throw ConfigError{std::string(flag) + ": " + mx_last_error()};
  }
  std::vector<std::size_t> out(data, data + n);
  mx_counts_free(data);
  return out;
}

int emit(mx_status status, char* output, std::size_t violations, const Globals& g) {
  if (status != MX_OK) {
    std::fprintf(stderr, "error (%s): %s\n", mx_status_name(status), mx_last_error());
    return status == MX_INTERNAL ? kExitInternal : kExitConfig;
  }
  const std::string text = output ? output : "";
  mx_string_free(output);
  if (g.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  } else {
    std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) {
      std::fprintf(stderr, "error: cannot write %s\n", g.out.c_str());
      return kExitConfig;
    }
  }
  if (violations > 0) {
    std::fprintf(stderr, "%zu invariant violation(s); see report\n", violations);
    return kExitViolation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maxitive set functions, concentrations and monotone large deviations"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Root seed (u64); required for stochastic runs");
  app.add_option("--out", g.out, "Output path (default stdout)");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", g.tol, "Override the default tolerance");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* finite = app.add_subcommand("finite", "Randomized finite-theorem suite");
  std::size_t instances = 200, max_size = 6, functions = 100, cover_max = 5, stair_max = 64;
  std::string poset_path;
  bool plant_v = false;
  finite->add_option("--instances", instances, "Random (poset, J) pairs");
  finite->add_option("--max-size", max_size, "Largest random poset");
  finite->add_option("--functions", functions, "Random increasing functions per instance");
  finite->add_option("--cover-search-max", cover_max, "Cover cross-check up to this poset size");
  finite->add_option("--staircase-max", stair_max, "Largest staircase resolution N");
  finite->add_option("--poset", poset_path, "Fixed poset file instead of random posets");
  finite->add_flag("--plant-v", plant_v, "Add the V-shaped non-maxitive example");

  auto* cramer = app.add_subcommand("cramer", "Exact or sampled tails against the monotone rate");
  std::string model = "bernoulli:0.5", a_grid, n_list;
  std::size_t n_max = 2000;
  std::uint64_t trials = 0;
  cramer->add_option("--model", model, "bernoulli:p | gaussian:m,s2 | exponential:l | finite:x@p,...");
  cramer->add_option("--a-grid", a_grid, "lo:hi:step")->required();
  cramer->add_option("--n-max", n_max, "Largest n");
  cramer->add_option("--n-list", n_list, "Explicit n schedule lo:hi:step");
  cramer->add_option("--trials", trials, "Monte Carlo trials for models without exact tails");

  auto* asym = app.add_subcommand("asym", "Limsup rate of a capacity sequence");
  std::vector<std::string> models;
  std::string set = "a=0.75", schedule = "100:2000:100";
  std::uint64_t asym_trials = 0;
  asym->add_option("--model", models, "Model spec; repeat for a max of measures");
  asym->add_option("--set", set, "a=x for [x, inf), a>x for (x, inf)");
  asym->add_option("--schedule", schedule, "n schedule lo:hi:step");
  asym->add_option("--trials", asym_trials, "Monte Carlo trials (0: exact)");

  auto* conj = app.add_subcommand("conjugate", "Conjugate of a rate over mu >= 0");
  std::string conj_input;
  double mu_max = 3.0;
  std::size_t mu_points = 301;
  conj->add_option("--input", conj_input, "CSV with columns x, I")->required();
  conj->add_option("--mu-max", mu_max, "Largest dual point");
  conj->add_option("--mu-points", mu_points, "Dual grid size");

  auto* check = app.add_subcommand("check", "Maxitivity and bound report for a concentration");
  std::string check_input;
  std::size_t samples = 200;
  check->add_option("--input", check_input, "Concentration JSON")->required();
  check->add_option("--samples", samples, "Random increasing test functions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    char* output = nullptr;
    std::size_t violations = 0;
    mx_status status = MX_OK;
    if (finite->parsed()) {
      std::string poset_text;
      if (!poset_path.empty()) poset_text = read_input(poset_path);
      mx_finite_config c;
      mx_finite_config_init(&c);
      c.common = common(g, MX_FORMAT_JSON, true, "finite");
      c.instances = instances;
      c.max_size = max_size;
      c.functions = functions;
      c.cover_search_max = cover_max;
      c.staircase_max = stair_max;
      c.poset_text = poset_path.empty() ? nullptr : poset_text.c_str();
      c.plant_v_example = plant_v ? 1 : 0;
      status = mx_run_finite(&c, &output, &violations);
    } else if (cramer->parsed()) {
      const auto as = real_range(a_grid, "--a-grid");
      std::vector<std::size_t> ns;
      if (!n_list.empty()) ns = count_range(n_list, "--n-list");
      mx_cramer_config c;
      mx_cramer_config_init(&c);
      c.common = common(g, MX_FORMAT_CSV, trials > 0, "Monte Carlo tails");
      c.model = model.c_str();
      c.a_grid = as.data();
      c.a_count = as.size();
      c.n_max = n_max;
      c.ns = ns.empty() ? nullptr : ns.data();
      c.n_count = ns.size();
      c.trials = trials;
      status = mx_run_cramer(&c, &output, &violations);
    } else if (asym->parsed()) {
      const auto sched = count_range(schedule, "--schedule");
      if (models.empty()) models.push_back("bernoulli:0.5");
      std::vector<const char*> ptrs;
      for (const auto& m : models) ptrs.push_back(m.c_str());
      mx_asym_config c;
      mx_asym_config_init(&c);
      c.common = common(g, MX_FORMAT_CSV, asym_trials > 0, "Monte Carlo sequences");
      c.models = ptrs.data();
      c.model_count = ptrs.size();
      c.set = set.c_str();
      c.schedule = sched.data();
      c.schedule_count = sched.size();
      c.trials = asym_trials;
      status = mx_run_asym(&c, &output, &violations);
    } else if (conj->parsed()) {
      const auto text = read_input(conj_input);
      mx_conjugate_config c;
      mx_conjugate_config_init(&c);
      c.common = common(g, MX_FORMAT_CSV, false, "conjugate");
      c.input_csv = text.c_str();
      c.mu_max = mu_max;
      c.mu_points = mu_points;
      status = mx_run_conjugate(&c, &output, &violations);
    } else if (check->parsed()) {
      const auto text = read_input(check_input);
      mx_check_config c;
      mx_check_config_init(&c);
      c.common = common(g, MX_FORMAT_JSON, samples > 0, "sampled checks");
      c.concentration_json = text.c_str();
      c.samples = samples;
      status = mx_run_check(&c, &output, &violations);
    }
    return emit(status, output, violations, g);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return kExitConfig;
  }
}
