#pragma once

// Experiment runners behind the CLI subcommands. Every runner is a pure
// function of its config: per-cell seeds come from derive_seed(seed, cell)
// and results are merged in cell order, so output bytes do not depend on the
// thread count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "cramer.hpp"
#include "extended_real.hpp"
#include "io.hpp"
#include "preorder.hpp"

namespace maxitive {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& text);

struct CommonConfig {
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::optional<double> tol;  ///< overrides the runner's default tolerance
  OutputFormat format = OutputFormat::json;
};

struct RunResult {
  std::string output;
  std::size_t violations = 0;
};

/// One named invariant evaluated over many cases.
struct CheckTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  double worst_gap = kPosInf;  ///< >= 0 means the invariant held
  std::string witness;         ///< first failure in cell order
};

struct FiniteConfig {
  CommonConfig common;
  std::size_t instances = 200;
  std::size_t max_size = 6;
  std::size_t functions = 100;        ///< random increasing functions per instance
  std::size_t cover_search_max = 5;   ///< cover cross-check on posets up to this size
  std::size_t staircase_max = 64;
  std::optional<FinitePreorder> poset;  ///< fixed poset instead of random ones
  bool plant_v_example = false;
};

struct FiniteSuiteReport {
  std::size_t instances = 0;
  std::size_t weakly_maxitive = 0;
  std::size_t not_weakly_maxitive = 0;
  std::vector<CheckTally> checks;
  Json planted = Json::array();
  std::size_t violations() const;
};

/// Recovery, bound/integral equivalence, uniqueness, maxitivity criteria,
/// envelope and tightness checks on random (poset, J) pairs.
FiniteSuiteReport finite_theorem_suite(const FiniteConfig& config);

/// Representation identity and staircase sandwich on weakly maxitive J.
FiniteSuiteReport representation_suite(const FiniteConfig& config);

RunResult run_finite_suite(const FiniteConfig& config);

struct CramerConfig {
  CommonConfig common;
  std::string model = "bernoulli:0.5";
  std::vector<double> a_grid;
  std::size_t n_max = 2000;
  std::vector<std::size_t> ns;  ///< empty: n_max / 2^k for k = 4..0
  std::uint64_t trials = 0;     ///< Monte Carlo trials for models without exact tails
};

/// n_max / 16, n_max / 8, ..., n_max with duplicates and zeros removed.
std::vector<std::size_t> default_n_schedule(std::size_t n_max);

RunResult run_cramer(const CramerConfig& config);

struct AsymConfig {
  CommonConfig common;
  std::vector<std::string> models{"bernoulli:0.5"};  ///< several: max of measures
  std::string set = "a=0.75";                        ///< "a=x" closed, "a>x" open
  std::vector<std::size_t> schedule;
  std::uint64_t trials = 0;  ///< > 0 selects the Monte Carlo sequence
};

HalfLine parse_half_line(const std::string& text);

RunResult run_asym(const AsymConfig& config);

struct ConjugateConfig {
  CommonConfig common;
  std::string input_csv;  ///< (x, I) rows
  double mu_max = 3.0;
  std::size_t mu_points = 301;
};

RunResult run_conjugate(const ConjugateConfig& config);

struct CheckConfig {
  CommonConfig common;
  std::string concentration_json;
  std::size_t samples = 200;  ///< random increasing functions for the sampled mLP
};

RunResult run_check(const CheckConfig& config);

}  // namespace maxitive
