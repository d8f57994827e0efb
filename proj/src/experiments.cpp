#include "experiments.hpp"

#include <algorithm>
#include <cmath>

#include "asymptotics.hpp"
#include "concentration.hpp"
#include "convex.hpp"
#include "error.hpp"
#include "expectation.hpp"
#include "generators.hpp"
#include "maxitivity.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "text.hpp"

namespace maxitive {

namespace {

constexpr double kDefaultFiniteTol = 1e-9;

// Tallies are created in a fixed name order per suite so that per-instance
// vectors merge index by index.
class Tallies {
 public:
  explicit Tallies(const std::vector<std::string>& names) {
    for (const auto& n : names) {
      CheckTally t;
      t.name = n;
      items_.push_back(std::move(t));
    }
  }

  // gap >= -tol passes.
  void gap(std::size_t id, double g, double tol, const std::string& witness) {
    auto& t = items_[id];
    ++t.checked;
    if (std::isnan(g)) g = kNegInf;
    t.worst_gap = std::min(t.worst_gap, g);
    if (g < -tol) fail_with(t, witness);
  }

  void verdict(std::size_t id, bool ok, const std::string& witness) {
    auto& t = items_[id];
    ++t.checked;
    if (ok) {
      t.worst_gap = std::min(t.worst_gap, 0.0);
    } else {
      t.worst_gap = kNegInf;
      fail_with(t, witness);
    }
  }

  void merge(const Tallies& other) {
    for (std::size_t i = 0; i < items_.size(); ++i) {
      auto& a = items_[i];
      const auto& b = other.items_[i];
      a.checked += b.checked;
      a.failed += b.failed;
      a.worst_gap = std::min(a.worst_gap, b.worst_gap);
      if (a.witness.empty()) a.witness = b.witness;
    }
  }

  const std::vector<CheckTally>& items() const { return items_; }

 private:
  static void fail_with(CheckTally& t, const std::string& witness) {
    ++t.failed;
    if (t.witness.empty()) t.witness = witness;
  }

  std::vector<CheckTally> items_;
};

std::string cell_label(std::size_t instance, const std::string& what) {
  return "instance " + std::to_string(instance) + ": " + what;
}

Json tally_json(const CheckTally& t) {
  Json out;
  out["name"] = t.name;
  out["checked"] = t.checked;
  out["failed"] = t.failed;
  out["worst_gap"] = real_to_json(t.worst_gap);
  out["witness"] = t.witness.empty() ? Json(nullptr) : Json(t.witness);
  return out;
}

Json reals_json(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(real_to_json(x));
  return out;
}

Json witness_json(const CoverWitness& w) {
  Json out;
  out["set"] = w.set.to_string();
  Json cover = Json::array();
  for (const auto& b : w.cover) cover.push_back(b.to_string());
  out["cover"] = std::move(cover);
  out["lhs"] = real_to_json(w.lhs);
  out["rhs"] = real_to_json(w.rhs);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// (poset, family, rate-generated J, arbitrary monotone J) for one cell.
struct Instance {
  FamilyPtr family;
  std::vector<double> rate;
  std::vector<Concentration> js;
};

Instance make_instance(Rng& rng, const FiniteConfig& config) {
  FinitePreorder space;
  if (config.poset) {
    space = *config.poset;
  } else {
    space = random_preorder(rng, 1 + rng.below(config.max_size));
  }
  Instance inst{make_family(space), random_rate(rng, space.size()), {}};
  inst.js.push_back(Concentration::from_rate(inst.family, inst.rate));
  inst.js.push_back(random_monotone_concentration(rng, inst.family));
  return inst;
}

void validate_finite(const FiniteConfig& config) {
  if (config.instances == 0) fail(ErrorCode::invalid_argument, "instances must be positive");
  if (!config.poset && (config.max_size == 0 || config.max_size > UpSetFamily::kDefaultCap)) {
    fail(ErrorCode::invalid_argument, "max size must be in [1, 16]");
  }
  if (config.poset && config.poset->size() > UpSetFamily::kDefaultCap) {
    fail(ErrorCode::cap_exceeded, "poset exceeds the enumeration cap of 16 elements");
  }
  if (config.staircase_max == 0) fail(ErrorCode::invalid_argument, "staircase max must be positive");
}

double finite_tol(const CommonConfig& c) { return c.tol.value_or(kDefaultFiniteTol); }

enum TheoremCheck : std::size_t {
  kRecovery,
  kGauge,
  kWeakVsComplete,
  kCoverSearch,
  kRateMaxitive,
  kTranslation,
  kShilkret,
  kEquivalenceLower,
  kEquivalenceUpper,
  kUniqueness,
  kMinimality,
  kTightness,
  kEnvelope,
  kPlanted,
};

const std::vector<std::string> kTheoremNames = {
    "indicator_recovery",        "indicator_gauge",      "weak_equals_complete",
    "principal_vs_cover_search", "rate_concentration_maxitive",
    "translation",               "shilkret_log_exp",     "bounds_vs_integral_lower",
    "bounds_vs_integral_upper",  "rate_uniqueness",      "rate_minimality",
    "tightness",                 "increasing_envelope",  "planted_classification",
};

enum RepresentationCheck : std::size_t {
  kInducedRecovery,
  kRepresentationGap,
  kStaircaseSandwich,
  kStaircaseIntegral,
};

const std::vector<std::string> kRepresentationNames = {
    "induced_concentration_recovery",
    "representation_gap",
    "staircase_sandwich",
    "staircase_integral",
};

struct CellResult {
  Tallies tallies;
  std::size_t weak = 0;
  std::size_t not_weak = 0;
};

void theorem_cell(std::size_t cell, const FiniteConfig& config, CellResult& out) {
  const double tol = finite_tol(config.common);
  Rng rng(derive_seed(config.common.seed, cell));
  const auto inst = make_instance(rng, config);
  const auto& fam = *inst.family;
  const auto& space = fam.space();
  const std::size_t n = space.size();

  std::vector<std::vector<double>> fns;
  for (std::size_t i = 0; i < fam.size(); ++i) fns.push_back(log_indicator(fam[i]));
  for (std::size_t i = 0; i < config.functions; ++i) fns.push_back(random_increasing_fn(rng, fam));

  auto envelope_rate = increasing_envelope(space, inst.rate);
  auto other_rate = random_rate(rng, n);

  for (std::size_t which = 0; which < inst.js.size(); ++which) {
    const auto& j = inst.js[which];
    const std::string tag = which == 0 ? "rate J" : "monotone J";
    auto& t = out.tallies;

    const auto wm = is_weakly_maxitive(j);
    (wm.verdict ? out.weak : out.not_weak) += 1;
    t.verdict(kWeakVsComplete, wm.verdict == is_completely_maxitive(j), cell_label(cell, tag));
    if (n <= config.cover_search_max) {
      t.verdict(kCoverSearch, weak_maxitivity_cover_search(j).verdict == wm.verdict,
                cell_label(cell, tag));
    }
    if (which == 0) t.verdict(kRateMaxitive, wm.verdict, cell_label(cell, tag));

    for (std::size_t i = 0; i < fam.size(); ++i) {
      const auto label = cell_label(cell, tag + " up-set " + fam[i].to_string());
      const double phi = maxitive_integral(j, log_indicator(fam[i]));
      t.verdict(kRecovery, phi == j.at(i), label);
      const auto gauge = indicator_gauge(j, fam[i]);
      t.verdict(kGauge, gauge.via_indicator == j.at(i) && gauge.via_limit == j.at(i), label);
    }

    const auto capacity = capacity_from_concentration(j);
    for (std::size_t k = 0; k < fns.size(); ++k) {
      const auto& f = fns[k];
      const auto label = cell_label(cell, tag + " function " + std::to_string(k));
      const double phi = maxitive_integral(j, f);
      for (double c : {-1.5, 2.25}) {
        std::vector<double> g(f);
        for (auto& v : g) v = ext_add(v, c);
        t.gap(kTranslation, -std::abs(signed_gap(maxitive_integral(j, g), ext_add(phi, c))), tol,
              label);
      }
      bool bounded = true;
      for (double v : f) bounded = bounded && v < 700.0;
      if (bounded) {
        std::vector<double> ef(f.size());
        for (std::size_t x = 0; x < f.size(); ++x) ef[x] = std::exp(f[x]);
        const double log_s = std::log(shilkret_integral(capacity, ef));
        t.gap(kShilkret, -std::abs(signed_gap(log_s, phi)), tol, label);
      }
    }

    const std::vector<std::vector<double>> rates = {minimal_rate(j), inst.rate, envelope_rate,
                                                    other_rate};
    for (std::size_t r = 0; r < rates.size(); ++r) {
      const auto& rate = rates[r];
      const auto label = cell_label(cell, tag + " rate " + std::to_string(r));
      const auto mldp = check_mldp(j, rate, tol);
      const auto mlp = check_mlp(j, rate, fns, tol);
      if (mldp.lower_ok) {
        t.gap(kEquivalenceLower, mlp.worst_gap_lower, tol, label);
      } else {
        t.verdict(kEquivalenceLower, !mlp.lower_ok, label);
      }
      if (mldp.upper_ok) {
        t.gap(kEquivalenceUpper, mlp.worst_gap_upper, tol, label);
      } else {
        t.verdict(kEquivalenceUpper, !mlp.upper_ok, label);
      }
      if (check_mldp(j, rate, 0.0).ok() && is_increasing(space, rate)) {
        t.verdict(kUniqueness, rate == minimal_rate(j), label);
      }
      const auto minimality = rate_minimality_check(j, rate);
      if (minimality.precondition_ok()) t.verdict(kMinimality, minimality.holds(), label);
    }
    t.verdict(kTightness, is_tight(j), cell_label(cell, tag));
  }

  for (std::size_t k = 0; k < 5; ++k) {
    std::vector<double> raw(n);
    for (auto& v : raw) v = rng.uniform(-3.0, 3.0);
    const auto env = increasing_envelope(space, raw);
    bool ok = is_increasing(space, env) && increasing_envelope(space, env) == env;
    for (std::size_t x = 0; x < n; ++x) ok = ok && env[x] <= raw[x];
    out.tallies.verdict(kEnvelope, ok, cell_label(cell, "envelope " + std::to_string(k)));
  }
}

void representation_cell(std::size_t cell, const FiniteConfig& config, CellResult& out) {
  const double tol = finite_tol(config.common);
  Rng rng(derive_seed(config.common.seed, cell));
  const auto inst = make_instance(rng, config);
  const auto& fam = *inst.family;
  const auto& space = fam.space();
  auto& t = out.tallies;

  for (std::size_t which = 0; which < inst.js.size(); ++which) {
    const auto& j = inst.js[which];
    if (!is_weakly_maxitive(j).verdict) {
      ++out.not_weak;
      continue;
    }
    ++out.weak;
    const std::string tag = which == 0 ? "rate J" : "monotone J";
    const auto psi = FunctionalModel::wrapped(j);
    const auto induced = induced_concentration(psi);
    bool same = true;
    for (std::size_t i = 0; i < fam.size(); ++i) same = same && induced.at(i) == j.at(i);
    t.verdict(kInducedRecovery, same, cell_label(cell, tag));

    std::vector<std::vector<double>> fns;
    for (std::size_t i = 0; i < config.functions; ++i) fns.push_back(random_increasing_fn(rng, fam));

    const double lo = -2.0;
    const double hi = 3.0;
    const auto f = random_bounded_increasing_fn(rng, space, lo, hi);
    const double phi_f = maxitive_integral(j, f);
    for (std::size_t steps = 1; steps <= config.staircase_max; ++steps) {
      const auto label = cell_label(cell, tag + " N = " + std::to_string(steps));
      try {
        const auto st = simple_staircase(f, lo, hi, steps);
        const double slack = 8.0 * 2.220446049250313e-16 * std::max({std::abs(lo), std::abs(hi), 1.0});
        double g = kPosInf;
        for (std::size_t x = 0; x < f.size(); ++x) {
          g = std::min({g, st.lower[x] - (f[x] - st.step) + slack, st.upper[x] - st.lower[x],
                        f[x] - st.upper[x] + slack});
        }
        t.gap(kStaircaseSandwich, g, 0.0, label);
        const double phi_l = maxitive_integral(j, st.lower);
        const double phi_u = maxitive_integral(j, st.upper);
        const double gi = std::min({phi_u - phi_l, phi_f - phi_u, phi_l - (phi_f - st.step)});
        t.gap(kStaircaseIntegral, gi, tol, label);
        if (steps == 1 || steps == 2 || steps == 8 || steps == config.staircase_max) {
          fns.push_back(st.lower);
          fns.push_back(st.upper);
        }
      } catch (const Error& e) {
        t.verdict(kStaircaseSandwich, false, label + ": " + e.what());
      }
    }
    fns.push_back(f);
    const auto gap = representation_gap(psi, fns);
    t.gap(kRepresentationGap, 0.0 - gap.worst, tol,
          cell_label(cell, tag + " function " +
                               (gap.worst_index ? std::to_string(*gap.worst_index) : "-")));
  }
}

template <class CellFn>
FiniteSuiteReport run_cells(const FiniteConfig& config, const std::vector<std::string>& names,
                            CellFn&& fn) {
  validate_finite(config);
  std::vector<CellResult> cells(config.instances, CellResult{Tallies(names)});
  parallel_for(config.instances, config.common.threads,
               [&](std::size_t i) { fn(i, config, cells[i]); });
  Tallies total(names);
  FiniteSuiteReport report;
  report.instances = config.instances;
  for (const auto& c : cells) {
    total.merge(c.tallies);
    report.weakly_maxitive += c.weak;
    report.not_weakly_maxitive += c.not_weak;
  }
  report.checks = total.items();
  return report;
}

Concentration v_poset_example() {
  const std::vector<std::pair<std::size_t, std::size_t>> edges = {{0, 1}, {0, 2}};
  const auto family = make_family(FinitePreorder::from_edges(3, edges));
  std::vector<double> values(family->size());
  for (std::size_t i = 0; i < family->size(); ++i) {
    const auto s = (*family)[i].to_string();
    values[i] = s == "000" ? kNegInf : s == "010" || s == "001" ? -2.0 : s == "011" ? -1.0 : 0.0;
  }
  return Concentration(family, std::move(values));
}

Json suite_json(const char* name, const FiniteSuiteReport& r) {
  Json out;
  out["suite"] = name;
  out["instances"] = r.instances;
  out["weakly_maxitive"] = r.weakly_maxitive;
  out["not_weakly_maxitive"] = r.not_weakly_maxitive;
  Json checks = Json::array();
  for (const auto& t : r.checks) checks.push_back(tally_json(t));
  out["checks"] = std::move(checks);
  return out;
}

void tally_csv(CsvWriter& csv, const char* suite, const FiniteSuiteReport& r) {
  for (const auto& t : r.checks) {
    csv.cell(std::string(suite)).cell(t.name).cell(t.checked).cell(t.failed).cell(t.worst_gap);
    csv.cell(t.witness.empty() ? std::string() : "\"" + t.witness + "\"");
    csv.end_row();
  }
}

std::string rate_gap(double trace, double rate) {
  if (trace == kNegInf && rate == kPosInf) return format_real(0.0);
  return format_real(std::abs(trace + rate));
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  fail(ErrorCode::invalid_argument, "format must be csv or json");
}

std::size_t FiniteSuiteReport::violations() const {
  std::size_t v = 0;
  for (const auto& t : checks) v += t.failed;
  return v;
}

FiniteSuiteReport finite_theorem_suite(const FiniteConfig& config) {
  auto report = run_cells(config, kTheoremNames, theorem_cell);
  if (config.plant_v_example) {
    const auto j = v_poset_example();
    const auto wm = is_weakly_maxitive(j);
    Json entry;
    entry["name"] = "v-poset";
    entry["concentration"] = concentration_to_json(j);
    entry["classification"] = wm.verdict ? "weakly maxitive" : "not weakly maxitive";
    entry["witness"] = wm.witness ? witness_json(*wm.witness) : Json(nullptr);
    report.planted.push_back(std::move(entry));
    auto& t = report.checks[kPlanted];
    ++t.checked;
    if (wm.verdict || !wm.witness || !(wm.witness->lhs > wm.witness->rhs)) {
      ++t.failed;
      t.worst_gap = kNegInf;
      t.witness = "v-poset classified as weakly maxitive";
    } else {
      t.worst_gap = std::min(t.worst_gap, 0.0);
    }
  }
  return report;
}

FiniteSuiteReport representation_suite(const FiniteConfig& config) {
  return run_cells(config, kRepresentationNames, representation_cell);
}

RunResult run_finite_suite(const FiniteConfig& config) {
  const auto theorems = finite_theorem_suite(config);
  const auto repr = representation_suite(config);
  RunResult result;
  result.violations = theorems.violations() + repr.violations();
  if (config.common.format == OutputFormat::json) {
    Json out;
    out["seed"] = config.common.seed;
    out["instances"] = config.instances;
    out["max_size"] = config.poset ? config.poset->size() : config.max_size;
    out["theorems"] = suite_json("theorems", theorems);
    out["representation"] = suite_json("representation", repr);
    out["planted"] = theorems.planted;
    out["violations"] = result.violations;
    result.output = dump(out);
  } else {
    CsvWriter csv({"suite", "check", "checked", "failed", "worst_gap", "witness"});
    tally_csv(csv, "theorems", theorems);
    tally_csv(csv, "representation", repr);
    result.output = csv.str();
  }
  return result;
}

std::vector<std::size_t> default_n_schedule(std::size_t n_max) {
  if (n_max == 0) fail(ErrorCode::invalid_argument, "n_max must be positive");
  std::vector<std::size_t> out;
  for (std::size_t k = 5; k-- > 0;) {
    const std::size_t n = n_max >> k;
    if (n > 0 && (out.empty() || out.back() != n)) out.push_back(n);
  }
  return out;
}

RunResult run_cramer(const CramerConfig& config) {
  if (config.a_grid.empty()) fail(ErrorCode::invalid_argument, "a-grid is empty");
  const auto model = SampleModel::parse(config.model);
  const auto ns = config.ns.empty() ? default_n_schedule(config.n_max) : config.ns;
  RunResult result;
  const bool csv_out = config.common.format == OutputFormat::csv;
  CsvWriter csv({"a", "n", "log_tail_over_n", "rate_ref", "gap"});
  Json out;
  out["model"] = model.to_string();

  if (model.has_exact_tail()) {
    const auto rep = verify_monotone_cramer(model, config.a_grid, ns, config.common.threads,
                                            config.common.tol);
    std::vector<double> ref(rep.a.size());
    for (std::size_t i = 0; i < rep.a.size(); ++i) ref[i] = rep.rate_ref[i].value_or(rep.rate[i]);
    for (std::size_t i = 0; i < rep.a.size(); ++i) {
      for (std::size_t k = 0; k < rep.n.size(); ++k) {
        csv.cell(rep.a[i]).cell(rep.n[k]).cell(rep.trace[i][k]).cell(ref[i]);
        csv.cell(rate_gap(rep.trace[i][k], ref[i]));
        csv.end_row();
      }
    }
    result.violations = rep.failures.size();
    if (!rep.ok() && result.violations == 0) result.violations = 1;
    if (!csv_out) {
      out["method"] = "exact";
      out["a"] = reals_json(rep.a);
      out["n"] = rep.n;
      out["rate"] = reals_json(rep.rate);
      Json refs = Json::array();
      for (const auto& r : rep.rate_ref) refs.push_back(r ? real_to_json(*r) : Json(nullptr));
      out["rate_closed_form"] = std::move(refs);
      Json trace = Json::array();
      Json open = Json::array();
      for (std::size_t i = 0; i < rep.a.size(); ++i) {
        trace.push_back(reals_json(rep.trace[i]));
        open.push_back(reals_json(rep.open_trace[i]));
      }
      out["trace"] = std::move(trace);
      out["open_trace"] = std::move(open);
      out["tolerance"] = real_to_json(rep.tolerance);
      out["worst_error"] = real_to_json(rep.worst_error);
      out["worst_ref_error"] = real_to_json(rep.worst_ref_error);
      out["limit_ok"] = rep.limit_ok;
      out["open_limit_ok"] = rep.open_limit_ok;
      out["upper_bound_ok"] = rep.upper_bound_ok;
      out["rate_shape_ok"] = rep.rate_shape_ok;
      out["failures"] = rep.failures;
    }
  } else {
    if (config.trials == 0) {
      fail(ErrorCode::missing_capability,
           model.to_string() + " has no exact tail; pass a positive trial count");
    }
    Json cells = Json::array();
    for (std::size_t i = 0; i < config.a_grid.size(); ++i) {
      const double a = config.a_grid[i];
      const double rate = monotone_cramer_rate(model, a);
      const double ref = closed_form_rate(model, a).value_or(rate);
      for (std::size_t k = 0; k < ns.size(); ++k) {
        const auto cell = i * ns.size() + k;
        const auto est = empirical_J(model, a, ns[k], config.trials,
                                     derive_seed(config.common.seed, cell), config.common.threads);
        csv.cell(a).cell(ns[k]).cell(est.estimate).cell(ref).cell(rate_gap(est.estimate, ref));
        csv.end_row();
        Json c;
        c["a"] = real_to_json(a);
        c["n"] = ns[k];
        c["rate"] = real_to_json(rate);
        c["rate_ref"] = real_to_json(ref);
        c["hits"] = est.hits;
        c["trials"] = est.trials;
        c["estimate"] = real_to_json(est.estimate);
        c["ci_lo"] = real_to_json(est.ci_lo);
        c["ci_hi"] = real_to_json(est.ci_hi);
        c["zero_hits"] = est.zero_hits;
        if (est.zero_hits) c["zero_hit_bound"] = real_to_json(est.zero_hit_bound);
        cells.push_back(std::move(c));
      }
    }
    out["method"] = "monte_carlo";
    out["seed"] = config.common.seed;
    out["cells"] = std::move(cells);
  }
  out["violations"] = result.violations;
  result.output = csv_out ? csv.str() : dump(out);
  return result;
}

HalfLine parse_half_line(const std::string& text) {
  const auto t = std::string(trim(text));
  HalfLine h;
  std::string value;
  if (t.rfind("a>=", 0) == 0) {
    value = t.substr(3);
  } else if (t.rfind("a=", 0) == 0) {
    value = t.substr(2);
  } else if (t.rfind("a>", 0) == 0) {
    value = t.substr(2);
    h.closed = false;
  } else {
    fail(ErrorCode::parse_error, "set must look like a=0.75, a>=0.75 or a>0.75");
  }
  h.a = parse_real(value);
  if (std::isnan(h.a)) fail(ErrorCode::parse_error, "set threshold is NaN");
  return h;
}

RunResult run_asym(const AsymConfig& config) {
  if (config.models.empty()) fail(ErrorCode::invalid_argument, "no model given");
  if (config.schedule.empty()) fail(ErrorCode::invalid_argument, "schedule is empty");
  std::vector<SampleModel> models;
  for (const auto& m : config.models) models.push_back(SampleModel::parse(m));
  const auto query = parse_half_line(config.set);
  std::optional<CapacitySequence> seq;
  if (config.trials > 0) {
    if (models.size() != 1) {
      fail(ErrorCode::invalid_argument, "the Monte Carlo sequence takes exactly one model");
    }
    seq = CapacitySequence::monte_carlo(models[0], config.trials, config.common.seed);
  } else if (models.size() == 1) {
    seq = CapacitySequence::exact_model(models[0]);
  } else {
    seq = CapacitySequence::max_of_measures(models);
  }
  const auto est = log_rate_estimate(*seq, query, config.schedule, config.common.threads);
  RunResult result;
  if (config.common.format == OutputFormat::csv) {
    CsvWriter csv({"n", "log_mu", "rate_trace"});
    for (std::size_t k = 0; k < est.n.size(); ++k) {
      csv.cell(est.n[k]).cell(est.log_mu[k]).cell(est.trace[k]);
      csv.end_row();
    }
    result.output = csv.str();
  } else {
    Json out;
    out["sequence"] = seq->name();
    out["set"] = (query.closed ? "[" : "(") + format_shortest(query.a) + ", inf)";
    if (config.trials > 0) {
      out["seed"] = config.common.seed;
      out["trials"] = config.trials;
    }
    out["estimate"] = real_to_json(est.value);
    out["n_lo"] = est.n_lo;
    out["n_hi"] = est.n_hi;
    out["slope"] = real_to_json(est.slope);
    out["intercept"] = real_to_json(est.intercept);
    out["tail_monotone"] = est.tail_monotone;
    out["has_zero"] = est.has_zero;
    out["n"] = est.n;
    out["log_mu"] = reals_json(est.log_mu);
    out["rate_trace"] = reals_json(est.trace);
    out["violations"] = 0;
    result.output = dump(out);
  }
  return result;
}

RunResult run_conjugate(const ConjugateConfig& config) {
  const auto rows = parse_xy_csv(config.input_csv);
  if (rows.empty()) fail(ErrorCode::invalid_argument, "rate grid is empty");
  std::vector<double> xs;
  std::vector<double> is;
  for (const auto& [x, i] : rows) {
    xs.push_back(x);
    is.push_back(i);
  }
  const Grid1D grid(xs, is);
  const auto mu = dual_grid(config.mu_max, config.mu_points);
  const auto star = fenchel_conjugate_nonneg(grid, mu, config.common.threads);
  const auto bi = biconjugate(grid, mu, config.common.threads);
  const double tol = config.common.tol.value_or(1e-9);

  RunResult result;
  std::optional<std::size_t> witness;
  for (std::size_t x = 0; x < grid.size(); ++x) {
    if (bi.values[x] > ext_add(grid.values[x], tol) && grid.values[x] != kPosInf) {
      ++result.violations;
      if (!witness) witness = x;
    }
  }
  auto argmax_x = [&](std::size_t i) {
    return star.argmax[i] == kNoIndex ? std::string("none") : format_real(grid.knots[star.argmax[i]]);
  };
  if (config.common.format == OutputFormat::csv) {
    CsvWriter csv({"mu", "I_star", "argmax_x"});
    for (std::size_t i = 0; i < mu.size(); ++i) {
      csv.cell(mu[i]).cell(star.values[i]).cell(argmax_x(i));
      csv.end_row();
    }
    result.output = csv.str();
  } else {
    Json out;
    out["mu"] = reals_json(star.mu);
    out["I_star"] = reals_json(star.values);
    Json args = Json::array();
    for (std::size_t i = 0; i < mu.size(); ++i) {
      args.push_back(star.argmax[i] == kNoIndex ? Json(nullptr) : Json(grid.knots[star.argmax[i]]));
    }
    out["argmax_x"] = std::move(args);
    out["boundary_fraction"] = star.boundary_fraction;
    out["x"] = reals_json(grid.knots);
    out["biconjugate"] = reals_json(bi.values);
    out["biconjugate_below_rate"] = result.violations == 0;
    out["witness_x"] = witness ? Json(grid.knots[*witness]) : Json(nullptr);
    out["violations"] = result.violations;
    result.output = dump(out);
  }
  return result;
}

RunResult run_check(const CheckConfig& config) {
  const auto doc = parse_json(config.concentration_json);
  const auto j = concentration_from_json(doc);
  const auto& fam = j.family();
  const double tol = config.common.tol.value_or(kDefaultFiniteTol);
  const auto imin = minimal_rate(j);
  std::vector<double> rate = imin;
  if (doc.contains("rate")) {
    const auto& r = doc["rate"];
    if (!r.is_array() || r.size() != j.space().size()) {
      fail(ErrorCode::size_mismatch, "rate must list one value per element");
    }
    rate.clear();
    for (const auto& v : r) rate.push_back(real_from_json(v));
  }
  const auto wm = is_weakly_maxitive(j);
  const auto mldp = check_mldp(j, rate, tol);

  std::vector<std::vector<double>> fns;
  for (std::size_t i = 0; i < fam.size(); ++i) fns.push_back(log_indicator(fam[i]));
  const std::size_t indicators = fns.size();
  Rng rng(derive_seed(config.common.seed, 0));
  for (std::size_t i = 0; i < config.samples; ++i) fns.push_back(random_increasing_fn(rng, fam));
  const auto mlp = check_mlp(j, rate, fns, tol);

  RunResult result;
  Json mismatch = Json::array();
  if (mldp.lower_ok != mlp.lower_ok) mismatch.push_back("lower");
  if (mldp.upper_ok != mlp.upper_ok) mismatch.push_back("upper");
  result.violations = mismatch.size();

  auto fn_label = [&](std::optional<std::size_t> k) -> Json {
    if (!k) return nullptr;
    if (*k < indicators) return "indicator " + fam[*k].to_string();
    return "sample " + std::to_string(*k - indicators);
  };
  auto set_label = [&](std::optional<std::size_t> k) -> Json {
    if (!k) return nullptr;
    return fam[*k].to_string();
  };

  if (config.common.format == OutputFormat::csv) {
    CsvWriter csv({"key", "value"});
    csv.cell(std::string("weakly_maxitive")).cell(std::string(wm.verdict ? "true" : "false"));
    csv.end_row();
    for (std::size_t x = 0; x < imin.size(); ++x) {
      csv.cell("I_min[" + std::to_string(x) + "]").cell(imin[x]);
      csv.end_row();
    }
    csv.cell(std::string("mldp_lower_gap")).cell(mldp.worst_gap_lower);
    csv.end_row();
    csv.cell(std::string("mldp_upper_gap")).cell(mldp.worst_gap_upper);
    csv.end_row();
    csv.cell(std::string("mlp_lower_gap")).cell(mlp.worst_gap_lower);
    csv.end_row();
    csv.cell(std::string("mlp_upper_gap")).cell(mlp.worst_gap_upper);
    csv.end_row();
    csv.cell(std::string("violations")).cell(result.violations);
    csv.end_row();
    result.output = csv.str();
    return result;
  }

  Json out;
  out["weakly_maxitive"] = wm.verdict;
  out["completely_maxitive"] = is_completely_maxitive(j);
  out["I_min"] = reals_json(imin);
  out["rate"] = reals_json(rate);
  Json m;
  m["lower_ok"] = mldp.lower_ok;
  m["upper_ok"] = mldp.upper_ok;
  m["worst_gap_lower"] = real_to_json(mldp.worst_gap_lower);
  m["worst_gap_upper"] = real_to_json(mldp.worst_gap_upper);
  out["mldp"] = std::move(m);
  Json s;
  s["functions"] = fns.size();
  s["indicators"] = indicators;
  s["lower_ok"] = mlp.lower_ok;
  s["upper_ok"] = mlp.upper_ok;
  s["worst_gap_lower"] = real_to_json(mlp.worst_gap_lower);
  s["worst_gap_upper"] = real_to_json(mlp.worst_gap_upper);
  out["mlp_sampled"] = std::move(s);
  Json w;
  w["weak_maxitivity"] = wm.witness ? witness_json(*wm.witness) : Json(nullptr);
  w["mldp_lower"] = set_label(mldp.lower_witness);
  w["mldp_upper"] = set_label(mldp.upper_witness);
  w["mlp_lower"] = fn_label(mlp.lower_witness);
  w["mlp_upper"] = fn_label(mlp.upper_witness);
  out["witnesses"] = std::move(w);
  out["equivalence_mismatch"] = std::move(mismatch);
  out["violations"] = result.violations;
  result.output = dump(out);
  return result;
}

}  // namespace maxitive
