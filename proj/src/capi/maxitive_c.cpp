#include "maxitive/maxitive.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "concentration.hpp"
#include "convex.hpp"
#include "cramer.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "io.hpp"
#include "maxitivity.hpp"
#include "text.hpp"

struct mx_poset {
  maxitive::FinitePreorder space;
};

struct mx_concentration {
  maxitive::Concentration j;
};

struct mx_model {
  maxitive::SampleModel model;
};

namespace {

thread_local std::string last_error;

template <class Fn>
mx_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return MX_OK;
  } catch (const maxitive::Error& e) {
    last_error = e.what();
    return static_cast<mx_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MX_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MX_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return MX_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) maxitive::fail(maxitive::ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

template <class T>
T* copy_array(const std::vector<T>& v) {
  auto* out = static_cast<T*>(std::malloc(std::max<std::size_t>(1, v.size()) * sizeof(T)));
  if (!out) throw std::bad_alloc();
  if (!v.empty()) std::memcpy(out, v.data(), v.size() * sizeof(T));
  return out;
}

maxitive::CommonConfig common_from(const mx_common_config& c) {
  maxitive::CommonConfig out;
  out.seed = c.seed;
  out.threads = c.threads == 0 ? 1 : c.threads;
  if (c.has_tol) out.tol = c.tol;
  if (c.format != MX_FORMAT_JSON && c.format != MX_FORMAT_CSV) {
    maxitive::fail(maxitive::ErrorCode::invalid_argument, "unknown output format");
  }
  out.format = c.format == MX_FORMAT_CSV ? maxitive::OutputFormat::csv : maxitive::OutputFormat::json;
  return out;
}

void common_init(mx_common_config* c) {
  c->seed = 1;
  c->threads = 1;
  c->has_tol = 0;
  c->tol = 0.0;
  c->format = MX_FORMAT_JSON;
}

mx_status finish_run(const maxitive::RunResult& r, char** output, size_t* violations) {
  *output = copy_string(r.output);
  if (violations) *violations = r.violations;
  return MX_OK;
}

}  // namespace

extern "C" {

const char* mx_version(void) { return "1.0.0"; }

const char* mx_status_name(mx_status status) {
  switch (status) {
    case MX_OK: return "ok";
    case MX_INVALID_ARGUMENT: return "invalid_argument";
    case MX_SIZE_MISMATCH: return "size_mismatch";
    case MX_NOT_UPSET: return "not_upset";
    case MX_NOT_INCREASING: return "not_increasing";
    case MX_CAP_EXCEEDED: return "cap_exceeded";
    case MX_PARSE_ERROR: return "parse_error";
    case MX_DOMAIN_ERROR: return "domain_error";
    case MX_MISSING_CAPABILITY: return "missing_capability";
    case MX_PROPERTY_VIOLATION: return "property_violation";
    case MX_IO_ERROR: return "io_error";
    case MX_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* mx_last_error(void) { return last_error.c_str(); }

void mx_string_free(char* s) { std::free(s); }
void mx_doubles_free(double* v) { std::free(v); }
void mx_counts_free(size_t* v) { std::free(v); }

mx_status mx_parse_real_range(const char* text, double** out, size_t* count) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    need(count, "count");
    const auto v = maxitive::parse_real_range(text);
    *out = copy_array(v);
    *count = v.size();
  });
}

mx_status mx_parse_count_range(const char* text, size_t** out, size_t* count) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    need(count, "count");
    const auto v = maxitive::parse_count_range(text);
    *out = copy_array(v);
    *count = v.size();
  });
}

mx_status mx_poset_parse(const char* text, mx_poset** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new mx_poset{maxitive::FinitePreorder::parse(text)};
  });
}

mx_status mx_poset_from_edges(size_t size, const size_t* lo, const size_t* hi, size_t edges,
                              mx_poset** out) {
  return guarded([&] {
    need(out, "out");
    if (edges > 0) {
      need(lo, "lo");
      need(hi, "hi");
    }
    std::vector<std::pair<std::size_t, std::size_t>> list;
    for (size_t i = 0; i < edges; ++i) list.emplace_back(lo[i], hi[i]);
    *out = new mx_poset{maxitive::FinitePreorder::from_edges(size, list)};
  });
}

void mx_poset_free(mx_poset* p) { delete p; }

size_t mx_poset_size(const mx_poset* p) { return p ? p->space.size() : 0; }

int mx_poset_leq(const mx_poset* p, size_t x, size_t y) {
  if (!p || x >= p->space.size() || y >= p->space.size()) return 0;
  return p->space.leq(x, y) ? 1 : 0;
}

mx_status mx_poset_upset_count(const mx_poset* p, size_t* out) {
  return guarded([&] {
    need(p, "poset");
    need(out, "out");
    *out = maxitive::enumerate_up_sets(p->space).size();
  });
}

mx_status mx_concentration_from_json(const char* json, mx_concentration** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new mx_concentration{maxitive::concentration_from_json(maxitive::parse_json(json))};
  });
}

mx_status mx_concentration_from_rate(const mx_poset* p, const double* rate, size_t size,
                                     mx_concentration** out) {
  return guarded([&] {
    need(p, "poset");
    need(rate, "rate");
    need(out, "out");
    if (size != p->space.size()) {
      maxitive::fail(maxitive::ErrorCode::size_mismatch, "rate length differs from poset size");
    }
    const auto family = maxitive::make_family(p->space);
    *out = new mx_concentration{
        maxitive::Concentration::from_rate(family, std::span<const double>(rate, size))};
  });
}

mx_status mx_concentration_to_json(const mx_concentration* j, char** out) {
  return guarded([&] {
    need(j, "concentration");
    need(out, "out");
    *out = copy_string(maxitive::concentration_to_json(j->j).dump());
  });
}

void mx_concentration_free(mx_concentration* j) { delete j; }

size_t mx_concentration_upset_count(const mx_concentration* j) {
  return j ? j->j.family().size() : 0;
}

mx_status mx_concentration_value(const mx_concentration* j, const char* upset, double* out) {
  return guarded([&] {
    need(j, "concentration");
    need(upset, "upset");
    need(out, "out");
    const auto s = maxitive::Subset::parse(upset);
    if (s.size() != j->j.space().size()) {
      maxitive::fail(maxitive::ErrorCode::size_mismatch, "membership string length");
    }
    *out = j->j.at(s);
  });
}

mx_status mx_maxitive_integral(const mx_concentration* j, const double* f, size_t size,
                               double* out) {
  return guarded([&] {
    need(j, "concentration");
    need(f, "f");
    need(out, "out");
    if (size != j->j.space().size()) {
      maxitive::fail(maxitive::ErrorCode::size_mismatch, "f length differs from poset size");
    }
    *out = maxitive::maxitive_integral(j->j, std::span<const double>(f, size));
  });
}

mx_status mx_is_weakly_maxitive(const mx_concentration* j, int* out) {
  return guarded([&] {
    need(j, "concentration");
    need(out, "out");
    *out = maxitive::is_weakly_maxitive(j->j).verdict ? 1 : 0;
  });
}

mx_status mx_minimal_rate(const mx_concentration* j, double* out, size_t size) {
  return guarded([&] {
    need(j, "concentration");
    need(out, "out");
    if (size != j->j.space().size()) {
      maxitive::fail(maxitive::ErrorCode::size_mismatch, "output length differs from poset size");
    }
    const auto r = maxitive::minimal_rate(j->j);
    std::copy(r.begin(), r.end(), out);
  });
}

mx_status mx_model_parse(const char* spec, mx_model** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new mx_model{maxitive::SampleModel::parse(spec)};
  });
}

void mx_model_free(mx_model* m) { delete m; }

mx_status mx_model_mean(const mx_model* m, double* out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    *out = m->model.mean();
  });
}

mx_status mx_log_mgf(const mx_model* m, double mu, double* out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    *out = m->model.log_mgf(mu);
  });
}

mx_status mx_monotone_cramer_rate(const mx_model* m, double x, double* out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    *out = maxitive::monotone_cramer_rate(m->model, x);
  });
}

mx_status mx_exact_tail_log(const mx_model* m, double a, size_t n, int open, double* out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    *out = maxitive::exact_tail_log(m->model, a, n, open != 0);
  });
}

mx_status mx_fenchel_conjugate(const double* x, const double* rate, size_t size, const double* mu,
                               size_t mu_count, size_t threads, double* out) {
  return guarded([&] {
    need(x, "x");
    need(rate, "rate");
    need(mu, "mu");
    need(out, "out");
    const maxitive::Grid1D grid(std::vector<double>(x, x + size),
                                std::vector<double>(rate, rate + size));
    const auto r = maxitive::fenchel_conjugate_nonneg(
        grid, std::span<const double>(mu, mu_count), threads == 0 ? 1 : threads);
    std::copy(r.values.begin(), r.values.end(), out);
  });
}

void mx_finite_config_init(mx_finite_config* c) {
  if (!c) return;
  const maxitive::FiniteConfig d;
  common_init(&c->common);
  c->instances = d.instances;
  c->max_size = d.max_size;
  c->functions = d.functions;
  c->cover_search_max = d.cover_search_max;
  c->staircase_max = d.staircase_max;
  c->poset_text = nullptr;
  c->plant_v_example = 0;
}

void mx_cramer_config_init(mx_cramer_config* c) {
  if (!c) return;
  common_init(&c->common);
  c->model = "bernoulli:0.5";
  c->a_grid = nullptr;
  c->a_count = 0;
  c->n_max = 2000;
  c->ns = nullptr;
  c->n_count = 0;
  c->trials = 0;
}

void mx_asym_config_init(mx_asym_config* c) {
  if (!c) return;
  common_init(&c->common);
  c->models = nullptr;
  c->model_count = 0;
  c->set = "a=0.75";
  c->schedule = nullptr;
  c->schedule_count = 0;
  c->trials = 0;
}

void mx_conjugate_config_init(mx_conjugate_config* c) {
  if (!c) return;
  const maxitive::ConjugateConfig d;
  common_init(&c->common);
  c->input_csv = nullptr;
  c->mu_max = d.mu_max;
  c->mu_points = d.mu_points;
}

void mx_check_config_init(mx_check_config* c) {
  if (!c) return;
  const maxitive::CheckConfig d;
  common_init(&c->common);
  c->concentration_json = nullptr;
  c->samples = d.samples;
}

mx_status mx_run_finite(const mx_finite_config* c, char** output, size_t* violations) {
  return guarded([&] {
    need(c, "config");
    need(output, "output");
    maxitive::FiniteConfig cfg;
    cfg.common = common_from(c->common);
    cfg.instances = c->instances;
    cfg.max_size = c->max_size;
    cfg.functions = c->functions;
    cfg.cover_search_max = c->cover_search_max;
    cfg.staircase_max = c->staircase_max;
    if (c->poset_text) cfg.poset = maxitive::FinitePreorder::parse(c->poset_text);
    cfg.plant_v_example = c->plant_v_example != 0;
    finish_run(maxitive::run_finite_suite(cfg), output, violations);
  });
}

mx_status mx_run_cramer(const mx_cramer_config* c, char** output, size_t* violations) {
  return guarded([&] {
    need(c, "config");
    need(output, "output");
    need(c->model, "model");
    if (c->a_count > 0) need(c->a_grid, "a_grid");
    if (c->n_count > 0) need(c->ns, "ns");
    maxitive::CramerConfig cfg;
    cfg.common = common_from(c->common);
    cfg.model = c->model;
    cfg.a_grid.assign(c->a_grid, c->a_grid + c->a_count);
    cfg.n_max = c->n_max;
    if (c->ns) cfg.ns.assign(c->ns, c->ns + c->n_count);
    cfg.trials = c->trials;
    finish_run(maxitive::run_cramer(cfg), output, violations);
  });
}

mx_status mx_run_asym(const mx_asym_config* c, char** output, size_t* violations) {
  return guarded([&] {
    need(c, "config");
    need(output, "output");
    need(c->set, "set");
    if (c->schedule_count > 0) need(c->schedule, "schedule");
    maxitive::AsymConfig cfg;
    cfg.common = common_from(c->common);
    if (c->model_count > 0) {
      need(c->models, "models");
      cfg.models.clear();
      for (size_t i = 0; i < c->model_count; ++i) {
        need(c->models[i], "model");
        cfg.models.emplace_back(c->models[i]);
      }
    }
    cfg.set = c->set;
    cfg.schedule.assign(c->schedule, c->schedule + c->schedule_count);
    cfg.trials = c->trials;
    finish_run(maxitive::run_asym(cfg), output, violations);
  });
}

mx_status mx_run_conjugate(const mx_conjugate_config* c, char** output, size_t* violations) {
  return guarded([&] {
    need(c, "config");
    need(output, "output");
    need(c->input_csv, "input_csv");
    maxitive::ConjugateConfig cfg;
    cfg.common = common_from(c->common);
    cfg.input_csv = c->input_csv;
    cfg.mu_max = c->mu_max;
    cfg.mu_points = c->mu_points;
    finish_run(maxitive::run_conjugate(cfg), output, violations);
  });
}

mx_status mx_run_check(const mx_check_config* c, char** output, size_t* violations) {
  return guarded([&] {
    need(c, "config");
    need(output, "output");
    need(c->concentration_json, "concentration_json");
    maxitive::CheckConfig cfg;
    cfg.common = common_from(c->common);
    cfg.concentration_json = c->concentration_json;
    cfg.samples = c->samples;
    finish_run(maxitive::run_check(cfg), output, violations);
  });
}

}  // extern "C"
