#include "ulam.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "ulam/runner.hpp"
#include "ulam/special_functions.hpp"

struct ulam_config {
  ulam::RunConfig cfg;
};

namespace {

thread_local std::string t_last_error;

ulam_status fail(ulam_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

char* copy_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps C++ failures onto the C status codes.
template <typename Fn>
ulam_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ulam::ConfigError& e) {
    return fail(e.semantic() ? ULAM_ERR_SEMANTIC : ULAM_ERR_PARSE, e.what());
  } catch (const ulam::DomainViolation& e) {
    return fail(ULAM_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(ULAM_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ULAM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ULAM_ERR_INTERNAL, e.what());
  }
}

ulam_point_status map_status(ulam::SolveStatus s) {
  switch (s) {
    case ulam::SolveStatus::converged: return ULAM_POINT_CONVERGED;
    case ulam::SolveStatus::diverged: return ULAM_POINT_DIVERGED;
    case ulam::SolveStatus::budget_violated: return ULAM_POINT_BUDGET_VIOLATED;
    case ulam::SolveStatus::max_iterations: return ULAM_POINT_MAX_ITERATIONS;
  }
  return ULAM_POINT_DIVERGED;
}

ulam_tail_strategy map_strategy(ulam::TailStrategy s) {
  switch (s) {
    case ulam::TailStrategy::none: return ULAM_TAIL_NONE;
    case ulam::TailStrategy::closed_form: return ULAM_TAIL_CLOSED_FORM;
    case ulam::TailStrategy::zero_tail: return ULAM_TAIL_ZERO;
    case ulam::TailStrategy::geometric_ratio: return ULAM_TAIL_GEOMETRIC;
  }
  return ULAM_TAIL_NONE;
}

}  // namespace

extern "C" {

const char* ulam_version(void) { return ULAM_VERSION; }

const char* ulam_status_name(ulam_status status) {
  switch (status) {
    case ULAM_OK: return "ok";
    case ULAM_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case ULAM_ERR_PARSE: return "parse_error";
    case ULAM_ERR_SEMANTIC: return "semantic_error";
    case ULAM_ERR_DOMAIN: return "domain_error";
    case ULAM_ERR_IO: return "io_error";
    case ULAM_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* ulam_last_error(void) { return t_last_error.c_str(); }

ulam_status ulam_config_parse(const char* text, ulam_config** out) {
  if (text == nullptr || out == nullptr) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, "text and out must be non-null");
  }
  *out = nullptr;
  return guarded([&]() {
    auto* handle = new ulam_config{ulam::parse_config(text)};
    *out = handle;
    return ULAM_OK;
  });
}

ulam_status ulam_config_parse_file(const char* path, ulam_config** out) {
  if (path == nullptr || out == nullptr) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, "path and out must be non-null");
  }
  std::ifstream in(path);
  if (!in) return fail(ULAM_ERR_IO, std::string("cannot read '") + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ulam_config_parse(text.str().c_str(), out);
}

ulam_status ulam_config_demo(const char* equation_name, ulam_config** out) {
  if (equation_name == nullptr || out == nullptr) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, "equation_name and out must be non-null");
  }
  *out = nullptr;
  return guarded([&]() {
    auto* handle = new ulam_config{ulam::demo_config(equation_name)};
    *out = handle;
    return ULAM_OK;
  });
}

ulam_status ulam_config_set_tol(ulam_config* config, double tol) {
  if (config == nullptr) return fail(ULAM_ERR_INVALID_ARGUMENT, "config must be non-null");
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, "tol must be positive");
  }
  config->cfg.tol = tol;
  return ULAM_OK;
}

ulam_status ulam_config_set_max_iterations(ulam_config* config, long long max_iterations) {
  if (config == nullptr) return fail(ULAM_ERR_INVALID_ARGUMENT, "config must be non-null");
  if (max_iterations < 1) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, "max_iterations must be at least 1");
  }
  config->cfg.max_iterations = max_iterations;
  return ULAM_OK;
}

ulam_status ulam_config_set_points(ulam_config* config, const double* points, size_t count) {
  if (config == nullptr || points == nullptr || count == 0) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, "config and a non-empty point list are required");
  }
  for (size_t i = 0; i < count; ++i) {
    if (!std::isfinite(points[i])) {
      return fail(ULAM_ERR_INVALID_ARGUMENT, "points must be finite");
    }
  }
  config->cfg.points.assign(points, points + count);
  return ULAM_OK;
}

ulam_status ulam_config_set_threads(ulam_config* config, int threads) {
  if (config == nullptr) return fail(ULAM_ERR_INVALID_ARGUMENT, "config must be non-null");
  if (threads < 1 || threads > 64) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, "threads must be in [1, 64]");
  }
  config->cfg.threads = threads;
  return ULAM_OK;
}

ulam_status ulam_config_get_mode(const ulam_config* config, ulam_mode* mode,
                                 int* mode_explicit) {
  if (config == nullptr || mode == nullptr) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, "config and mode must be non-null");
  }
  *mode = static_cast<ulam_mode>(config->cfg.mode);
  if (mode_explicit != nullptr) *mode_explicit = config->cfg.mode_set ? 1 : 0;
  return ULAM_OK;
}

ulam_status ulam_config_set_mode(ulam_config* config, ulam_mode mode) {
  if (config == nullptr) return fail(ULAM_ERR_INVALID_ARGUMENT, "config must be non-null");
  if (mode != ULAM_MODE_STABILIZE && mode != ULAM_MODE_VERIFY && mode != ULAM_MODE_DEMO) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, "unknown mode");
  }
  config->cfg.mode = static_cast<ulam::RunMode>(mode);
  config->cfg.mode_set = true;
  return ULAM_OK;
}

void ulam_config_free(ulam_config* config) { delete config; }

ulam_status ulam_run(const ulam_config* config, char** csv_out, char** summary_out,
                     int* exit_code) {
  if (config == nullptr || csv_out == nullptr || summary_out == nullptr ||
      exit_code == nullptr) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, "all output parameters must be non-null");
  }
  *csv_out = nullptr;
  *summary_out = nullptr;
  return guarded([&]() {
    const ulam::RunOutput out = ulam::run(config->cfg);
    char* csv = copy_string(out.csv);
    char* summary = copy_string(out.summary);
    if (csv == nullptr || summary == nullptr) {
      delete[] csv;
      delete[] summary;
      return fail(ULAM_ERR_INTERNAL, "out of memory");
    }
    *csv_out = csv;
    *summary_out = summary;
    *exit_code = out.exit_code;
    return ULAM_OK;
  });
}

void ulam_string_free(char* s) { delete[] s; }

ulam_status ulam_stabilize_point(const ulam_config* config, double x,
                                 ulam_point_result* out) {
  if (config == nullptr || out == nullptr) {
    return fail(ULAM_ERR_INVALID_ARGUMENT, "config and out must be non-null");
  }
  return guarded([&]() {
    const ulam::Job job = ulam::build_job(config->cfg);
    if (job.word_carrier) {
      return fail(ULAM_ERR_INVALID_ARGUMENT,
                  "word-carried configurations have no scalar point result; use ulam_run");
    }
    if (!job.instance.in_domain(x)) {
      return fail(ULAM_ERR_DOMAIN, "point is outside the equation's domain");
    }
    const ulam::StabilizationResult res =
        ulam::stabilize(job.instance, job.f, job.budget, x, config->cfg.tol, job.engine);
    ulam_point_result r{};
    r.x = x;
    r.f = job.f(x).real();
    r.iterations = res.iterations;
    r.status = map_status(res.status);
    r.tail_strategy = map_strategy(res.tail.strategy);
    if (res.status == ulam::SolveStatus::converged) {
      r.f0 = res.value->real();
      r.distance = job.instance.group->dist(job.f(x), *res.value);
      r.certified_bound = res.certified_bound;
      r.last_step = res.last_step;
      r.residual = ulam::defect(
          job.instance,
          [&](double y) {
            const ulam::StabilizationResult at =
                ulam::stabilize(job.instance, job.f, job.budget, y, config->cfg.tol, job.engine);
            if (at.status != ulam::SolveStatus::converged) {
              throw std::runtime_error("reconstruction failed during residual check");
            }
            return *at.value;
          },
          x);
    } else {
      const double nan = std::nan("");
      r.f0 = nan;
      r.distance = nan;
      r.certified_bound = nan;
      r.last_step = nan;
      r.residual = nan;
    }
    *out = r;
    return ULAM_OK;
  });
}

double ulam_digamma(double x) {
  try {
    return ulam::digamma(x);
  } catch (const std::exception&) {
    return std::nan("");
  }
}

double ulam_log_gamma(double x) {
  try {
    return ulam::log_gamma(x);
  } catch (const std::exception&) {
    return std::nan("");
  }
}

}  // extern "C"
