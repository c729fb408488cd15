#include "ulam/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace ulam {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string word_repr(const Element& e) {
  const std::string& w = e.word();
  return w.empty() ? "e" : w;  // 'e' marks the identity word
}

std::string value_repr(const Job& job, const Element& e) {
  return job.word_carrier ? word_repr(e) : fmt17(e.real());
}

// Carrier-space perturbation for the real-carried groups.
std::function<double(double)> carrier_perturbation(const PerturbationForm& p) {
  switch (p.kind) {
    case PerturbationForm::Kind::none:
      return [](double) { return 0.0; };
    case PerturbationForm::Kind::exp_decay: {
      const double a = p.amplitude, r = p.rate;
      return [a, r](double x) { return a * std::pow(r, -x); };
    }
    case PerturbationForm::Kind::poly_exp: {
      const double a = p.amplitude, r = p.rate;
      return [a, r](double x) { return a * x * std::pow(r, -x); };
    }
    case PerturbationForm::Kind::linear: {
      const double a = p.amplitude;
      return [a](double x) { return a * x; };
    }
    case PerturbationForm::Kind::constant: {
      const double a = p.amplitude;
      return [a](double x) { (void)x; return a; };
    }
    case PerturbationForm::Kind::ladder:
      break;
  }
  throw ConfigError("perturbation form has no carrier representation", 0, true);
}

std::function<double(double)> budget_function(const BudgetForm& b) {
  switch (b.kind) {
    case BudgetForm::Kind::zero:
      return [](double) { return 0.0; };
    case BudgetForm::Kind::constant: {
      const double a = b.amplitude;
      return [a](double) { return a; };
    }
    case BudgetForm::Kind::exp_decay: {
      const double a = b.amplitude, r = b.rate;
      return [a, r](double x) { return a * std::pow(r, -x); };
    }
    case BudgetForm::Kind::poly_exp: {
      const double a = b.amplitude, r = b.rate;
      return [a, r](double x) { return a * x * std::pow(r, -x); };
    }
    case BudgetForm::Kind::auto_defect:
      break;
  }
  throw ConfigError("budget form is resolved elsewhere", 0, true);
}

// Integer power w^m with reduction, m possibly negative.
Element word_power(const Group& group, const Element& w, long long m) {
  Element base = m >= 0 ? w : group.inv(w);
  long long count = m >= 0 ? m : -m;
  Element acc = group.identity();
  for (long long i = 0; i < count; ++i) acc = group.op(base, acc);
  return acc;
}

Job build_named_or_custom_real(const RunConfig& cfg) {
  Job job;
  NamedProblem problem;
  if (cfg.equation == "digamma") {
    problem = digamma_problem();
  } else if (cfg.equation == "gamma") {
    problem = gamma_problem();
  } else if (cfg.equation == "abel") {
    problem = abel_problem(cfg.c, cfg.phi);
  } else if (cfg.equation == "schroeder") {
    problem = schroeder_problem(cfg.c, cfg.phi);
  } else {  // custom on a real-carried group
    const Group& group =
        cfg.group == "additive-reals" ? additive_reals() : mult_positive_reals();
    problem.instance.group = &group;
    problem.instance.phi = phi_function(cfg.phi);
    problem.instance.domain_guard = [](double x) { return x > 0.0; };
    problem.instance.name = "custom(" + cfg.group + ")";
    switch (cfg.g.kind) {
      case GForm::Kind::constant: {
        const double v = cfg.g.value;
        problem.instance.g = [&group, v](double) { return group.from_carrier(v); };
        break;
      }
      case GForm::Kind::reciprocal:
        problem.instance.g = [&group](double x) { return group.from_carrier(1.0 / x); };
        break;
      case GForm::Kind::coordinate:
        problem.instance.g = [&group](double x) { return group.from_carrier(x); };
        break;
      default:
        throw ConfigError("custom equation needs a resolvable coefficient form", 0, true);
    }
    const Group* gp = &group;
    problem.reference = [gp](double) { return gp->from_carrier(0.0); };
    problem.equation = "custom";
    problem.group = cfg.group;
  }

  job.instance = problem.instance;
  job.equation = problem.equation;
  job.group = problem.group;
  job.word_carrier = false;

  const Group* group = job.instance.group;
  ApproximateSolution reference = problem.reference;
  auto perturb = carrier_perturbation(cfg.perturbation);
  job.f = [group, reference, perturb](double x) {
    return group->from_carrier(reference(x).real() + perturb(x));
  };
  return job;
}

Job build_free_group(const RunConfig& cfg) {
  Job job;
  const Group& group = free_group_2();
  job.word_carrier = true;
  job.equation = "custom";
  job.group = "free-group-2";
  job.instance.group = &group;
  job.instance.phi = phi_function(cfg.phi);
  job.instance.name = "custom(free-group-2)";
  const Element gw = group.from_word(cfg.g.word);
  job.instance.g = [&group, gw](double) { return gw; };

  // Exact solution ladder: F(x) = g^floor(x); optional decaying word ladder on
  // the right that vanishes once floor(x) reaches the configured depth.
  const Element base = gw;
  if (cfg.perturbation.kind == PerturbationForm::Kind::ladder) {
    const Element pw = group.from_word(cfg.perturbation.word);
    const long long depth = cfg.perturbation.depth;
    job.f = [&group, base, pw, depth](double x) {
      const long long fl = static_cast<long long>(std::floor(x));
      const Element exact = word_power(group, base, fl);
      const long long m = std::max<long long>(0, depth - fl);
      return group.op(exact, word_power(group, pw, m));
    };
  } else {
    job.f = [&group, base](double x) {
      return word_power(group, base, static_cast<long long>(std::floor(x)));
    };
  }
  return job;
}

}  // namespace

Job build_job(const RunConfig& cfg) {
  Job job = cfg.group == "free-group-2" ? build_free_group(cfg)
                                        : build_named_or_custom_real(cfg);
  job.engine.max_iterations = cfg.max_iterations;

  if (cfg.budget.kind == BudgetForm::Kind::auto_defect) {
    const EquationInstance instance = job.instance;
    const ApproximateSolution f = job.f;
    job.budget.eps = [instance, f](double x) { return defect(instance, f, x); };
  } else {
    job.budget.eps = budget_function(cfg.budget);
  }

  for (double x : cfg.points) {
    if (!std::isfinite(x) || !job.instance.in_domain(x)) {
      throw ConfigError("point " + fmt17(x) + " is outside the domain of equation '" +
                            job.equation + "'",
                        0, true);
    }
  }
  return job;
}

CertificateRow run_point(const Job& job, double x, double tol, RunMode mode) {
  const Group& group = *job.instance.group;
  CertificateRow row;
  row.x = x;
  const Element fx = job.f(x);
  row.f_repr = value_repr(job, fx);

  if (mode == RunMode::verify) {
    const double residual = defect(job.instance, job.f, x);
    row.f0_repr = row.f_repr;
    row.dist_repr = fmt17(0.0);
    row.phi_hat_repr = fmt17(0.0);
    row.strategy = "none";
    row.iterations = 0;
    row.last_step_repr = fmt17(0.0);
    row.residual_repr = fmt17(residual);
    row.ok = residual <= tol;
    row.status = row.ok ? "converged" : "verify_failed";
    return row;
  }

  const StabilizationResult res = stabilize(job.instance, job.f, job.budget, x, tol, job.engine);
  row.iterations = res.iterations;
  if (res.status != SolveStatus::converged) {
    row.strategy = "none";
    row.status = std::string(to_string(res.status));
    row.ok = false;
    return row;
  }

  const Element& value = *res.value;
  const double dist_f_f0 = group.dist(fx, value);
  row.f0_repr = value_repr(job, value);
  row.dist_repr = fmt17(dist_f_f0);
  row.phi_hat_repr = fmt17(res.certified_bound);
  row.strategy = std::string(to_string(res.tail.strategy));
  row.last_step_repr = fmt17(res.last_step);

  // Independent residual re-check of the reconstructed value: reconstruct at
  // phi(x) as well and evaluate the equation across that edge.
  const double x_next = iterate(job.instance, 1, x);
  const StabilizationResult next =
      stabilize(job.instance, job.f, job.budget, x_next, tol, job.engine);
  double residual = std::numeric_limits<double>::infinity();
  if (next.status == SolveStatus::converged) {
    residual = group.dist(*next.value, group.op(job.instance.g(x), value));
  }
  row.residual_repr = fmt17(residual);

  const bool bound_ok = dist_f_f0 <= res.certified_bound + tol;
  const bool residual_ok = residual <= 2.0 * tol;
  if (bound_ok && residual_ok) {
    row.status = "converged";
    row.ok = true;
  } else {
    row.status = "check_failed";
    row.ok = false;
  }
  return row;
}

RunOutput run(const RunConfig& cfg) {
  const Job job = build_job(cfg);
  const RunMode mode = cfg.mode;

  std::vector<CertificateRow> rows(cfg.points.size());
  if (cfg.threads > 1 && cfg.points.size() > 1) {
    std::vector<std::future<CertificateRow>> futures;
    futures.reserve(cfg.points.size());
    for (double x : cfg.points) {
      futures.push_back(std::async(std::launch::async, [&job, x, &cfg, mode] {
        return run_point(job, x, cfg.tol, mode);
      }));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) rows[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < cfg.points.size(); ++i) {
      rows[i] = run_point(job, cfg.points[i], cfg.tol, mode);
    }
  }

  RunOutput out;
  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  std::size_t good = 0;
  std::map<std::string, int> by_status;
  for (const CertificateRow& row : rows) {
    csv << fmt17(row.x) << ',' << row.f_repr << ',' << row.f0_repr << ',' << row.dist_repr
        << ',' << row.phi_hat_repr << ',' << row.strategy << ',' << row.iterations << ','
        << row.last_step_repr << ',' << row.residual_repr << ',' << row.status << '\n';
    good += row.ok ? 1 : 0;
    ++by_status[row.status];
  }
  out.csv = csv.str();
  out.exit_code = good == rows.size() ? 0 : 2;

  std::ostringstream summary;
  summary << "equation=" << job.equation << " group=" << job.group
          << " mode=" << to_string(mode) << " points=" << rows.size() << " tol=" << cfg.tol
          << " threads=" << cfg.threads << '\n';
  summary << "rows:";
  for (const auto& [status, count] : by_status) summary << ' ' << status << '=' << count;
  summary << '\n' << "exit=" << out.exit_code << '\n';
  out.summary = summary.str();
  return out;
}

}  // namespace ulam
