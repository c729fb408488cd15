#include "ulam/stabilizer.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "kahan.hpp"

namespace ulam {

std::string_view to_string(TailStrategy s) noexcept {
  switch (s) {
    case TailStrategy::closed_form: return "closed_form";
    case TailStrategy::zero_tail: return "zero_tail";
    case TailStrategy::geometric_ratio: return "geometric_ratio";
    case TailStrategy::none: break;
  }
  return "none";
}

std::string_view to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::diverged: return "diverged";
    case SolveStatus::budget_violated: return "budget_violated";
    case SolveStatus::max_iterations: return "max_iterations";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Forward-orbit scan that looks for the smallest depth n whose certified
// remainder bound is <= tol. Used by tail_sum directly and by stabilize with a
// per-point hook for caching f values and spot-checking the defect.
class TailScan {
 public:
  TailScan(const EquationInstance& instance, const PerturbationBudget& budget, double x,
           double tol, const EngineConfig& config)
      : instance_(&instance), budget_(&budget), tol_(tol), config_(config) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
      throw std::invalid_argument("tol must be positive and finite");
    }
    if (!budget.eps) throw std::invalid_argument("budget.eps is required");
    if (!std::isfinite(x) || !instance.in_domain(x)) throw DomainViolation(x, 0);
    push_point(x);
  }

  // Called once per appended orbit point, in order; returning false aborts the
  // scan with budget_violated.
  std::function<bool(long long k, double xk)> point_hook;

  SolveStatus run() {
    if (aborted_) return SolveStatus::budget_violated;
    if (diverged_) return SolveStatus::diverged;
    const long long lookahead =
        std::max<long long>(config_.ratio_window, std::max(config_.zero_run - 1, 0));
    while (true) {
      if (cursor_ < size() && certify_closed_form(cursor_)) return SolveStatus::converged;
      while (size() <= cursor_ + lookahead) {
        if (!extend()) return SolveStatus::max_iterations;
        if (aborted_) return SolveStatus::budget_violated;
        if (diverged_) return SolveStatus::diverged;
        if (cursor_ < size() && certify_closed_form(cursor_)) return SolveStatus::converged;
      }
      if (certify_zero_tail(cursor_) || certify_geometric(cursor_)) {
        return SolveStatus::converged;
      }
      ++cursor_;
    }
  }

  // Moves past the current certified depth; the next run() resumes scanning.
  void skip_candidate() { ++cursor_; }

  // Extends the walked orbit through index k (hook fires for new points).
  bool ensure(long long k) {
    while (size() <= k) {
      if (!extend()) return false;
      if (aborted_) return false;
    }
    return true;
  }

  long long depth() const { return cursor_; }
  long long points_walked() const { return size(); }
  double point_at(long long k) const { return points_[static_cast<std::size_t>(k)]; }
  bool aborted() const { return aborted_; }

  TailCertificate make_certificate() const {
    TailCertificate cert;
    cert.depth = cursor_;
    cert.strategy = strategy_;
    cert.tail_bound = bound_;
    cert.ratio_evidence = evidence_;
    detail::KahanSum partial;
    for (long long k = 0; k < cursor_; ++k) partial.add(eps_[static_cast<std::size_t>(k)]);
    cert.partial_sum = partial.value();
    return cert;
  }

  TailCertificate diagnostic_certificate() const {
    TailCertificate cert;
    cert.depth = size();
    cert.strategy = TailStrategy::none;
    cert.tail_bound = kInf;
    detail::KahanSum partial;
    for (double e : eps_) partial.add(e);
    cert.partial_sum = partial.value();
    return cert;
  }

 private:
  long long size() const { return static_cast<long long>(eps_.size()); }

  void push_point(double x) {
    points_.push_back(x);
    const double e = budget_->eps(x);
    if (std::isnan(e) || e < 0.0) {
      throw std::invalid_argument("budget values must be nonnegative");
    }
    if (std::isinf(e)) diverged_ = true;
    eps_.push_back(e);
    const auto k = static_cast<long long>(eps_.size()) - 1;
    if (k >= 1) {
      const double prev = eps_[static_cast<std::size_t>(k - 1)];
      if (e > 0.0 && e >= prev) {
        if (++nondecreasing_ >= config_.divergence_window) diverged_ = true;
      } else {
        nondecreasing_ = 0;
      }
    }
    if (point_hook && !point_hook(k, x)) aborted_ = true;
  }

  bool extend() {
    if (size() > config_.max_iterations) return false;
    const double next = instance_->phi(points_.back());
    if (!std::isfinite(next) || !instance_->in_domain(next)) {
      throw DomainViolation(next, size());
    }
    push_point(next);
    return true;
  }

  bool certify_closed_form(long long n) {
    if (!budget_->tail_majorant) return false;
    const double m = budget_->tail_majorant(points_[static_cast<std::size_t>(n)]);
    if (std::isnan(m) || m < 0.0) {
      throw std::invalid_argument("tail majorant values must be nonnegative");
    }
    if (m > tol_) return false;
    strategy_ = TailStrategy::closed_form;
    bound_ = m;
    evidence_.clear();
    return true;
  }

  bool certify_zero_tail(long long n) {
    for (long long k = n; k < n + config_.zero_run; ++k) {
      if (eps_[static_cast<std::size_t>(k)] != 0.0) return false;
    }
    strategy_ = TailStrategy::zero_tail;
    bound_ = 0.0;
    evidence_.clear();
    return true;
  }

  bool certify_geometric(long long n) {
    const double rho = config_.ratio_bound;
    for (long long j = n; j < n + config_.ratio_window; ++j) {
      const double cur = eps_[static_cast<std::size_t>(j)];
      const double nxt = eps_[static_cast<std::size_t>(j + 1)];
      if (!(nxt <= rho * cur)) return false;
    }
    const double head = eps_[static_cast<std::size_t>(n)];
    const double bound = head / (1.0 - rho);
    if (!(bound <= tol_)) return false;
    strategy_ = TailStrategy::geometric_ratio;
    bound_ = bound;
    evidence_.clear();
    evidence_.reserve(static_cast<std::size_t>(config_.ratio_window));
    for (long long j = n; j < n + config_.ratio_window; ++j) {
      const double cur = eps_[static_cast<std::size_t>(j)];
      const double nxt = eps_[static_cast<std::size_t>(j + 1)];
      evidence_.push_back(cur > 0.0 ? nxt / cur : 0.0);
    }
    return true;
  }

  const EquationInstance* instance_;
  const PerturbationBudget* budget_;
  double tol_;
  EngineConfig config_;

  std::vector<double> points_;
  std::vector<double> eps_;
  long long cursor_ = 0;
  int nondecreasing_ = 0;
  bool diverged_ = false;
  bool aborted_ = false;

  TailStrategy strategy_ = TailStrategy::none;
  double bound_ = kInf;
  std::vector<double> evidence_;
};

}  // namespace

TailOutcome tail_sum(const EquationInstance& instance, const PerturbationBudget& budget,
                     double x, double tol, const EngineConfig& config) {
  if (instance.group == nullptr || !instance.phi) {
    throw std::invalid_argument("equation instance needs a group and phi");
  }
  TailScan scan(instance, budget, x, tol, config);
  TailOutcome out;
  out.status = scan.run();
  out.scanned = scan.points_walked();
  out.certificate =
      out.status == SolveStatus::converged ? scan.make_certificate() : scan.diagnostic_certificate();
  return out;
}

Element pull_back(const EquationInstance& instance, const ApproximateSolution& f,
                  long long n, double x) {
  if (n < 0) throw std::invalid_argument("pull-back depth must be nonnegative");
  if (!f) throw std::invalid_argument("approximate solution is empty");
  Orbit orbit(instance, x);
  const Element product = orbit.cocycle(n);
  return instance.group->op(instance.group->inv(product), f(orbit.point(n)));
}

StabilizationResult stabilize(const EquationInstance& instance, const ApproximateSolution& f,
                              const PerturbationBudget& budget, double x, double tol,
                              const EngineConfig& config) {
  if (instance.group == nullptr || !instance.phi || !instance.g) {
    throw std::invalid_argument("equation instance needs a group, phi, and g");
  }
  if (!f) throw std::invalid_argument("approximate solution is empty");
  const Group& group = *instance.group;

  TailScan scan(instance, budget, x, tol, config);

  std::vector<double> pts;
  std::vector<Element> fvals;
  std::vector<Element> gvals;
  long long violation = -1;
  scan.point_hook = [&](long long k, double xk) -> bool {
    pts.push_back(xk);
    fvals.push_back(f(xk));
    if (k >= 1) {
      const double xprev = pts[static_cast<std::size_t>(k - 1)];
      gvals.push_back(instance.g(xprev));
      const double dk = group.dist(
          fvals[static_cast<std::size_t>(k)],
          group.op(gvals[static_cast<std::size_t>(k - 1)], fvals[static_cast<std::size_t>(k - 1)]));
      const double ek = budget.eps(xprev);
      if (dk > ek + config.budget_slack) {
        violation = k - 1;
        return false;
      }
    }
    return true;
  };
  // The hook missed the origin (installed after construction walked it).
  pts.push_back(scan.point_at(0));
  fvals.push_back(f(scan.point_at(0)));

  StabilizationResult result;
  SolveStatus status = scan.run();
  while (status == SolveStatus::converged) {
    const long long n = scan.depth();
    if (!scan.ensure(n + 1)) {
      status = scan.aborted() ? SolveStatus::budget_violated : SolveStatus::max_iterations;
      break;
    }
    Element product = group.identity();
    for (long long j = 0; j < n; ++j) product = group.op(gvals[static_cast<std::size_t>(j)], product);
    Element value = group.op(group.inv(product), fvals[static_cast<std::size_t>(n)]);
    Element next_product = group.op(gvals[static_cast<std::size_t>(n)], product);
    Element next = group.op(group.inv(next_product), fvals[static_cast<std::size_t>(n + 1)]);
    const double step = group.dist(next, value);
    if (step <= tol) {
      result.value = std::move(value);
      result.iterations = n;
      result.last_step = step;
      result.tail = scan.make_certificate();
      result.certified_bound = result.tail.total();
      result.status = SolveStatus::converged;
      return result;
    }
    // Float-degenerate certification; move to the next candidate depth.
    scan.skip_candidate();
    status = scan.run();
  }

  result.status = violation >= 0 ? SolveStatus::budget_violated : status;
  result.iterations = scan.points_walked();
  result.tail = scan.diagnostic_certificate();
  result.certified_bound = kInf;
  result.last_step = kInf;
  return result;
}

ResidualReport verify_solution(const EquationInstance& instance, const ApproximateSolution& f0,
                               std::span<const double> points, double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::invalid_argument("tol must be positive and finite");
  }
  ResidualReport report;
  report.entries.reserve(points.size());
  for (double x : points) {
    const double r = defect(instance, f0, x);
    const bool pass = r <= tol;
    report.entries.push_back({x, r, pass});
    report.pass = report.pass && pass;
    report.max_residual = std::max(report.max_residual, r);
  }
  return report;
}

UniquenessGap uniqueness_gap(const EquationInstance& instance, const ApproximateSolution& f1,
                             const ApproximateSolution& f2, const PerturbationBudget& budget,
                             double x, long long n, double tol, const EngineConfig& config) {
  if (!f1 || !f2) throw std::invalid_argument("both candidate solutions are required");
  if (n < 0) throw std::invalid_argument("orbit depth must be nonnegative");
  UniquenessGap out;
  out.gap = instance.group->dist(f1(x), f2(x));
  const double xn = iterate(instance, n, x);
  const TailOutcome tail = tail_sum(instance, budget, xn, tol, config);
  out.tail_status = tail.status;
  out.bound = tail.status == SolveStatus::converged ? 2.0 * tail.certificate.total() : kInf;
  return out;
}

}  // namespace ulam
