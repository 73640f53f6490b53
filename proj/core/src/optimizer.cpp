#include "userdp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace userdp {

Point project_to_domain(const Point& theta, const BallDomain& domain) {
  if (theta.size() != domain.center.size()) {
    throw std::invalid_argument("project_to_domain: dimension mismatch");
  }
  double norm2 = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double diff = theta[j] - domain.center[j];
    norm2 += diff * diff;
  }
  if (norm2 <= domain.radius * domain.radius) return theta;
  const double scale = domain.radius / std::sqrt(norm2);
  Point out(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    out[j] = domain.center[j] + scale * (theta[j] - domain.center[j]);
  }
  return out;
}

void ConvexProblem::validate() const {
  if (dim == 0) throw std::invalid_argument("problem: dim must be positive");
  if (domain.center.size() != dim) {
    throw std::invalid_argument("problem: domain center must have dim entries");
  }
  if (!(domain.radius > 0.0)) {
    throw std::invalid_argument("problem: domain radius must be positive");
  }
  if (!(lipschitz_g > 0.0)) {
    throw std::invalid_argument("problem: lipschitz_g must be positive");
  }
  if (!loss || !grad) {
    throw std::invalid_argument("problem: loss and grad must be set");
  }
}

ConvexProblem make_quadratic_problem(std::size_t dim, double domain_radius,
                                     double curvature, double data_radius) {
  if (!(curvature > 0.0)) {
    throw std::invalid_argument("quadratic problem: curvature must be positive");
  }
  ConvexProblem problem;
  problem.dim = dim;
  problem.domain = {Point(dim, 0.0), domain_radius};
  problem.lipschitz_g = curvature * (domain_radius + data_radius);
  problem.smooth_h = curvature;
  problem.loss = [curvature](std::span<const double> theta,
                             std::span<const double> z) {
    double acc = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const double diff = theta[j] - z[j];
      acc += diff * diff;
    }
    return 0.5 * curvature * acc;
  };
  problem.grad = [curvature](std::span<const double> theta,
                             std::span<const double> z,
                             std::span<double> out) {
    for (std::size_t j = 0; j < theta.size(); ++j) {
      out[j] = curvature * (theta[j] - z[j]);
    }
  };
  return problem;
}

double empirical_risk(const ConvexProblem& problem, const UserDataset& data,
                      const Point& theta) {
  problem.validate();
  data.validate();
  double acc = 0.0;
  for (std::size_t u = 0; u < data.n; ++u) {
    for (std::size_t i = 0; i < data.m; ++i) {
      acc += problem.loss(theta, data.sample(u, i));
    }
  }
  return acc / static_cast<double>(data.n * data.m);
}

std::vector<Point> user_gradient_means(const ConvexProblem& problem,
                                       const UserDataset& data,
                                       const Point& theta) {
  problem.validate();
  data.validate();
  if (data.d != problem.dim) {
    throw std::invalid_argument("gradient means: data dimension mismatch");
  }
  std::vector<Point> means(data.n, Point(problem.dim, 0.0));
  Point g(problem.dim, 0.0);
  for (std::size_t u = 0; u < data.n; ++u) {
    Point& mu = means[u];
    for (std::size_t i = 0; i < data.m; ++i) {
      problem.grad(theta, data.sample(u, i), g);
      for (std::size_t j = 0; j < problem.dim; ++j) mu[j] += g[j];
    }
    const double inv = 1.0 / static_cast<double>(data.m);
    for (double& v : mu) v *= inv;
  }
  return means;
}

Point empirical_gradient(const ConvexProblem& problem, const UserDataset& data,
                         const Point& theta) {
  const std::vector<Point> means = user_gradient_means(problem, data, theta);
  Point out(problem.dim, 0.0);
  for (const Point& mu : means) {
    for (std::size_t j = 0; j < problem.dim; ++j) out[j] += mu[j];
  }
  const double inv = 1.0 / static_cast<double>(means.size());
  for (double& v : out) v *= inv;
  return out;
}

EstimateOutcome private_gradient_oracle(const ConvexProblem& problem,
                                        const UserDataset& data,
                                        const Point& theta,
                                        const PrivacyBudget& budget,
                                        double alpha,
                                        const OracleParams& oracle,
                                        RandomStream& rng,
                                        BlockwiseReport* report) {
  std::vector<Point> grads = user_gradient_means(problem, data, theta);
  BlockwiseParams block = oracle.block;
  block.eps = budget.eps;
  block.delta = budget.delta;
  block.alpha = alpha;
  block.r = oracle.mean_concentration * problem.lipschitz_g /
            std::sqrt(static_cast<double>(data.m));
  return dp_estimate_interpolated(grads, block, rng, report);
}

void SgdParams::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("sgd: eps must be positive");
  if (!(delta > 0.0) || delta >= 1.0) {
    throw std::invalid_argument("sgd: delta must be in (0, 1)");
  }
  constexpr double kThird = 1.0 / 3.0;
  if (!(alpha > 0.0) || alpha > kThird) {
    throw std::invalid_argument("sgd: alpha must be in (0, 1/3]");
  }
  if (iterations == 0) {
    throw std::invalid_argument("sgd: iterations must be positive");
  }
  if (!(abort_garbage_fraction > 0.0 && abort_garbage_fraction <= 1.0)) {
    throw std::invalid_argument("sgd: abort fraction must be in (0, 1]");
  }
  if (!(oracle.mean_concentration > 0.0)) {
    throw std::invalid_argument("sgd: mean_concentration must be positive");
  }
}

namespace {

using StepOracle = std::function<EstimateOutcome(const Point&, std::size_t)>;

SgdTrace run_loop(const ConvexProblem& problem, double eta, std::size_t total,
                  std::size_t abort_at, const StepOracle& oracle) {
  SgdTrace trace;
  trace.step = eta;
  trace.iterates.reserve(total + 1);
  trace.iterates.push_back(problem.domain.center);
  Point theta = problem.domain.center;
  Point next(problem.dim, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    const EstimateOutcome g = oracle(theta, t);
    ++trace.steps_run;
    if (g.is_accepted()) {
      for (std::size_t j = 0; j < problem.dim; ++j) {
        next[j] = theta[j] - eta * g.point[j];
      }
      theta = project_to_domain(next, problem.domain);
    } else {
      ++trace.garbage_steps;
    }
    trace.iterates.push_back(theta);
    if (trace.garbage_steps > abort_at) {
      trace.aborted = true;
      break;
    }
  }
  trace.average.assign(problem.dim, 0.0);
  for (const Point& it : trace.iterates) {
    for (std::size_t j = 0; j < problem.dim; ++j) trace.average[j] += it[j];
  }
  const double inv = 1.0 / static_cast<double>(trace.iterates.size());
  for (double& v : trace.average) v *= inv;
  return trace;
}

}  // namespace

SgdTrace private_sgd(const ConvexProblem& problem, const UserDataset& data,
                     const SgdParams& params, RandomStream& rng) {
  problem.validate();
  params.validate();
  data.validate();
  if (data.d != problem.dim) {
    throw std::invalid_argument("sgd: data dimension mismatch");
  }

  const std::size_t units = params.iterations + params.pilot_calls;
  SgdSchedule schedule = schedule_sgd(params.eps, params.delta, units);
  constexpr double kThird = 1.0 / 3.0;
  schedule.eps_step = std::min(schedule.eps_step, kThird);
  if (schedule.eps_step < schedule.delta_step) {
    throw std::invalid_argument("sgd: per-step budget below its delta");
  }
  const PrivacyBudget per_call{schedule.eps_step, schedule.delta_step};

  const std::uint64_t master = rng.next_seed();
  std::vector<PrivacyBudget> ledger;
  ledger.reserve(units);
  std::size_t call_index = 0;
  bool regime = true;
  bool regime_known = false;

  const auto call_oracle = [&](const Point& theta) {
    RandomStream call_rng(derive_seed(master, {call_index}));
    ++call_index;
    BlockwiseReport report;
    const EstimateOutcome out = private_gradient_oracle(
        problem, data, theta, per_call, params.alpha, params.oracle, call_rng,
        &report);
    ledger.push_back(per_call);
    if (!regime_known) {
      regime = report.accuracy_regime;
      regime_known = true;
    }
    return out;
  };

  double sum_sq = 0.0;
  std::size_t pilot_accepted = 0;
  for (std::size_t i = 0; i < params.pilot_calls; ++i) {
    const EstimateOutcome out = call_oracle(problem.domain.center);
    if (out.is_accepted()) {
      const double norm = l2_norm(out.point);
      sum_sq += norm * norm;
      ++pilot_accepted;
    }
  }
  double nu_hat =
      pilot_accepted
          ? std::sqrt(sum_sq / static_cast<double>(pilot_accepted))
          : problem.lipschitz_g;
  nu_hat = std::max(nu_hat, 1e-12);

  double eta = problem.domain.radius /
               (nu_hat * std::sqrt(static_cast<double>(params.iterations)));
  if (problem.smooth_h > 0.0) eta = std::min(eta, 1.0 / problem.smooth_h);

  const std::size_t abort_at = static_cast<std::size_t>(
      params.abort_garbage_fraction *
      static_cast<double>(params.iterations));
  SgdTrace trace =
      run_loop(problem, eta, params.iterations, abort_at,
               [&](const Point& theta, std::size_t) { return call_oracle(theta); });

  trace.nu_hat = nu_hat;
  trace.accuracy_regime = regime;
  trace.schedule = schedule;
  trace.ledger = std::move(ledger);
  trace.declared = {params.eps, params.delta};
  trace.composed =
      strong_compose(schedule.eps_step, schedule.delta_step,
                     trace.ledger.size(), schedule.delta_slack);
  return trace;
}

SgdTrace exact_sgd(const ConvexProblem& problem, const UserDataset& data,
                   std::size_t iterations) {
  problem.validate();
  data.validate();
  if (!(problem.smooth_h > 0.0)) {
    throw std::invalid_argument("exact sgd: smooth_h must be positive");
  }
  const double eta = 1.0 / problem.smooth_h;
  SgdTrace trace = run_loop(
      problem, eta, iterations, iterations + 1,
      [&](const Point& theta, std::size_t) {
        return EstimateOutcome::accepted(empirical_gradient(problem, data, theta));
      });
  trace.declared = {0.0, 0.0};
  return trace;
}

std::vector<double> risk_trace(const ConvexProblem& problem,
                               const UserDataset& data,
                               const std::vector<Point>& iterates) {
  std::vector<double> risks;
  risks.reserve(iterates.size());
  for (const Point& theta : iterates) {
    risks.push_back(empirical_risk(problem, data, theta));
  }
  return risks;
}

}  // namespace userdp
