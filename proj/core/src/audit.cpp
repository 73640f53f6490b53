#include "userdp/audit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace userdp {

const char* audit_family_name(AuditFamily family) {
  switch (family) {
    case AuditFamily::kCluster: return "cluster";
    case AuditFamily::kSpread: return "spread";
  }
  return "unknown";
}

AuditFamily audit_family_from_name(const std::string& name) {
  if (name == "cluster") return AuditFamily::kCluster;
  if (name == "spread") return AuditFamily::kSpread;
  throw std::invalid_argument("unknown audit family: " + name);
}

std::pair<std::vector<Point>, std::vector<Point>> audit_datasets(
    AuditFamily family, std::size_t n) {
  if (n < 2) throw std::invalid_argument("audit datasets: n must be >= 2");
  std::vector<Point> base(n, Point{0.0});
  switch (family) {
    case AuditFamily::kCluster:
      break;
    case AuditFamily::kSpread:
      for (std::size_t i = 0; i < n; ++i) {
        base[i][0] = -5.0 + 10.0 * static_cast<double>(i) /
                                static_cast<double>(n - 1);
      }
      break;
  }
  std::vector<Point> neighbor = base;
  switch (family) {
    case AuditFamily::kCluster:
      neighbor.back()[0] = 50.0;
      break;
    case AuditFamily::kSpread:
      neighbor.back()[0] = 0.0;
      break;
  }
  return {std::move(base), std::move(neighbor)};
}

AuditResult run_audit(const AuditParams& params, RandomStream& rng) {
  MechanismParams mech;
  mech.eps = params.eps;
  mech.delta = params.delta;
  mech.alpha = params.alpha;
  mech.r = params.r;
  mech.threshold_constant = params.threshold_constant;
  mech.validate_round();
  if (params.trials == 0) {
    throw std::invalid_argument("audit: trials must be positive");
  }

  auto [base, neighbor] = audit_datasets(params.family, params.n);

  AcceptanceFn accept;
  if (params.negative_control) {
    accept = [](std::size_t, std::size_t, double) { return 0.9; };
  }

  const AcceptEstimate on_base =
      estimate_accept_prob(base, mech, params.trials, rng, accept);
  const AcceptEstimate on_neighbor =
      estimate_accept_prob(neighbor, mech, params.trials, rng, accept);

  AuditResult result;
  result.q = on_base.estimate;
  result.q_se = on_base.std_error;
  result.q_prime = on_neighbor.estimate;
  result.q_prime_se = on_neighbor.std_error;
  result.trials = params.trials;
  result.enough_trials = params.trials >= 10000;
  result.retry_cap = retry_cap(params.n, params.alpha);

  const double slack = params.delta / result.retry_cap;
  const double up_scale = std::exp(params.eps);
  const double down_scale = std::exp(-params.eps);
  const double up_sigma = std::sqrt(up_scale * result.q_se * up_scale * result.q_se +
                                    result.q_prime_se * result.q_prime_se);
  const double down_sigma =
      std::sqrt(down_scale * result.q_se * down_scale * result.q_se +
                result.q_prime_se * result.q_prime_se);
  result.upper = up_scale * result.q + slack + 3.0 * up_sigma;
  result.lower = down_scale * result.q - slack - 3.0 * down_sigma;

  result.premise_ok = result.q <= result.cap && result.q_prime <= result.cap;
  result.band_ok =
      result.q_prime <= result.upper && result.q_prime >= result.lower;
  result.passed = result.premise_ok && result.band_ok;

  const double q = result.q;
  result.g2_rate_analytic =
      (1.0 - q) / ((result.retry_cap - 1.0) * q + 1.0);
  return result;
}

}  // namespace userdp
