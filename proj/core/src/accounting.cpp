#include "userdp/accounting.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace userdp {

namespace {

void check_budget(double eps, double delta, const char* who) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument(std::string(who) + ": eps must be >= 0");
  }
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument(std::string(who) + ": delta must be in [0,1)");
  }
}

}  // namespace

PrivacyBudget weak_compose(std::span<const PrivacyBudget> parts) {
  PrivacyBudget total;
  for (const PrivacyBudget& b : parts) {
    check_budget(b.eps, b.delta, "weak_compose");
    total.eps += b.eps;
    total.delta += b.delta;
  }
  return total;
}

PrivacyBudget strong_compose(double eps, double delta, std::size_t k,
                             double delta_prime) {
  check_budget(eps, delta, "strong_compose");
  if (k < 1) throw std::invalid_argument("strong_compose: k must be >= 1");
  if (!(delta_prime > 0.0) || !(delta_prime < 1.0)) {
    throw std::invalid_argument("strong_compose: delta_prime must be in (0,1)");
  }
  const double kd = static_cast<double>(k);
  PrivacyBudget total;
  total.eps = std::sqrt(2.0 * kd * std::log(1.0 / delta_prime)) * eps +
              kd * eps * std::expm1(eps);
  total.delta = kd * delta + delta_prime;
  return total;
}

AmplifySchedule schedule_amplify(double eps, double delta, double alpha,
                                 double run_multiplier) {
  if (!(eps > 0.0)) throw std::invalid_argument("schedule_amplify: eps <= 0");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("schedule_amplify: delta out of range");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("schedule_amplify: alpha out of range");
  }
  if (!(run_multiplier >= 1.0)) {
    throw std::invalid_argument("schedule_amplify: run_multiplier < 1");
  }
  const double la = std::log(1.0 / alpha);
  const double ld = std::log(1.0 / delta);
  AmplifySchedule s;
  s.eps_run = eps / std::min(la, std::sqrt(la * ld));
  s.delta_run = delta / la;
  s.k_runs = static_cast<std::size_t>(std::ceil(run_multiplier * la));
  return s;
}

BlockSchedule schedule_blocks(double eps, double delta, std::size_t k) {
  if (!(eps > 0.0)) throw std::invalid_argument("schedule_blocks: eps <= 0");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("schedule_blocks: delta out of range");
  }
  if (k < 1) throw std::invalid_argument("schedule_blocks: k must be >= 1");
  if (k == 1) return {eps, delta};
  const double kd = static_cast<double>(k);
  return {eps / (kd * std::sqrt(std::log(1.0 / delta))),
          delta / (kd * kd)};
}

SgdSchedule schedule_sgd(double eps, double delta, std::size_t units) {
  if (!(eps > 0.0)) throw std::invalid_argument("schedule_sgd: eps <= 0");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("schedule_sgd: delta out of range");
  }
  if (units < 1) throw std::invalid_argument("schedule_sgd: units must be >= 1");

  SgdSchedule s;
  s.units = units;
  s.delta_slack = delta / 2.0;
  s.delta_step = delta / (2.0 * static_cast<double>(units));

  const auto spent = [&](double x) {
    return strong_compose(x, s.delta_step, units, s.delta_slack).eps;
  };
  double lo = 0.0, hi = eps;
  while (spent(hi) < eps) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (spent(mid) <= eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  s.eps_step = lo;
  return s;
}

}  // namespace userdp
