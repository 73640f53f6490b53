#pragma once

#include <cstddef>
#include <span>

namespace userdp {

struct PrivacyBudget {
  double eps = 0.0;
  double delta = 0.0;
};

// Sum of components. Exact, no slack term.
PrivacyBudget weak_compose(std::span<const PrivacyBudget> parts);

// k-fold advanced composition of one (eps, delta) mechanism with slack
// delta_prime:
//   eps_total   = sqrt(2k ln(1/delta_prime)) * eps + k * eps * (e^eps - 1)
//   delta_total = k * delta + delta_prime
PrivacyBudget strong_compose(double eps, double delta, std::size_t k,
                             double delta_prime);

// Sub-budgets for repeating a base estimator ceil(run_multiplier * ln(1/alpha))
// times and taking a coordinate-wise median:
//   eps_run   = eps / min(ln(1/alpha), sqrt(ln(1/alpha) * ln(1/delta)))
//   delta_run = delta / ln(1/alpha)
// ln(1/alpha) runs at these sub-budgets weak-compose back to (eps, delta)
// when alpha >= delta; run_multiplier scales the repeat count for the
// median's failure margin and is accounted for in run metadata.
struct AmplifySchedule {
  double eps_run = 0.0;
  double delta_run = 0.0;
  std::size_t k_runs = 0;
};

AmplifySchedule schedule_amplify(double eps, double delta, double alpha,
                                 double run_multiplier = 18.0);

// Per-block sub-budgets for a k^2-block split. k = 1 passes the budget
// through unchanged; otherwise
//   eps_block = eps / (k * sqrt(ln(1/delta))),  delta_block = delta / k^2.
struct BlockSchedule {
  double eps_block = 0.0;
  double delta_block = 0.0;
};

BlockSchedule schedule_blocks(double eps, double delta, std::size_t k);

// Per-unit budget for `units` adaptive queries under strong composition.
// eps_step is the largest value whose strong composition (with per-unit
// delta = delta/(2*units) and slack delta/2) stays within (eps, delta), found
// by bisection, so the schedule round-trips to the declared total exactly.
struct SgdSchedule {
  double eps_step = 0.0;
  double delta_step = 0.0;
  double delta_slack = 0.0;
  std::size_t units = 0;
};

SgdSchedule schedule_sgd(double eps, double delta, std::size_t units);

}  // namespace userdp
