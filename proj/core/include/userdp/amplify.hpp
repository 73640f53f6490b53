#pragma once

#include <utility>
#include <vector>

#include "userdp/accounting.hpp"
#include "userdp/mechanism.hpp"

namespace userdp {

// Failure amplification: repeat the base sampler on split budgets and take a
// coordinate-wise median of the runs that produced a point.
struct AmplifyParams {
  double eps = 0.0;    // total budget
  double delta = 0.0;  // total budget
  double alpha = 0.0;  // target failure probability, in (0, 1)
  double r = 1.0;
  double run_multiplier = 18.0;
  double threshold_constant = 12.0;

  void validate() const;
};

struct AmplifyReport {
  AmplifySchedule schedule;
  std::vector<Outcome> run_outcomes;
  std::size_t garbage_runs = 0;
};

// Per-run budgets, exposed for callers that want them without running
// anything. Delegates to accounting so there is one formula.
std::pair<double, double> sub_budget(double eps, double delta, double alpha);

EstimateOutcome dp_estimate_2(const std::vector<Point>& points,
                              const AmplifyParams& params, RandomStream& rng,
                              AmplifyReport* report = nullptr);

}  // namespace userdp
