#include "userdp/amplify.hpp"

#include <cmath>
#include <stdexcept>

namespace userdp {

void AmplifyParams::validate() const {
  if (!(eps > 0.0) || eps > 1.0) {
    throw std::invalid_argument("amplify: eps must be in (0, 1]");
  }
  if (!(delta > 0.0) || delta >= 1.0) {
    throw std::invalid_argument("amplify: delta must be in (0, 1)");
  }
  if (eps < delta) throw std::invalid_argument("amplify: requires eps >= delta");
  // alpha here is the amplified failure target; each run uses 1/3.
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("amplify: alpha must be in (0, 1)");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("amplify: r must be positive and finite");
  }
}

std::pair<double, double> sub_budget(double eps, double delta, double alpha) {
  const AmplifySchedule s = schedule_amplify(eps, delta, alpha);
  return {s.eps_run, s.delta_run};
}

EstimateOutcome dp_estimate_2(const std::vector<Point>& points,
                              const AmplifyParams& params, RandomStream& rng,
                              AmplifyReport* report) {
  params.validate();
  const AmplifySchedule schedule = schedule_amplify(
      params.eps, params.delta, params.alpha, params.run_multiplier);

  MechanismParams run_params;
  run_params.eps = schedule.eps_run;
  run_params.delta = schedule.delta_run;
  run_params.alpha = 1.0 / 3.0;  // per-run failure probability
  run_params.r = params.r;
  run_params.threshold_constant = params.threshold_constant;
  run_params.validate();

  if (report) {
    *report = {};
    report->schedule = schedule;
    report->run_outcomes.reserve(schedule.k_runs);
  }

  const std::uint64_t base = rng.next_seed();
  std::vector<Point> kept;
  std::int64_t total_rounds = 0;
  for (std::size_t run = 0; run < schedule.k_runs; ++run) {
    RandomStream run_rng(derive_seed(base, {run}));
    EstimateOutcome out = dp_estimate_1(points, run_params, run_rng);
    total_rounds += out.rounds;
    if (report) {
      report->run_outcomes.push_back(out.kind);
      if (out.kind != Outcome::kAccepted) ++report->garbage_runs;
    }
    if (out.is_accepted()) kept.push_back(std::move(out.point));
  }

  if (kept.empty()) {
    EstimateOutcome out = EstimateOutcome::garbage2();
    out.rounds = total_rounds;
    return out;
  }
  EstimateOutcome out = EstimateOutcome::accepted(coordinate_median(kept));
  out.rounds = total_rounds;
  return out;
}

}  // namespace userdp
