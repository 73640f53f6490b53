#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "userdp/geometry.hpp"
#include "userdp/random.hpp"

namespace userdp {

enum class Outcome { kAccepted, kGarbage1, kGarbage2 };

// Result of one estimator invocation. Garbage1 is the explicit "no answer"
// symbol the sampler emits on purpose; Garbage2 means the retry budget ran
// out. `rounds` is the number of rejection rounds actually executed.
struct EstimateOutcome {
  Outcome kind = Outcome::kGarbage2;
  Point point;
  std::int64_t rounds = 0;

  static EstimateOutcome accepted(Point p) {
    return {Outcome::kAccepted, std::move(p), 0};
  }
  static EstimateOutcome garbage1() { return {Outcome::kGarbage1, {}, 0}; }
  static EstimateOutcome garbage2() { return {Outcome::kGarbage2, {}, 0}; }
  bool is_accepted() const { return kind == Outcome::kAccepted; }
};

const char* outcome_name(Outcome o);

struct MechanismParams {
  double eps = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double r = 1.0;  // promised concentration radius of the good points
  double threshold_constant = 12.0;

  // eps in (0, 1], delta in (0, eps], alpha in (0, 1/3], r positive finite.
  // The accuracy analysis further wants eps <= 1/3 and n past the threshold
  // below; running outside that regime is allowed and only voids accuracy.
  void validate() const;

  // Looser check for single-round probes (the audit runs rounds at eps
  // beyond the estimator's box): eps > 0, delta and alpha in (0, 1).
  void validate_round() const;

  // Point count below which the accuracy guarantee is void. Privacy never
  // depends on this; callers surface it as a warning only.
  double accuracy_threshold() const;
  bool in_accuracy_regime(std::size_t n) const;
};

// (1/3) * (n/f) * exp(eps * (min(f, 2n/3) - 2n/3)), clamped into [0, 1].
// Evaluated in log space; f must lie in [1, n].
double acceptance_probability(std::size_t f_count, std::size_t n, double eps);

// Probability that a round draws the garbage index instead of a data index:
// 1 / (1 + (delta/4) * e^{eps * 2n/3}), computed via the log-space ratio so
// the raw weights are never materialized.
double garbage_index_probability(std::size_t n, double eps, double delta);

// Retry cap N = ceil(e^{10 sqrt(ln n)} / alpha).
double retry_cap(std::size_t n, double alpha);

enum class RoundResult { kAcceptedPoint, kAcceptedGarbage, kRejected };

struct RoundOutcome {
  RoundResult result = RoundResult::kRejected;
  Point point;  // filled iff result == kAcceptedPoint
};

// Override for the acceptance rule, used by the audit's negative control and
// by retry-count tests. Return value is clamped into [0, 1].
using AcceptanceFn =
    std::function<double(std::size_t f_count, std::size_t n, double eps)>;

RoundOutcome single_round(const std::vector<Point>& points,
                          const MechanismParams& params, RandomStream& rng);
RoundOutcome single_round_with(const std::vector<Point>& points,
                               const MechanismParams& params, RandomStream& rng,
                               const AcceptanceFn& accept);

// Rejection sampler: up to Geometric(1/N) rounds, each accepting a candidate
// point, accepting the garbage symbol, or rejecting. Exhausting the rounds
// yields Garbage2.
EstimateOutcome dp_estimate_1(const std::vector<Point>& points,
                              const MechanismParams& params, RandomStream& rng);
EstimateOutcome dp_estimate_1_with(const std::vector<Point>& points,
                                   const MechanismParams& params,
                                   RandomStream& rng,
                                   const AcceptanceFn& accept);

// Monte Carlo estimate of the single-round acceptance probability (either
// kind of acceptance, i.e. P(round does not reject)).
struct AcceptEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

AcceptEstimate estimate_accept_prob(const std::vector<Point>& points,
                                    const MechanismParams& params,
                                    std::size_t trials, RandomStream& rng,
                                    const AcceptanceFn& accept = {});

// Brute-force reference distribution for d in {1, 2}: cell masses of the
// ideal output density (proportional to e^{eps min(f, 2n/3)} where f > 0)
// plus the garbage share. d=1 integrates the piecewise-constant density
// exactly within each cell; d=2 evaluates cell centers.
struct GridSpec {
  Point lo;
  Point hi;
  std::size_t cells_per_dim = 0;
};

struct DensityTable {
  GridSpec grid;
  std::size_t dim = 0;
  std::vector<double> cell_mass;  // cells_per_dim^dim entries, row-major
  double garbage_mass = 0.0;
  double cell_volume = 0.0;
};

DensityTable reference_density(const std::vector<Point>& points,
                               const MechanismParams& params,
                               const GridSpec& grid);

// Flat cell index for a point, or nullopt if it lies outside the grid.
std::optional<std::size_t> grid_cell_index(const GridSpec& grid,
                                           std::span<const double> p);

}  // namespace userdp
