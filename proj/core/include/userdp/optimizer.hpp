#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "userdp/blockwise.hpp"
#include "userdp/userlevel.hpp"

namespace userdp {

struct BallDomain {
  Point center;
  double radius = 1.0;
};

Point project_to_domain(const Point& theta, const BallDomain& domain);

// Per-sample objective f(theta; z). `lipschitz_g` bounds the gradient norm
// over domain x data and doubles as the radius handed to the private oracle.
struct ConvexProblem {
  std::size_t dim = 0;
  BallDomain domain;
  double lipschitz_g = 0.0;
  double smooth_h = 0.0;
  std::function<double(std::span<const double>, std::span<const double>)> loss;
  std::function<void(std::span<const double>, std::span<const double>,
                     std::span<double>)>
      grad;

  void validate() const;
};

// f(theta; z) = (curvature / 2) ||theta - z||^2, minimized at the data mean.
ConvexProblem make_quadratic_problem(std::size_t dim, double domain_radius,
                                     double curvature, double data_radius);

double empirical_risk(const ConvexProblem& problem, const UserDataset& data,
                      const Point& theta);
Point empirical_gradient(const ConvexProblem& problem, const UserDataset& data,
                         const Point& theta);
std::vector<Point> user_gradient_means(const ConvexProblem& problem,
                                       const UserDataset& data,
                                       const Point& theta);

struct OracleParams {
  double mean_concentration = 10.0;
  BlockwiseParams block;  // eps, delta, alpha, r are filled per call
};

// One private mean-estimation call over the per-user gradient means, at the
// given per-call budget. Swapping one user changes one input point, so each
// call is (eps, delta)-DP at the user level.
EstimateOutcome private_gradient_oracle(const ConvexProblem& problem,
                                        const UserDataset& data,
                                        const Point& theta,
                                        const PrivacyBudget& budget,
                                        double alpha,
                                        const OracleParams& oracle,
                                        RandomStream& rng,
                                        BlockwiseReport* report = nullptr);

struct SgdParams {
  double eps = 0.0;    // total budget across all oracle calls
  double delta = 0.0;
  double alpha = 0.0;  // per-call failure probability
  std::size_t iterations = 0;
  std::size_t pilot_calls = 10;       // gradient-scale probes at the start
  double abort_garbage_fraction = 0.1;
  OracleParams oracle;

  void validate() const;
};

struct SgdTrace {
  std::vector<Point> iterates;  // theta_0 .. theta_T
  Point average;                // uniform average of the iterates
  double step = 0.0;
  double nu_hat = 0.0;          // pilot RMS gradient norm
  std::size_t garbage_steps = 0;
  std::size_t steps_run = 0;
  bool aborted = false;
  bool accuracy_regime = true;
  SgdSchedule schedule;
  std::vector<PrivacyBudget> ledger;  // one entry per oracle call made
  PrivacyBudget composed;             // strong composition over the ledger
  PrivacyBudget declared;
};

// Projected SGD driven by the private oracle. The budget is split ahead of
// time across pilot_calls + iterations calls; a garbage answer skips the
// step, and the run aborts once garbage exceeds the configured fraction.
SgdTrace private_sgd(const ConvexProblem& problem, const UserDataset& data,
                     const SgdParams& params, RandomStream& rng);

// Same loop with exact empirical gradients and step 1 / smooth_h.
SgdTrace exact_sgd(const ConvexProblem& problem, const UserDataset& data,
                   std::size_t iterations);

std::vector<double> risk_trace(const ConvexProblem& problem,
                               const UserDataset& data,
                               const std::vector<Point>& iterates);

}  // namespace userdp
