#pragma once

#include <string>

#include "records.hpp"
#include "userdp/amplify.hpp"
#include "userdp/blockwise.hpp"
#include "userdp/random.hpp"
#include "userdp/userlevel.hpp"

namespace cli {

// Flat bag of estimator knobs shared by the estimate and experiment
// commands. engine picks the pipeline: "one" and "two" and "interpolated"
// treat every sample as its own point; "user" runs on per-user means.
struct EngineConfig {
  std::string engine = "user";
  double eps = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double r = 1.0;
  double mean_concentration = 10.0;
  double radius_constant = 2.0;
  double k_margin = 3.0;
  std::size_t k_override = 0;
  bool amplified_blocks = false;
  double run_multiplier = 18.0;
  double threshold_constant = 12.0;
  bool project = true;  // simplex projection for categorical data

  userdp::BlockwiseParams block_params() const;
};

struct EngineResult {
  userdp::EstimateOutcome outcome;
  json ledger;  // schedule actually charged, plus regime flags
};

EngineResult run_real_engine(const userdp::UserDataset& data,
                             const EngineConfig& cfg, userdp::RandomStream& rng);

EngineResult run_discrete_engine(const userdp::DiscreteSamples& data,
                                 const EngineConfig& cfg,
                                 userdp::RandomStream& rng);

}  // namespace cli
