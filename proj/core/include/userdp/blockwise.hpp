#pragma once

#include <cstdint>
#include <vector>

#include "userdp/accounting.hpp"
#include "userdp/amplify.hpp"
#include "userdp/mechanism.hpp"

namespace userdp {

struct BlockwiseParams {
  double eps = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double r = 1.0;
  double radius_constant = 2.0;   // scales the per-block radius
  double k_margin = 3.0;          // headroom multiplier in choose_k
  std::size_t k_override = 0;     // 0 = pick k from (n, d, eps, delta)
  bool amplified_blocks = false;  // run the median-amplified engine per block
  double run_multiplier = 18.0;   // used when amplified_blocks
  double threshold_constant = 12.0;

  void validate() const;
};

// Largest power-of-two k with k^2 <= next_pow2(d) and
//   n >= k_margin * (k / eps) * ln(k / delta) * sqrt(ln(1 / delta)).
// The margin keeps the per-block sub-budgets out of the regime where the
// garbage index dominates every round. Returns 1 when no larger k qualifies;
// errors when n is below threshold_constant * (1/eps) * ln(1/delta).
std::size_t choose_k(std::size_t n, std::size_t d, double eps, double delta,
                     double k_margin = 3.0, double threshold_constant = 12.0);

struct BlockPlan {
  std::size_t k = 1;
  std::size_t block_count = 1;  // k^2
  std::size_t block_dim = 0;    // d_pad / k^2
  double eps_block = 0.0;
  double delta_block = 0.0;
  double alpha_block = 0.0;
  double r_block = 0.0;
  RotationPlan rotation;
};

// Derives the full plan. The rotation seed is taken before any data access;
// the plan depends only on (n, d) and the parameters.
BlockPlan plan_blocks(std::size_t n, std::size_t d,
                      const BlockwiseParams& params,
                      std::uint64_t rotation_seed);

// Contiguous slices of a rotated vector, one per block, and their exact
// inverse. concat(slice(v)) reproduces v bit for bit.
std::vector<Point> slice_blocks(std::span<const double> rotated,
                                const BlockPlan& plan);
Point concat_blocks(const std::vector<Point>& blocks, const BlockPlan& plan);

struct BlockwiseReport {
  BlockPlan plan;
  std::vector<Outcome> block_outcomes;
  bool accuracy_regime = true;  // per-block point-count check
};

// Rotate, estimate each block on its sub-budget, concatenate, unrotate.
// Any garbage block makes the whole call Garbage2.
EstimateOutcome dp_estimate_interpolated(const std::vector<Point>& points,
                                         const BlockwiseParams& params,
                                         RandomStream& rng,
                                         BlockwiseReport* report = nullptr);

}  // namespace userdp
