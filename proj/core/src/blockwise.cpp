#include "userdp/blockwise.hpp"

#include <cmath>
#include <stdexcept>

namespace userdp {

void BlockwiseParams::validate() const {
  constexpr double kThird = 1.0 / 3.0;
  if (!(eps > 0.0) || eps > 1.0) {
    throw std::invalid_argument("blockwise: eps must be in (0, 1]");
  }
  if (!(delta > 0.0) || delta >= 1.0) {
    throw std::invalid_argument("blockwise: delta must be in (0, 1)");
  }
  if (eps < delta) {
    throw std::invalid_argument("blockwise: requires eps >= delta");
  }
  if (!(alpha > 0.0) || alpha > kThird) {
    throw std::invalid_argument("blockwise: alpha must be in (0, 1/3]");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("blockwise: r must be positive and finite");
  }
  if (!(radius_constant > 0.0) || !(k_margin >= 1.0)) {
    throw std::invalid_argument("blockwise: bad constants");
  }
}

std::size_t choose_k(std::size_t n, std::size_t d, double eps, double delta,
                     double k_margin, double threshold_constant) {
  if (n == 0 || d == 0) throw std::invalid_argument("choose_k: empty input");
  const double ld = std::log(1.0 / delta);
  if (static_cast<double>(n) < threshold_constant / eps * ld) {
    throw std::invalid_argument(
        "choose_k: n below the minimum point count for this budget");
  }
  const std::size_t d_pad = next_pow2(d);
  std::size_t best = 1;
  for (std::size_t k = 2; k * k <= d_pad; k <<= 1) {
    const double need = k_margin * (static_cast<double>(k) / eps) *
                        std::log(static_cast<double>(k) / delta) *
                        std::sqrt(ld);
    if (static_cast<double>(n) >= need) best = k;
  }
  return best;
}

BlockPlan plan_blocks(std::size_t n, std::size_t d,
                      const BlockwiseParams& params,
                      std::uint64_t rotation_seed) {
  params.validate();
  BlockPlan plan;
  plan.rotation = make_rotation(d, rotation_seed);
  plan.k = params.k_override
               ? params.k_override
               : choose_k(n, d, params.eps, params.delta, params.k_margin,
                          params.threshold_constant);
  if (plan.k == 0 || (plan.k & (plan.k - 1)) != 0 ||
      plan.k * plan.k > plan.rotation.d_pad) {
    throw std::invalid_argument("plan_blocks: k must be a power of two with "
                                "k^2 <= padded dimension");
  }
  plan.block_count = plan.k * plan.k;
  plan.block_dim = plan.rotation.d_pad / plan.block_count;
  const BlockSchedule budget =
      schedule_blocks(params.eps, params.delta, plan.k);
  plan.eps_block = budget.eps_block;
  plan.delta_block = budget.delta_block;
  plan.alpha_block = params.alpha / static_cast<double>(plan.block_count);
  plan.r_block =
      params.radius_constant * params.r *
      std::sqrt(std::log(static_cast<double>(plan.rotation.d_pad) *
                         static_cast<double>(n) / params.alpha)) /
      static_cast<double>(plan.k);
  return plan;
}

std::vector<Point> slice_blocks(std::span<const double> rotated,
                                const BlockPlan& plan) {
  if (rotated.size() != plan.rotation.d_pad) {
    throw std::invalid_argument("slice_blocks: dimension mismatch");
  }
  std::vector<Point> blocks(plan.block_count);
  for (std::size_t s = 0; s < plan.block_count; ++s) {
    const auto* begin = rotated.data() + s * plan.block_dim;
    blocks[s].assign(begin, begin + plan.block_dim);
  }
  return blocks;
}

Point concat_blocks(const std::vector<Point>& blocks, const BlockPlan& plan) {
  if (blocks.size() != plan.block_count) {
    throw std::invalid_argument("concat_blocks: block count mismatch");
  }
  Point out;
  out.reserve(plan.rotation.d_pad);
  for (const Point& b : blocks) {
    if (b.size() != plan.block_dim) {
      throw std::invalid_argument("concat_blocks: block dimension mismatch");
    }
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

EstimateOutcome dp_estimate_interpolated(const std::vector<Point>& points,
                                         const BlockwiseParams& params,
                                         RandomStream& rng,
                                         BlockwiseReport* report) {
  params.validate();
  if (points.empty()) throw std::invalid_argument("blockwise: no points");
  const std::size_t n = points.size();
  const std::size_t d = points.front().size();

  // Seeds are fixed before the data is touched, so the rotation and the
  // per-block streams cannot depend on sample values.
  const std::uint64_t rotation_seed = rng.next_seed();
  const std::uint64_t block_base = rng.next_seed();
  const BlockPlan plan = plan_blocks(n, d, params, rotation_seed);

  std::vector<std::vector<Point>> block_points(plan.block_count);
  for (std::size_t s = 0; s < plan.block_count; ++s) {
    block_points[s].reserve(n);
  }
  for (const Point& x : points) {
    const Point rotated = rotate(plan.rotation, x);
    for (std::size_t s = 0; s < plan.block_count; ++s) {
      const auto* begin = rotated.data() + s * plan.block_dim;
      block_points[s].emplace_back(begin, begin + plan.block_dim);
    }
  }

  if (report) {
    *report = {};
    report->plan = plan;
    report->block_outcomes.reserve(plan.block_count);
  }

  MechanismParams block_mech;
  block_mech.eps = plan.eps_block;
  block_mech.delta = plan.delta_block;
  block_mech.alpha = plan.alpha_block;
  block_mech.r = plan.r_block;
  block_mech.threshold_constant = params.threshold_constant;
  if (report) report->accuracy_regime = block_mech.in_accuracy_regime(n);

  std::vector<Point> estimates(plan.block_count);
  std::int64_t total_rounds = 0;
  bool failed = false;
  for (std::size_t s = 0; s < plan.block_count; ++s) {
    RandomStream block_rng(derive_seed(block_base, {s}));
    EstimateOutcome out;
    if (params.amplified_blocks) {
      AmplifyParams amp;
      amp.eps = plan.eps_block;
      amp.delta = plan.delta_block;
      amp.alpha = plan.alpha_block;
      amp.r = plan.r_block;
      amp.run_multiplier = params.run_multiplier;
      amp.threshold_constant = params.threshold_constant;
      out = dp_estimate_2(block_points[s], amp, block_rng);
    } else {
      out = dp_estimate_1(block_points[s], block_mech, block_rng);
    }
    total_rounds += out.rounds;
    if (report) report->block_outcomes.push_back(out.kind);
    if (!out.is_accepted()) {
      failed = true;
      continue;
    }
    estimates[s] = std::move(out.point);
  }
  if (failed) {
    EstimateOutcome out = EstimateOutcome::garbage2();
    out.rounds = total_rounds;
    return out;
  }

  const Point assembled = concat_blocks(estimates, plan);
  EstimateOutcome out =
      EstimateOutcome::accepted(unrotate(plan.rotation, assembled));
  out.rounds = total_rounds;
  return out;
}

}  // namespace userdp
