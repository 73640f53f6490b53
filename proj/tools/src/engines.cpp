#include "engines.hpp"

#include <stdexcept>

#include "userdp/mechanism.hpp"

namespace cli {

using namespace userdp;

namespace {

std::vector<Point> flatten_samples(const UserDataset& data) {
  std::vector<Point> points;
  points.reserve(data.n * data.m);
  for (std::size_t u = 0; u < data.n; ++u) {
    for (std::size_t i = 0; i < data.m; ++i) {
      const auto s = data.sample(u, i);
      points.emplace_back(s.begin(), s.end());
    }
  }
  return points;
}

json plan_json(const BlockwiseReport& report) {
  json j;
  j["k"] = report.plan.k;
  j["block_count"] = report.plan.block_count;
  j["block_dim"] = report.plan.block_dim;
  j["d_pad"] = report.plan.rotation.d_pad;
  j["eps_block"] = report.plan.eps_block;
  j["delta_block"] = report.plan.delta_block;
  j["alpha_block"] = report.plan.alpha_block;
  j["r_block"] = report.plan.r_block;
  json blocks = json::array();
  for (const Outcome o : report.block_outcomes) blocks.push_back(outcome_name(o));
  j["block_outcomes"] = blocks;
  j["accuracy_regime"] = report.accuracy_regime;
  return j;
}

}  // namespace

BlockwiseParams EngineConfig::block_params() const {
  BlockwiseParams p;
  p.eps = eps;
  p.delta = delta;
  p.alpha = alpha;
  p.r = r;
  p.radius_constant = radius_constant;
  p.k_margin = k_margin;
  p.k_override = k_override;
  p.amplified_blocks = amplified_blocks;
  p.run_multiplier = run_multiplier;
  p.threshold_constant = threshold_constant;
  return p;
}

EngineResult run_real_engine(const UserDataset& data, const EngineConfig& cfg,
                             RandomStream& rng) {
  EngineResult result;
  result.ledger["declared"] = budget_json(cfg.eps, cfg.delta);

  if (cfg.engine == "one") {
    const std::vector<Point> points = flatten_samples(data);
    MechanismParams p;
    p.eps = cfg.eps;
    p.delta = cfg.delta;
    p.alpha = cfg.alpha;
    p.r = cfg.r;
    p.threshold_constant = cfg.threshold_constant;
    result.outcome = dp_estimate_1(points, p, rng);
    result.ledger["accuracy_regime"] = p.in_accuracy_regime(points.size());
    return result;
  }

  if (cfg.engine == "two") {
    const std::vector<Point> points = flatten_samples(data);
    AmplifyParams p;
    p.eps = cfg.eps;
    p.delta = cfg.delta;
    p.alpha = cfg.alpha;
    p.r = cfg.r;
    p.run_multiplier = cfg.run_multiplier;
    p.threshold_constant = cfg.threshold_constant;
    AmplifyReport report;
    result.outcome = dp_estimate_2(points, p, rng, &report);
    result.ledger["eps_run"] = report.schedule.eps_run;
    result.ledger["delta_run"] = report.schedule.delta_run;
    result.ledger["k_runs"] = report.schedule.k_runs;
    result.ledger["garbage_runs"] = report.garbage_runs;
    return result;
  }

  if (cfg.engine == "interpolated") {
    const std::vector<Point> points = flatten_samples(data);
    BlockwiseReport report;
    result.outcome =
        dp_estimate_interpolated(points, cfg.block_params(), rng, &report);
    result.ledger["plan"] = plan_json(report);
    return result;
  }

  if (cfg.engine == "user") {
    UserLevelParams p;
    p.block = cfg.block_params();
    p.mean_concentration = cfg.mean_concentration;
    BlockwiseReport report;
    result.outcome = dp_estimate_user(data, p, rng, &report);
    result.ledger["plan"] = plan_json(report);
    const UserRegime regime = user_regime(data.n, data.d, cfg.eps, cfg.delta,
                                          cfg.alpha, cfg.threshold_constant);
    result.ledger["user_regime"] =
        json{{"lower", regime.lower}, {"upper", regime.upper},
             {"inside", regime.inside}};
    const UserErrorBounds bounds = user_error_bounds(
        data.n, data.m, data.d, cfg.r, cfg.eps, cfg.delta, cfg.alpha);
    result.ledger["bounds"] = json{{"statistical", bounds.statistical},
                                   {"privacy", bounds.privacy}};
    return result;
  }

  throw std::invalid_argument("unknown engine: " + cfg.engine);
}

EngineResult run_discrete_engine(const DiscreteSamples& data,
                                 const EngineConfig& cfg, RandomStream& rng) {
  if (cfg.engine != "user") {
    throw std::invalid_argument(
        "categorical data runs under --engine user only");
  }
  EngineResult result;
  result.ledger["declared"] = budget_json(cfg.eps, cfg.delta);
  UserLevelParams p;
  p.block = cfg.block_params();
  p.mean_concentration = cfg.mean_concentration;
  BlockwiseReport report;
  result.outcome =
      learn_discrete_distribution(data, p, cfg.project, rng, &report);
  result.ledger["plan"] = plan_json(report);
  result.ledger["projected"] = cfg.project;
  return result;
}

}  // namespace cli
