#include <chrono>
#include <memory>
#include <string>

#include "commands.hpp"
#include "engines.hpp"
#include "records.hpp"
#include "userdp/dataset_io.hpp"
#include "userdp/version.hpp"

namespace cli {

using namespace userdp;

namespace {

struct Args {
  std::string data;
  std::string out = "-";
  EngineConfig cfg;
  std::uint64_t seed = 1;
  bool timings = false;
};

json config_json(const Args& args) {
  json j;
  j["engine"] = args.cfg.engine;
  j["eps"] = args.cfg.eps;
  j["delta"] = args.cfg.delta;
  j["alpha"] = args.cfg.alpha;
  j["r"] = args.cfg.r;
  j["mean_concentration"] = args.cfg.mean_concentration;
  j["radius_constant"] = args.cfg.radius_constant;
  j["k_margin"] = args.cfg.k_margin;
  j["k_override"] = args.cfg.k_override;
  j["amplified_blocks"] = args.cfg.amplified_blocks;
  j["run_multiplier"] = args.cfg.run_multiplier;
  j["threshold_constant"] = args.cfg.threshold_constant;
  j["project"] = args.cfg.project;
  j["data"] = args.data;
  j["seed"] = args.seed;
  return j;
}

void run(const Args& args) {
  const auto started = std::chrono::steady_clock::now();
  const LoadedDataset loaded = load_dataset(args.data);
  const std::optional<Sidecar> sidecar = load_sidecar(args.data);

  RandomStream rng(args.seed);
  EngineResult engine;
  if (loaded.kind == DatasetKind::kCategorical) {
    engine = run_discrete_engine(loaded.discrete, args.cfg, rng);
  } else {
    engine = run_real_engine(loaded.real, args.cfg, rng);
  }

  json record;
  record["version"] = kVersion;
  record["command"] = "estimate";
  record["config"] = config_json(args);
  record["outcome"] = outcome_name(engine.outcome.kind);
  record["rounds"] = engine.outcome.rounds;
  record["ledger"] = engine.ledger;
  if (engine.outcome.is_accepted()) {
    record["point"] = engine.outcome.point;
    if (sidecar && !sidecar->true_mean.empty()) {
      record["error_l2"] = std::sqrt(
          squared_distance(engine.outcome.point, sidecar->true_mean));
      if (loaded.kind == DatasetKind::kCategorical) {
        record["error_tv"] =
            total_variation(engine.outcome.point, sidecar->true_mean);
      }
    }
  }
  if (args.timings) {
    record["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - started)
            .count();
  }

  OutputSink sink(args.out);
  sink.stream() << record.dump() << "\n";
}

}  // namespace

void register_estimate(CLI::App& app) {
  auto args = std::make_shared<Args>();
  CLI::App* sub =
      app.add_subcommand("estimate", "one private mean estimate of a dataset");
  sub->add_option("--data", args->data, "dataset file")->required();
  sub->add_option("--engine", args->cfg.engine,
                  "one | two | interpolated | user");
  sub->add_option("--eps", args->cfg.eps)->required();
  sub->add_option("--delta", args->cfg.delta)->required();
  sub->add_option("--alpha", args->cfg.alpha)->required();
  sub->add_option("--r", args->cfg.r, "concentration radius");
  sub->add_option("--mean-concentration", args->cfg.mean_concentration);
  sub->add_option("--radius-constant", args->cfg.radius_constant);
  sub->add_option("--k-margin", args->cfg.k_margin);
  sub->add_option("--k", args->cfg.k_override, "force the block split");
  sub->add_flag("--amplified-blocks", args->cfg.amplified_blocks);
  sub->add_option("--run-multiplier", args->cfg.run_multiplier);
  sub->add_option("--threshold-constant", args->cfg.threshold_constant);
  sub->add_flag("!--no-project", args->cfg.project,
                "skip the simplex projection on categorical data");
  sub->add_option("--seed", args->seed);
  sub->add_option("--out", args->out, "record file, - for stdout");
  sub->add_flag("--timings", args->timings,
                "include wall time (breaks byte-identical reruns)");
  sub->callback([args] { run(*args); });
}

}  // namespace cli
