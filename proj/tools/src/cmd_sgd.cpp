#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>

#include "commands.hpp"
#include "records.hpp"
#include "userdp/dataset_io.hpp"
#include "userdp/optimizer.hpp"
#include "userdp/version.hpp"

namespace cli {

using namespace userdp;

namespace {

struct Args {
  std::string data;
  std::string out = "-";
  double eps = 0.0;
  double delta = 0.0;
  double alpha = 0.1;
  std::size_t iterations = 0;
  std::size_t pilot_calls = 10;
  double abort_fraction = 0.1;
  double curvature = 1.0;
  double domain_radius = 1.0;
  double data_radius = 1.0;
  double smooth_override = 0.0;
  double mean_concentration = 10.0;
  double radius_constant = 2.0;
  double k_margin = 3.0;
  std::size_t k_override = 0;
  double run_multiplier = 18.0;
  double threshold_constant = 12.0;
  std::uint64_t seed = 1;
  bool exact = false;
  bool timings = false;
};

json config_json(const Args& args) {
  json j;
  j["eps"] = args.eps;
  j["delta"] = args.delta;
  j["alpha"] = args.alpha;
  j["iterations"] = args.iterations;
  j["pilot_calls"] = args.pilot_calls;
  j["abort_fraction"] = args.abort_fraction;
  j["curvature"] = args.curvature;
  j["domain_radius"] = args.domain_radius;
  j["data_radius"] = args.data_radius;
  j["smooth_override"] = args.smooth_override;
  j["mean_concentration"] = args.mean_concentration;
  j["radius_constant"] = args.radius_constant;
  j["k_margin"] = args.k_margin;
  j["k_override"] = args.k_override;
  j["run_multiplier"] = args.run_multiplier;
  j["threshold_constant"] = args.threshold_constant;
  j["exact"] = args.exact;
  j["data"] = args.data;
  j["seed"] = args.seed;
  return j;
}

void run(const Args& args) {
  const auto started = std::chrono::steady_clock::now();
  const LoadedDataset loaded = load_dataset(args.data);
  if (loaded.kind != DatasetKind::kReal) {
    throw std::invalid_argument("sgd needs a real-valued dataset");
  }
  const UserDataset& data = loaded.real;

  ConvexProblem problem = make_quadratic_problem(
      data.d, args.domain_radius, args.curvature, args.data_radius);
  if (args.smooth_override > 0.0) problem.smooth_h = args.smooth_override;

  SgdTrace trace;
  if (args.exact) {
    trace = exact_sgd(problem, data, args.iterations);
  } else {
    SgdParams params;
    params.eps = args.eps;
    params.delta = args.delta;
    params.alpha = args.alpha;
    params.iterations = args.iterations;
    params.pilot_calls = args.pilot_calls;
    params.abort_garbage_fraction = args.abort_fraction;
    params.oracle.mean_concentration = args.mean_concentration;
    params.oracle.block.radius_constant = args.radius_constant;
    params.oracle.block.k_margin = args.k_margin;
    params.oracle.block.k_override = args.k_override;
    params.oracle.block.run_multiplier = args.run_multiplier;
    params.oracle.block.threshold_constant = args.threshold_constant;
    RandomStream rng(args.seed);
    trace = private_sgd(problem, data, params, rng);
  }

  const std::vector<double> risks = risk_trace(problem, data, trace.iterates);

  json record;
  record["version"] = kVersion;
  record["command"] = "sgd";
  record["config"] = config_json(args);
  record["steps_run"] = trace.steps_run;
  record["garbage_steps"] = trace.garbage_steps;
  record["aborted"] = trace.aborted;
  record["accuracy_regime"] = trace.accuracy_regime;
  record["step"] = trace.step;
  record["nu_hat"] = trace.nu_hat;
  record["schedule"] = json{{"eps_step", trace.schedule.eps_step},
                            {"delta_step", trace.schedule.delta_step},
                            {"delta_slack", trace.schedule.delta_slack},
                            {"units", trace.schedule.units}};
  // Every oracle call charges the same step budget, so the ledger compresses
  // to its length; composed is the strong composition over those calls.
  record["ledger"] = json{{"calls", trace.ledger.size()},
                          {"eps_step", trace.schedule.eps_step},
                          {"delta_step", trace.schedule.delta_step}};
  record["composed"] = budget_json(trace.composed.eps, trace.composed.delta);
  record["declared"] = budget_json(trace.declared.eps, trace.declared.delta);
  record["risk_trace"] = risks;
  record["risk_average"] = empirical_risk(problem, data, trace.average);
  record["average"] = trace.average;
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

void register_sgd(CLI::App& app) {
  auto args = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand(
      "sgd", "projected SGD on a quadratic fit driven by the private oracle");
  sub->add_option("--data", args->data, "dataset file")->required();
  sub->add_option("--eps", args->eps, "total budget across all calls");
  sub->add_option("--delta", args->delta);
  sub->add_option("--alpha", args->alpha, "per-call failure probability");
  sub->add_option("--iterations", args->iterations)->required();
  sub->add_option("--pilot-calls", args->pilot_calls);
  sub->add_option("--abort-fraction", args->abort_fraction);
  sub->add_option("--curvature", args->curvature);
  sub->add_option("--domain-radius", args->domain_radius);
  sub->add_option("--data-radius", args->data_radius);
  sub->add_option("--smooth", args->smooth_override,
                  "override the declared smoothness (step 1/H for --exact)");
  sub->add_option("--mean-concentration", args->mean_concentration);
  sub->add_option("--radius-constant", args->radius_constant);
  sub->add_option("--k-margin", args->k_margin);
  sub->add_option("--k", args->k_override, "force the oracle block split");
  sub->add_option("--run-multiplier", args->run_multiplier);
  sub->add_option("--threshold-constant", args->threshold_constant);
  sub->add_option("--seed", args->seed);
  sub->add_flag("--exact", args->exact, "non-private baseline, step 1/H");
  sub->add_option("--out", args->out, "record file, - for stdout");
  sub->add_flag("--timings", args->timings,
                "include wall time (breaks byte-identical reruns)");
  sub->callback([args] { run(*args); });
}

}  // namespace cli
