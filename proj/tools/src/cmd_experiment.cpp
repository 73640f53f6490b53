#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "commands.hpp"
#include "engines.hpp"
#include "records.hpp"
#include "userdp/dataset_io.hpp"
#include "userdp/optimizer.hpp"
#include "userdp/parallel.hpp"
#include "userdp/version.hpp"

namespace cli {

using namespace userdp;

namespace {

struct GridPoint {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  double eps = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double rho = 0.0;
  double corrupt = 0.0;
};

struct Plan {
  std::string kind;
  std::vector<GridPoint> grid;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::string out;

  // shared estimator knobs
  EngineConfig cfg;
  std::string family = "uniform_ball";
  std::vector<double> probs;

  // corruption knobs
  std::string corrupt_strategy = "far_cluster";
  std::vector<double> corrupt_target;
  double scatter_radius = 1.0;

  // sgd knobs
  std::size_t iterations = 0;
  std::size_t pilot_calls = 10;
  double abort_fraction = 0.1;
  double curvature = 1.0;
  double domain_radius = 1.0;
  double data_radius = 1.0;

  json echo;  // effective spec, written into the result header
};

struct Args {
  std::string spec_path;
  std::size_t trials_override = 0;
  std::uint64_t seed_override = 0;
  bool has_seed_override = false;
  std::string out_override;
  unsigned threads = 0;
  bool timings = false;
};

struct TrialResult {
  std::string line;          // finished JSONL record
  std::string outcome;       // accepted / garbage1 / garbage2 / error
  double error = std::nan(""); // error_l2, error_tv, or sgd risk
};

template <typename T>
std::vector<T> axis(const json& grid, const char* name, T fallback) {
  if (!grid.contains(name)) return {fallback};
  const auto values = grid[name].get<std::vector<T>>();
  if (values.empty()) {
    throw std::invalid_argument(std::string("experiment: empty grid axis ") +
                                name);
  }
  return values;
}

Plan load_plan(const Args& args) {
  std::ifstream in(args.spec_path, std::ios::binary);
  if (!in) throw IoError("cannot open spec file: " + args.spec_path);
  json spec;
  try {
    in >> spec;
  } catch (const json::exception& e) {
    throw IoError("bad spec file " + args.spec_path + ": " + e.what());
  }

  Plan plan;
  plan.kind = spec.value("kind", std::string());
  if (plan.kind != "mean_estimation" && plan.kind != "distribution_learning" &&
      plan.kind != "robustness_sweep" && plan.kind != "sgd") {
    throw std::invalid_argument("experiment: unknown kind '" + plan.kind + "'");
  }
  plan.trials = args.trials_override > 0
                    ? args.trials_override
                    : spec.value("trials", std::size_t(1));
  if (plan.trials == 0) {
    throw std::invalid_argument("experiment: trials must be >= 1");
  }
  plan.seed = args.has_seed_override ? args.seed_override
                                     : spec.value("seed", std::uint64_t(1));
  plan.out = !args.out_override.empty() ? args.out_override
                                        : spec.value("output", std::string());
  if (plan.out.empty()) {
    throw std::invalid_argument("experiment: no output prefix");
  }

  const json grid = spec.value("grid", json::object());
  const auto ns = axis<std::size_t>(grid, "n", 100);
  const auto ms = axis<std::size_t>(grid, "m", 1);
  const auto ds = axis<std::size_t>(grid, "d", 1);
  const auto epss = axis<double>(grid, "eps", 0.3);
  const auto deltas = axis<double>(grid, "delta", 1e-4);
  const auto alphas = axis<double>(grid, "alpha", 0.1);
  const auto rhos = axis<double>(grid, "rho", 0.0);
  const auto corrupts = axis<double>(grid, "corrupt", 0.0);
  for (std::size_t n : ns)
    for (std::size_t m : ms)
      for (std::size_t d : ds)
        for (double eps : epss)
          for (double delta : deltas)
            for (double alpha : alphas)
              for (double rho : rhos)
                for (double corrupt : corrupts) {
                  plan.grid.push_back(
                      {n, m, d, eps, delta, alpha, rho, corrupt});
                }

  plan.cfg.engine = spec.value("engine", std::string("user"));
  plan.cfg.r = spec.value("r", 1.0);
  plan.cfg.mean_concentration = spec.value("mean_concentration", 10.0);
  plan.cfg.radius_constant = spec.value("radius_constant", 2.0);
  plan.cfg.k_margin = spec.value("k_margin", 3.0);
  plan.cfg.k_override = spec.value("k_override", std::size_t(0));
  plan.cfg.amplified_blocks = spec.value("amplified_blocks", false);
  plan.cfg.run_multiplier = spec.value("run_multiplier", 18.0);
  plan.cfg.threshold_constant = spec.value("threshold_constant", 12.0);
  plan.cfg.project = spec.value("project", true);
  plan.family = spec.value("family", std::string("uniform_ball"));
  plan.probs = spec.value("probs", std::vector<double>());
  plan.corrupt_strategy =
      spec.value("corrupt_strategy", std::string("far_cluster"));
  plan.corrupt_target = spec.value("corrupt_target", std::vector<double>());
  plan.scatter_radius = spec.value("scatter_radius", 1.0);
  plan.iterations = spec.value("iterations", std::size_t(0));
  plan.pilot_calls = spec.value("pilot_calls", std::size_t(10));
  plan.abort_fraction = spec.value("abort_fraction", 0.1);
  plan.curvature = spec.value("curvature", 1.0);
  plan.domain_radius = spec.value("domain_radius", 1.0);
  plan.data_radius = spec.value("data_radius", plan.cfg.r);
  if (plan.kind == "sgd" && plan.iterations == 0) {
    throw std::invalid_argument("experiment: sgd kind needs iterations");
  }

  json echo = spec;
  echo["kind"] = plan.kind;
  echo["trials"] = plan.trials;
  echo["seed"] = plan.seed;
  echo["output"] = plan.out;
  plan.echo = std::move(echo);
  return plan;
}

json trial_base(const Plan& plan, std::size_t gi, std::size_t trial,
                std::uint64_t seed) {
  const GridPoint& g = plan.grid[gi];
  json j;
  j["record"] = "trial";
  j["grid"] = gi;
  j["trial"] = trial;
  j["seed"] = seed;
  j["n"] = g.n;
  j["m"] = g.m;
  j["d"] = g.d;
  j["eps"] = g.eps;
  j["delta"] = g.delta;
  j["alpha"] = g.alpha;
  j["rho"] = g.rho;
  j["corrupt"] = g.corrupt;
  return j;
}

TrialResult run_mean_trial(const Plan& plan, std::size_t gi,
                           std::size_t trial) {
  const GridPoint& g = plan.grid[gi];
  const std::uint64_t base = derive_seed(plan.seed, {gi, trial});

  DataSpec data_spec;
  data_spec.n = g.n;
  data_spec.m = g.m;
  data_spec.d = g.d;
  data_spec.family = family_from_name(plan.family);
  data_spec.r = plan.cfg.r;
  data_spec.rho = g.rho;
  data_spec.seed = derive_seed(base, {0});
  UserDataset data = generate(data_spec);

  std::size_t corrupted = 0;
  if (g.corrupt > 0.0) {
    AdversarySpec adv;
    adv.fraction = g.corrupt;
    adv.strategy = adversary_from_name(plan.corrupt_strategy);
    adv.target = plan.corrupt_target;
    adv.scatter_radius = plan.scatter_radius;
    adv.seed = derive_seed(base, {1});
    corrupted = corrupt(data, adv).size();
  }

  EngineConfig cfg = plan.cfg;
  cfg.eps = g.eps;
  cfg.delta = g.delta;
  cfg.alpha = g.alpha;
  RandomStream rng(derive_seed(base, {2}));
  const EngineResult engine = run_real_engine(data, cfg, rng);

  TrialResult result;
  result.outcome = outcome_name(engine.outcome.kind);
  json record = trial_base(plan, gi, trial, base);
  record["corrupted_users"] = corrupted;
  record["outcome"] = result.outcome;
  record["rounds"] = engine.outcome.rounds;
  record["ledger"] = engine.ledger;
  if (engine.outcome.is_accepted()) {
    // The clean population mean is the origin regardless of corruption.
    result.error = l2_norm(engine.outcome.point);
    record["error_l2"] = result.error;
  }
  result.line = record.dump();
  return result;
}

TrialResult run_distribution_trial(const Plan& plan, std::size_t gi,
                                   std::size_t trial) {
  const GridPoint& g = plan.grid[gi];
  const std::uint64_t base = derive_seed(plan.seed, {gi, trial});

  DataSpec data_spec;
  data_spec.n = g.n;
  data_spec.m = g.m;
  data_spec.d = g.d;
  data_spec.family = Family::kDiscrete;
  data_spec.probs = plan.probs;
  data_spec.seed = derive_seed(base, {0});
  const DiscreteSamples data = generate_discrete(data_spec);

  EngineConfig cfg = plan.cfg;
  cfg.engine = "user";
  cfg.eps = g.eps;
  cfg.delta = g.delta;
  cfg.alpha = g.alpha;
  cfg.r = 1.0;
  RandomStream rng(derive_seed(base, {2}));
  const EngineResult engine = run_discrete_engine(data, cfg, rng);

  TrialResult result;
  result.outcome = outcome_name(engine.outcome.kind);
  json record = trial_base(plan, gi, trial, base);
  record["outcome"] = result.outcome;
  record["rounds"] = engine.outcome.rounds;
  record["ledger"] = engine.ledger;
  if (engine.outcome.is_accepted()) {
    result.error = total_variation(engine.outcome.point, plan.probs);
    record["error_tv"] = result.error;
  }
  result.line = record.dump();
  return result;
}

TrialResult run_sgd_trial(const Plan& plan, std::size_t gi,
                          std::size_t trial) {
  const GridPoint& g = plan.grid[gi];
  const std::uint64_t base = derive_seed(plan.seed, {gi, trial});

  DataSpec data_spec;
  data_spec.n = g.n;
  data_spec.m = g.m;
  data_spec.d = g.d;
  data_spec.family = family_from_name(plan.family);
  data_spec.r = plan.data_radius;
  data_spec.rho = g.rho;
  data_spec.seed = derive_seed(base, {0});
  const UserDataset data = generate(data_spec);

  const ConvexProblem problem = make_quadratic_problem(
      g.d, plan.domain_radius, plan.curvature, plan.data_radius);

  SgdParams params;
  params.eps = g.eps;
  params.delta = g.delta;
  params.alpha = g.alpha;
  params.iterations = plan.iterations;
  params.pilot_calls = plan.pilot_calls;
  params.abort_garbage_fraction = plan.abort_fraction;
  params.oracle.mean_concentration = plan.cfg.mean_concentration;
  params.oracle.block.radius_constant = plan.cfg.radius_constant;
  params.oracle.block.k_margin = plan.cfg.k_margin;
  params.oracle.block.k_override = plan.cfg.k_override;
  params.oracle.block.run_multiplier = plan.cfg.run_multiplier;
  params.oracle.block.threshold_constant = plan.cfg.threshold_constant;
  RandomStream rng(derive_seed(base, {2}));
  const SgdTrace trace = private_sgd(problem, data, params, rng);

  TrialResult result;
  result.outcome = trace.aborted ? "garbage2" : "accepted";
  result.error = empirical_risk(problem, data, trace.average);

  json record = trial_base(plan, gi, trial, base);
  record["outcome"] = result.outcome;
  record["aborted"] = trace.aborted;
  record["steps_run"] = trace.steps_run;
  record["garbage_steps"] = trace.garbage_steps;
  record["risk_average"] = result.error;
  record["composed"] = budget_json(trace.composed.eps, trace.composed.delta);
  record["schedule"] = json{{"eps_step", trace.schedule.eps_step},
                            {"delta_step", trace.schedule.delta_step},
                            {"units", trace.schedule.units}};
  result.line = record.dump();
  return result;
}

TrialResult run_trial(const Plan& plan, std::size_t gi, std::size_t trial) {
  if (plan.kind == "distribution_learning") {
    return run_distribution_trial(plan, gi, trial);
  }
  if (plan.kind == "sgd") return run_sgd_trial(plan, gi, trial);
  return run_mean_trial(plan, gi, trial);
}

void write_summary(const Plan& plan, const std::vector<TrialResult>& results,
                   std::ostream& out) {
  out << "grid,n,m,d,eps,delta,alpha,rho,corrupt,trials,accepted,garbage1,"
         "garbage2,failed,err_q10,err_med,err_q90\n";
  for (std::size_t gi = 0; gi < plan.grid.size(); ++gi) {
    const GridPoint& g = plan.grid[gi];
    std::size_t accepted = 0;
    std::size_t garbage1 = 0;
    std::size_t garbage2 = 0;
    std::size_t failed = 0;
    std::vector<double> errors;
    for (std::size_t t = 0; t < plan.trials; ++t) {
      const TrialResult& r = results[gi * plan.trials + t];
      if (r.outcome == "accepted") {
        ++accepted;
        errors.push_back(r.error);
      } else if (r.outcome == "garbage1") {
        ++garbage1;
      } else if (r.outcome == "garbage2") {
        ++garbage2;
      } else {
        ++failed;
      }
    }
    std::sort(errors.begin(), errors.end());
    out << gi << ',' << g.n << ',' << g.m << ',' << g.d << ','
        << fmt17(g.eps) << ',' << fmt17(g.delta) << ',' << fmt17(g.alpha)
        << ',' << fmt17(g.rho) << ',' << fmt17(g.corrupt) << ','
        << plan.trials << ',' << accepted << ',' << garbage1 << ','
        << garbage2 << ',' << failed << ',' << fmt17(quantile(errors, 0.1))
        << ',' << fmt17(quantile(errors, 0.5)) << ','
        << fmt17(quantile(errors, 0.9)) << '\n';
  }
}

void run(const Args& args) {
  const Plan plan = load_plan(args);
  const std::size_t total = plan.grid.size() * plan.trials;

  std::vector<TrialResult> results(total);
  parallel_for(
      total,
      [&](std::size_t idx) {
        const std::size_t gi = idx / plan.trials;
        const std::size_t trial = idx % plan.trials;
        const auto started = std::chrono::steady_clock::now();
        try {
          results[idx] = run_trial(plan, gi, trial);
        } catch (const std::exception& e) {
          // A failed point is a record, not an abort; the sweep continues.
          json record = trial_base(plan, gi, trial,
                                   derive_seed(plan.seed, {gi, trial}));
          record["outcome"] = "error";
          record["error_tag"] = e.what();
          results[idx].outcome = "error";
          results[idx].line = record.dump();
        }
        if (args.timings) {
          json record = json::parse(results[idx].line);
          record["elapsed_ms"] =
              std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - started)
                  .count();
          results[idx].line = record.dump();
        }
      },
      args.threads);

  OutputSink lines(plan.out + ".jsonl");
  json header;
  header["record"] = "header";
  header["version"] = kVersion;
  header["command"] = "experiment";
  header["spec"] = plan.echo;
  header["grid_points"] = plan.grid.size();
  header["trials"] = plan.trials;
  lines.stream() << header.dump() << "\n";
  for (const TrialResult& r : results) lines.stream() << r.line << "\n";

  OutputSink csv(plan.out + ".csv");
  write_summary(plan, results, csv.stream());
}

}  // namespace

void register_experiment(CLI::App& app) {
  auto args = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand(
      "experiment", "run a grid x trials sweep from a JSON spec");
  sub->add_option("--spec", args->spec_path, "experiment spec file")
      ->required();
  sub->add_option("--trials", args->trials_override,
                  "override the spec's trial count");
  sub->add_option("--seed", args->seed_override, "override the spec's seed");
  sub->add_option("--out", args->out_override,
                  "override the spec's output prefix");
  sub->add_option("--threads", args->threads,
                  "worker threads (default UDP_THREADS or hardware)");
  sub->add_flag("--timings", args->timings,
                "include wall time (breaks byte-identical reruns)");
  sub->callback([args, sub] {
    args->has_seed_override = sub->count("--seed") > 0;
    run(*args);
  });
}

}  // namespace cli
