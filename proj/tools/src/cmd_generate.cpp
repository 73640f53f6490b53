#include <memory>
#include <string>

#include "commands.hpp"
#include "records.hpp"
#include "userdp/dataset_io.hpp"
#include "userdp/synthdata.hpp"
#include "userdp/version.hpp"

namespace cli {

using namespace userdp;

namespace {

struct Args {
  std::string out;
  std::string family = "uniform_ball";
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  double r = 1.0;
  double rho = 0.0;
  std::vector<double> mean;
  std::vector<double> probs;
  std::uint64_t seed = 1;
};

void run(const Args& args) {
  DataSpec spec;
  spec.n = args.n;
  spec.m = args.m;
  spec.d = args.d;
  spec.family = family_from_name(args.family);
  spec.r = args.r;
  spec.rho = args.rho;
  spec.mean = args.mean;
  spec.probs = args.probs;
  spec.seed = args.seed;
  spec.validate();

  Point true_mean;
  std::string kind;
  if (spec.family == Family::kDiscrete) {
    const DiscreteSamples data = generate_discrete(spec);
    save_dataset(args.out, data);
    true_mean = spec.probs;  // the mean of the one-hot encoding
    kind = "categorical";
  } else {
    const UserDataset data = generate(spec);
    save_dataset(args.out, data);
    true_mean = spec.mean.empty() ? Point(spec.d, 0.0) : spec.mean;
    kind = "real";
  }
  write_sidecar(args.out, spec_json(spec), true_mean);

  json record;
  record["version"] = kVersion;
  record["command"] = "generate";
  record["out"] = args.out;
  record["kind"] = kind;
  record["spec"] = spec_json(spec);
  std::cout << record.dump() << "\n";
}

}  // namespace

void register_generate(CLI::App& app) {
  auto args = std::make_shared<Args>();
  CLI::App* sub = app.add_subcommand("generate", "write a synthetic dataset");
  sub->add_option("--out", args->out, "dataset file to write")->required();
  sub->add_option("--family", args->family,
                  "uniform_ball | gaussian_clipped | point_mass | discrete");
  sub->add_option("--n", args->n, "users")->required();
  sub->add_option("--m", args->m, "samples per user")->required();
  sub->add_option("--d", args->d, "dimensions / categories")->required();
  sub->add_option("--r", args->r, "sample radius");
  sub->add_option("--rho", args->rho, "user-center spread, in r/sqrt(m) units");
  sub->add_option("--mean", args->mean, "population mean (default origin)");
  sub->add_option("--probs", args->probs, "category probabilities (discrete)");
  sub->add_option("--seed", args->seed);
  sub->callback([args] { run(*args); });
}

}  // namespace cli
