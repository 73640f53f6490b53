#pragma once

#include "CLI11.hpp"

namespace cli {

// Each command registers its subcommand and flags; work happens in the
// CLI11 callback. Errors are thrown: userdp::IoError for missing or
// malformed files, std::invalid_argument for bad configuration. main()
// maps them to the exit-code contract (2 and 3; garbage outcomes are 0).
void register_generate(CLI::App& app);
void register_estimate(CLI::App& app);
void register_experiment(CLI::App& app);
void register_audit(CLI::App& app);
void register_sgd(CLI::App& app);

}  // namespace cli
