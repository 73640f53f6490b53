#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "commands.hpp"
#include "userdp/dataset_io.hpp"
#include "userdp/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"user-level private mean estimation toolkit"};
  app.set_version_flag("--version", userdp::kVersion);
  app.require_subcommand(1);

  cli::register_generate(app);
  cli::register_estimate(app);
  cli::register_experiment(app);
  cli::register_audit(app);
  cli::register_sgd(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;  // bad flags are configuration errors
  } catch (const userdp::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
