#include <exception>
#include <iostream>

#include "cli_common.hpp"
#include "vigil/common/errors.hpp"

using namespace vigil;

int main(int argc, char** argv) {
  CLI::App app{"vigil: streaming, pipeline and drowsiness-decision benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  cli::Runner run;
  cli::add_echo_server(app, run);
  cli::add_stream_bench(app, run);
  cli::add_pipeline_bench(app, run);
  cli::add_detect(app, run);
  cli::add_optimize(app, run);
  cli::add_vote(app, run);
  cli::add_gen(app, run);
  cli::add_report(app, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kOk : cli::kUsage;
  }

  try {
    return run();
  } catch (const cli::UsageError& e) {
    std::cerr << "vigil: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const DegenerateDataError& e) {
    std::cerr << "vigil: degenerate data: " << e.what() << "\n";
    return cli::kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "vigil: " << e.what() << "\n";
    return cli::kRuntime;
  }
}
