// SPDX-License-Identifier: Apache-2.0
//
// Command line driver.  `run` executes an experiment spec and writes the
// sweep CSV (plus the fixed-baseline CSV when requested); `verify` runs
// the closed-form engine and checks the golden (M, B) pairs recorded in
// the spec, exiting nonzero on any mismatch.

#include <CLI11.hpp>
#include <cogfb/experiment.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"feedback-utility experiments for cognitive multiuser MISO"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir = ".";
  std::int64_t trials = -1;
  std::int64_t seed = -1;
  std::string engine;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--spec", spec_path, "experiment spec file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "output directory (default .)");
    cmd->add_option("--trials", trials, "override the spec trial count");
    cmd->add_option("--seed", seed, "override the spec seed");
    cmd->add_option("--engine", engine, "override the engine")
        ->check(CLI::IsMember({"closed", "mc", "both"}));
  };

  CLI::App* run = app.add_subcommand("run", "run a spec and write CSV output");
  add_common(run);
  CLI::App* verify =
      app.add_subcommand("verify", "check golden (M, B) pairs with the "
                                   "closed-form engine");
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    cogfb::ExperimentSpec spec = cogfb::load_spec(spec_path);
    if (trials > 0) spec.trials = trials;
    if (seed >= 0) spec.seed = static_cast<std::uint64_t>(seed);
    if (!engine.empty()) spec.engine = cogfb::parse_engine(engine);
    if (verify->parsed()) spec.engine = cogfb::Engine::closed;
    spec.validate();

    std::cout << "experiment " << spec.name << ": sweep " << spec.sweep
              << " over " << spec.values.size() << " points, engine "
              << cogfb::engine_name(spec.engine) << "\n";

    cogfb::ExperimentResult result = cogfb::run_experiment(spec);

    for (const auto& row : result.rows) {
      std::cout << "  value " << cogfb::detail::format_double(row.sweep_value)
                << ": (M, B) = (" << row.m_exh << ", " << row.b_exh
                << "), utility " << cogfb::detail::format_double(row.fuf_exh);
      if (spec.engine != cogfb::Engine::closed)
        std::cout << ", sim rate "
                  << cogfb::detail::format_double(row.sim_rate_mean) << " +- "
                  << cogfb::detail::format_double(row.sim_rate_stderr);
      std::cout << "\n";
      if (row.fuf_exh < 0.0)
        std::cout << "  warning: negative utility at value "
                  << cogfb::detail::format_double(row.sweep_value)
                  << " (feedback price exceeds the achievable rate)\n";
    }

    std::filesystem::create_directories(out_dir);
    std::string csv_path = out_dir + "/" + spec.name + ".csv";
    cogfb::write_file(csv_path, cogfb::to_csv(result));
    std::cout << "wrote " << csv_path << "\n";
    if (spec.baseline) {
      std::string baseline_path = out_dir + "/" + spec.name + "_baseline.csv";
      cogfb::write_file(baseline_path, cogfb::baseline_to_csv(result));
      std::cout << "wrote " << baseline_path << "\n";
    }

    if (verify->parsed()) {
      auto failures = cogfb::verify_goldens(result);
      if (failures.empty()) {
        std::cout << "verify: all " << result.rows.size() << " points match\n";
      } else {
        for (const auto& f : failures) std::cout << "verify FAIL: " << f << "\n";
        return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
