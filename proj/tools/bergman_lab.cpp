#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <json.hpp>

#include "bergman/errors.hpp"
#include "commands.hpp"

namespace {

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const bergman::DomainError*>(&e)) return "domain";
  if (dynamic_cast<const bergman::DivergenceError*>(&e)) return "divergence";
  if (dynamic_cast<const bergman::PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const bergman::MismatchError*>(&e)) return "mismatch";
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return "config";
  return "internal";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for Toeplitz operators on vector-valued Bergman-type spaces"};
  app.set_version_flag("--version", std::string(lab::kToolVersion));

  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int threads = 1;
  double resolution_scale = 1.0;

  std::vector<std::string> names(lab::command_names().begin(), lab::command_names().end());
  app.add_option("command", command, "Experiment to run")->required()->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "JSON experiment configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Directory for the JSON and CSV reports");
  CLI::Option* seed_opt = app.add_option("--seed", seed, "Seed for randomized probes (overrides the config)");
  app.add_option("--threads", threads, "Threads for dense linear algebra")->check(CLI::PositiveNumber);
  app.add_option("--resolution-scale", resolution_scale, "Multiplier for quadrature orders")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    Eigen::setNbThreads(threads);
    const lab::ExperimentConfig config = lab::load_config(config_path);
    lab::RunOptions options;
    options.seed = seed_opt->count() ? seed : config.seed.value_or(options.seed);
    options.resolution_scale = resolution_scale;
    options.threads = threads;
    const lab::Report report = lab::run_command(command, config, options);
    lab::write_report(out_dir, report, config.source, options);
    std::cout << command << ": " << lab::to_string(report.status) << '\n';
    return report.status == lab::Status::Fail ? 1 : 0;
  } catch (const std::exception& e) {
    const nlohmann::json err{{"error", {{"command", command}, {"type", error_type(e)}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << '\n';
    return 2;
  }
}
