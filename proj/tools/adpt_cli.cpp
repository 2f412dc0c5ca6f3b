// Command-line runner for the validation experiments.
//
//   adpt run <config>          run the experiment named in the config
//   adpt validate <config>     check the config without computing
//   adpt list-experiments      print the registry
//
// Exit codes: 0 all checks passed, 1 some check failed, 2 invalid
// config / unknown experiment.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>

#include "adpt/experiments.hpp"
#include "adpt/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"space-adiabatic perturbation theory validation harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  long seed = 0;
  int threads = 0;

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "config file path")->required();
  run->add_option("--out-dir", out_dir, "directory for CSV / JSON outputs");
  run->add_option("--seed", seed, "sample-set seed (overridden by [samples] seed)");
  run->add_option("--threads", threads, "worker threads (default: ADPT_THREADS or all cores)");

  auto* val = app.add_subcommand("validate", "validate a config file");
  val->add_option("config", config_path, "config file path")->required();

  app.add_subcommand("list-experiments", "print the experiment registry");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list-experiments")) {
      for (const auto& name : adpt::harness::experiment_names()) std::printf("%s\n", name.c_str());
      return 0;
    }
    auto cfg = adpt::harness::Config::parse_file(config_path);
    adpt::harness::validate_config(cfg);
    if (app.got_subcommand("validate")) {
      std::printf("ok: %s\n", config_path.c_str());
      return 0;
    }
    std::filesystem::create_directories(out_dir);
    adpt::harness::RunEnv env;
    env.out_dir = out_dir;
    env.seed = static_cast<std::uint64_t>(seed);
    env.threads = adpt::effective_threads(threads);
    std::string name = cfg.get_str("experiment", "name");
    auto result = adpt::harness::run_experiment(name, cfg, env);
    for (const auto& c : result.summary.at("checks")) {
      std::printf("[%s] %s = %.6g (tol %.3g)\n", c.at("pass").get<bool>() ? "PASS" : "FAIL",
                  c.at("name").get<std::string>().c_str(), c.at("value").get<double>(),
                  c.at("tol").get<double>());
    }
    for (const auto& f : result.files) std::printf("wrote %s\n", f.c_str());
    return result.pass ? 0 : 1;
  } catch (const adpt::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
