#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vortexlab/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical solver and verifier for the vortex equation lap w = e^w - |phi|^2 e^{-(k-1)w}"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run the pipeline described by a JSON config");
  run_cmd->add_option("config", config_path, "Config file")->required();

  std::string a_path, b_path;
  auto* cmp_cmd = app.add_subcommand("compare", "Compare the primary solutions of two configs");
  cmp_cmd->add_option("a", a_path, "First config")->required();
  cmp_cmd->add_option("b", b_path, "Second config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : vortexlab::kExitConfig;
  }

  try {
    if (*run_cmd) return vortexlab::run(vortexlab::load_config(config_path));
    const vortexlab::CompareResult r =
        vortexlab::compare(vortexlab::load_config(a_path), vortexlab::load_config(b_path));
    fmt::print("{}\n", r.to_json().dump(2));
    return vortexlab::kExitOk;
  } catch (const vortexlab::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return vortexlab::kExitConfig;
  } catch (const vortexlab::PreconditionError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return vortexlab::kExitConfig;
  } catch (const vortexlab::ConvergenceError& e) {
    fmt::print(stderr, "no convergence: {}\n", e.what());
    return vortexlab::kExitNonConvergence;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
