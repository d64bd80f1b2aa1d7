#pragma once

#include <string>
#include <vector>

#include "dissipchain/model.hpp"

namespace dissipchain::cli {

enum class Command { Evolve, Steady, Sweep, Check, Reproduce };

struct GammaGrid {
  double start = 0.05;
  double stop = 0.95;
  double step = 0.05;

  std::vector<double> points() const;
};

struct RunConfig {
  Command command = Command::Evolve;
  int n_sites = 3;
  model::Boundary boundary = model::Boundary::Open;
  std::vector<double> rates{0.5, 0.5};
  std::string initial_state;  // empty on sweep means every basis state
  double t_max = 20.0;
  double dt = 0.01;
  GammaGrid gamma_grid{};
  std::string output_path;   // empty keeps the command stdout-only
  std::string output_dir = ".";
  double tol = 1e-6;
  int window = 5;
};

// Thrown by parse_args after help text has been printed.
struct HelpRequested {};

// Parses command-line words (without the program name) into a validated
// RunConfig. Values from a --config file fill every flag not given on the
// command line. Throws UsageError on any invalid input.
RunConfig parse_args(const std::vector<std::string>& args);

// Executes one command. Numerical failures surface as exceptions.
int run(const RunConfig& config);

// Full program entry: maps UsageError to exit code 1 and NoConvergence (and
// any other runtime failure) to exit code 2.
int cli_main(int argc, const char* const* argv);

// Worker count for sweep cells: DISSIPCHAIN_THREADS when set, otherwise the
// machine parallelism.
int thread_budget();

}  // namespace dissipchain::cli
