#pragma once

#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dilute/quadrature.hpp"
#include "dilute/scattering.hpp"
#include "table.hpp"

namespace dilute::cli {

struct RunConfig {
  // potential
  std::string potential = "bump";  // bump | table
  double amplitude = 10.0;
  double radius = 1.0;
  std::string table_path;
  double mollify = 0.01;
  double rho_ref = 1e-6;
  ScatterOptions scatter;

  // thermodynamic point
  double rho = 1.0;
  double temperature = 0.0;
  std::optional<double> nu_override;
  std::vector<double> b_list;
  std::vector<double> d_grid;
  double d_max = 1e3;
  double t0_fraction = 0.0;
  bool with_e1 = false;

  // logft
  std::vector<double> kappa{2.0, 5.0};
  double corrupt_eps = 0.0;  // relative perturbation of the cutoff (negative control)

  // ideal gas
  double ideal_temperature = 1.0;
  double mu = -1.0;
  double ideal_rho = 0.02;

  QuadSpec quad;
  std::string format = "csv";
  std::string out_path;
};

struct CommandResult {
  Table table;
  bool pass = true;
  std::vector<std::string> notes;  // warnings and failed checks, for stderr
};

// Registers every RunConfig knob as a long option on app.
void add_options(CLI::App& app, RunConfig& cfg);
// Throws InvalidArgument for inconsistent settings.
void validate(const RunConfig& cfg);

PotentialSpec make_potential(const RunConfig& cfg);

CommandResult cmd_scatter(const RunConfig& cfg);
CommandResult cmd_cnu(const RunConfig& cfg);
CommandResult cmd_energy(const RunConfig& cfg);
CommandResult cmd_logft(const RunConfig& cfg);
CommandResult cmd_ideal(const RunConfig& cfg);

// strictly decreasing and last <= first / 2
bool residual_trend_ok(const std::vector<double>& ratios);

// Parses argv, runs the selected subcommand and writes the table.
// Returns 0 (pass), 1 (numeric check failed) or 2 (config/input error).
int run(int argc, const char* const* argv);

}  // namespace dilute::cli
