#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include "dilute/asymptotics.hpp"
#include "dilute/bogoliubov.hpp"
#include "dilute/constants.hpp"
#include "dilute/errors.hpp"
#include "dilute/logft.hpp"

namespace dilute::cli {

namespace {

double flag(bool ok) { return ok ? 1.0 : 0.0; }

double resolve_nu(const RunConfig& cfg, const ScatteringSolution* sol) {
  if (cfg.nu_override) return *cfg.nu_override;
  return sol ? sol->nu() : 8.0 * kPi;
}

}  // namespace

void add_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--potential", cfg.potential, "bump or table")->check(CLI::IsMember({"bump", "table"}));
  app.add_option("--amplitude", cfg.amplitude, "bump amplitude");
  app.add_option("--radius", cfg.radius, "bump support radius");
  app.add_option("--table", cfg.table_path, "potential table with 'r V' rows");
  app.add_option("--mollify", cfg.mollify, "mollifier half-width for tables");
  app.add_option("--rho-ref", cfg.rho_ref, "density fixing b for the raw potential");
  app.add_option("--panels", cfg.scatter.panels, "Gauss-Legendre panels on [0, R]");
  app.add_option("--p-table", cfg.scatter.p_table, "Fourier tables cover p <= p_table / R");
  app.add_option("--ode-tol", cfg.scatter.ode_tol);
  app.add_option("--fit-tol", cfg.scatter.fit_tol, "relative residual allowed in the log fit");
  app.add_option("--fit-points", cfg.scatter.fit_points);
  app.add_option("--fit-lo", cfg.scatter.fit_lo, "log fit window start in units of R");
  app.add_option("--fit-hi", cfg.scatter.fit_hi, "log fit window end in units of R");

  app.add_option("--rho", cfg.rho, "density");
  app.add_option("--temperature", cfg.temperature, "temperature (energy requires 0)");
  app.add_option_function<double>("--nu", [&cfg](const double& v) { cfg.nu_override = v; },
                                  "override nu = V^(0)/b");
  app.add_option("--b", cfg.b_list, "dilution parameter (repeatable)");
  app.add_option("--d-grid", cfg.d_grid, "d values for cnu (repeatable)");
  app.add_option("--d-max", cfg.d_max, "upper end of the d search");
  app.add_option("--t0-fraction", cfg.t0_fraction, "t0 = -fraction * rho0");
  app.add_flag("--with-e1", cfg.with_e1, "also compute E1 in energy (double quadrature)");

  app.add_option("--kappa", cfg.kappa, "scaling factors for the P check (repeatable)");
  app.add_option("--corrupt-eps", cfg.corrupt_eps, "perturb the cutoff by this relative amount");

  app.add_option("--ideal-temperature", cfg.ideal_temperature);
  app.add_option("--mu", cfg.mu, "chemical potential for the 2D ideal gas");
  app.add_option("--ideal-rho", cfg.ideal_rho, "density for the 3D ideal gas free energy");

  app.add_option("--abs-tol", cfg.quad.abs_tol);
  app.add_option("--rel-tol", cfg.quad.rel_tol);
  app.add_option("--max-subdivisions", cfg.quad.max_subdivisions);
  app.add_option("--tail-cut", cfg.quad.tail_cut);
  app.add_option("--tail-order", cfg.quad.tail_order);

  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out_path, "output file (default stdout)");
}

void validate(const RunConfig& cfg) {
  cfg.quad.validate();
  for (double b : cfg.b_list)
    if (!(b > 0 && b < 1)) throw InvalidArgument("b values must lie in (0,1)");
  for (double d : cfg.d_grid)
    if (!(d >= 0)) throw NegativeD("d grid entries must be nonnegative");
  if (!(cfg.rho > 0)) throw InvalidArgument("rho must be positive");
  if (!(cfg.temperature >= 0)) throw InvalidArgument("temperature must be nonnegative");
  if (cfg.nu_override && !(*cfg.nu_override > 0)) throw InvalidArgument("nu must be positive");
  if (!(cfg.d_max > 0)) throw InvalidArgument("d_max must be positive");
  for (double k : cfg.kappa)
    if (!(k > 0)) throw InvalidArgument("kappa must be positive");
  if (cfg.potential == "table" && cfg.table_path.empty()) throw InvalidArgument("--table is required");
}

PotentialSpec make_potential(const RunConfig& cfg) {
  if (cfg.potential == "table") return load_potential_table(cfg.table_path, cfg.mollify);
  return smooth_bump(cfg.amplitude, cfg.radius);
}

CommandResult cmd_scatter(const RunConfig& cfg) {
  const ScatteringSolution sol = solve_scattering(make_potential(cfg), cfg.rho_ref, cfg.quad, cfg.scatter);
  const CurvatureFit cf = check_curvature(sol, cfg.quad);
  double vmin = sol.vhat0;
  for (int i = 0; i <= 400; ++i) vmin = std::min(vmin, sol.vhat(sol.p_cut * i / 400.0));

  CommandResult r;
  r.table.columns = {"a", "b", "epsilon", "rho_ref", "vhat0", "nu", "vw0_over_8pib", "half_vw0_over_2pi",
                     "fit_residual", "curvature_v", "curvature_vw", "curvature_window", "vhat_min"};
  const double ratio = sol.vwhat0 / (8.0 * kPi * sol.b);
  const double half = sol.half_vw0_integral / kTwoPi;
  r.table.add_row({sol.a, sol.b, sol.epsilon, sol.rho_ref, sol.vhat0, sol.nu(), ratio, half, sol.fit_residual,
                   cf.curvature_v, cf.curvature_vw, cf.window, vmin});
  r.pass = std::abs(ratio - 1) <= 1e-8 && std::abs(half - 1) <= 1e-8;
  if (!r.pass) r.notes.push_back("scattering identities off by more than 1e-8");
  if (vmin < 0) r.notes.push_back("note: V^ takes negative values (min " + std::to_string(vmin) + ")");
  return r;
}

CommandResult cmd_cnu(const RunConfig& cfg) {
  const double nu = resolve_nu(cfg, nullptr);
  std::vector<double> grid = cfg.d_grid;
  if (grid.empty()) {
    grid.push_back(0.0);
    for (int i = 0; i < 199; ++i) grid.push_back(1e-3 * std::pow(cfg.d_max / 1e-3, i / 198.0));
  }
  CommandResult r;
  r.table.columns = {"kind", "nu", "d", "c_nu"};
  for (double d : grid) r.table.add_row({std::string("grid"), nu, d, c_nu_of_d(nu, d)});
  const CnuMinimum m = minimize_cnu(nu, cfg.d_max);
  r.table.add_row({std::string("argmin"), nu, m.d_star, m.value});
  r.pass = m.increasing_at_cap;
  if (!r.pass) r.notes.push_back("C_nu is not increasing at d_max; the minimum may lie beyond the cap");
  return r;
}

bool residual_trend_ok(const std::vector<double>& ratios) {
  if (ratios.size() < 2) return true;
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (!(ratios[i] < ratios[i - 1])) return false;
  return ratios.back() <= 0.5 * ratios.front();
}

CommandResult cmd_energy(const RunConfig& cfg) {
  if (cfg.temperature != 0.0) throw InvalidArgument("energy runs the T = 0 expansion; set temperature = 0");
  std::vector<double> bs = cfg.b_list;
  if (bs.empty()) bs = {0.05, 0.02, 0.01, 0.005};
  CommandResult r;
  for (std::size_t i = 1; i < bs.size(); ++i)
    if (!(bs[i] < bs[i - 1])) {
      r.notes.push_back("warning: b list is not strictly decreasing");
      break;
    }
  const ScatteringSolution base = solve_scattering(make_potential(cfg), cfg.rho_ref, cfg.quad, cfg.scatter);
  r.table.columns = {"b",        "nu",          "f_min",    "leading",       "log_term",  "const_term",
                     "residual", "residual_ratio", "d_star", "d_star_numeric", "rho0_over_rho",
                     "rho0_over_rho_pred", "e1", "e2", "e3", "e4", "a1_bound", "a23_bound"};
  std::vector<double> ratios;
  for (double b : bs) {
    const ScatteringSolution sol = with_b(base, b, cfg.rho);
    ThermoPoint tp;
    tp.rho = cfg.rho;
    tp.b = b;
    tp.nu = resolve_nu(cfg, &sol);
    const ExpansionResult e = ground_state_expansion(tp, sol, cfg.quad, cfg.d_max, cfg.t0_fraction);
    const MinimizerState st = solve_condensate(tp, e.d_star_numeric, sol, cfg.quad, cfg.t0_fraction);
    const Diagnostics dg = error_diagnostics(tp, st, cfg.quad, cfg.with_e1);
    const double e1 = cfg.with_e1 ? std::abs(dg.e1) : std::nan("");
    r.table.add_row({b, tp.nu, e.f_min, e.leading, e.log_term, e.const_term, e.residual, e.residual_ratio,
                     e.d_star, e.d_star_numeric, e.rho0 / cfg.rho, 1.0 / (1.0 + c_of_d(e.d_star_numeric) * b), e1,
                     std::abs(dg.e2), std::abs(dg.e3), std::abs(dg.e4), dg.a1_bound, dg.a23_bound});
    ratios.push_back(e.residual_ratio);
  }
  r.pass = residual_trend_ok(ratios);
  if (!r.pass) r.notes.push_back("residual ratio is not strictly decreasing to at most half its first value");
  return r;
}

CommandResult cmd_logft(const RunConfig& cfg) {
  CommandResult r;
  r.table.columns = {"check", "param_a", "param_b", "residual", "tolerance", "pass"};
  auto row = [&r](const std::string& name, double pa, double pb, double res, double tol) {
    const bool ok = std::abs(res) <= tol;
    r.table.add_row({name, pa, pb, res, tol, flag(ok)});
    if (!ok) {
      r.pass = false;
      r.notes.push_back(name + " failed: residual " + std::to_string(res));
    }
  };
  row("c0_integral", 0.0, 0.0, c0_check(cfg.quad) - c0_exact(), 1e-8);
  row("c0_distributions", 0.0, 0.0, c0_from_distributions(cfg.quad) - c0_exact(), 1e-8);
  for (double b : {0.01, 0.05})
    for (double a : {0.3, 1.0}) {
      const double eps = epsilon_of(a, b) * (1.0 + cfg.corrupt_eps);
      row("delta_cancellation", b, a, delta_cancellation_check(a, b, eps), 1e-14);
    }
  RadialFunction g{[](double p) { return std::exp(-0.5 * p * p); }, 1.0, Endpoint::Regular};
  for (double k : cfg.kappa) row("p_scaling", k, 0.0, p_scaling_residual(g, k, cfg.quad), 1e-7);
  return r;
}

CommandResult cmd_ideal(const RunConfig& cfg) {
  const double T = cfg.ideal_temperature;
  CommandResult r;
  r.table.columns = {"check", "temperature", "input", "value", "oracle", "residual", "tolerance", "pass"};
  auto row = [&r](const std::string& name, double t, double in, double v, double o, double tol) {
    const double res = std::abs(v - o) / std::max(std::abs(o), 1e-300);
    const bool ok = res <= tol;
    r.table.add_row({name, t, in, v, o, res, tol, flag(ok)});
    if (!ok) {
      r.pass = false;
      r.notes.push_back(name + " failed: relative residual " + std::to_string(res));
    }
  };
  const double mu = cfg.mu;
  RadialFunction bose{[mu, T](double p) { return 1.0 / std::expm1((p * p - mu) / T); }, std::sqrt(T),
                      Endpoint::Regular};
  if (!(mu < 0)) throw PositiveMu("the 2D density check needs mu < 0");
  row("rho_2d", T, mu, ideal_gas_2d(mu, T), integrate_radial_2d(bose, 0.0, kInf, cfg.quad).value, 1e-8);
  row("mu_2d_inverse", T, ideal_gas_2d(mu, T), ideal_gas_2d_mu(ideal_gas_2d(mu, T), T), mu, 1e-10);
  row("rho_fc_3d", T, 0.0, rho_fc_3d(T), ideal_density_3d(0.0, T, cfg.quad), 1e-6);
  // sup over mu against the Legendre point from the density root
  const IdealGas3d g3 = ideal_gas_3d(T, cfg.ideal_rho, cfg.quad);
  const double mu3 = ideal_mu_3d(cfg.ideal_rho, T, cfg.quad);
  row("f0_3d", T, cfg.ideal_rho, g3.f0, mu3 * cfg.ideal_rho + ideal_pressure_3d(mu3, T, cfg.quad), 1e-8);
  return r;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Dilute 2D Bose gas: scattering, asymptotic constants and the Bogoliubov functional"};
  app.fallthrough();
  RunConfig cfg;
  app.set_config("--config", "", "key = value configuration file");
  add_options(app, cfg);
  auto* scatter = app.add_subcommand("scatter", "scattering length, b, eps and Fourier identities");
  auto* cnu = app.add_subcommand("cnu", "C_nu(d) curve and its minimum");
  auto* energy = app.add_subcommand("energy", "ground-state expansion convergence table");
  auto* logft = app.add_subcommand("logft", "distributional Fourier transform checks");
  auto* ideal = app.add_subcommand("ideal", "ideal-gas reference values");
  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CommandResult res;
  try {
    validate(cfg);
    if (scatter->parsed()) res = cmd_scatter(cfg);
    if (cnu->parsed()) res = cmd_cnu(cfg);
    if (energy->parsed()) res = cmd_energy(cfg);
    if (logft->parsed()) res = cmd_logft(cfg);
    if (ideal->parsed()) res = cmd_ideal(cfg);
  } catch (const InvalidArgument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const InvalidPotential& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const NegativeD& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const PositiveMu& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const DensityTooHigh& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      std::cerr << "cannot open " << cfg.out_path << "\n";
      return 2;
    }
  }
  std::ostream& out = cfg.out_path.empty() ? std::cout : file;
  if (cfg.format == "json")
    write_json(res.table, out);
  else
    write_csv(res.table, out);
  for (const auto& n : res.notes) std::cerr << n << "\n";
  return res.pass ? 0 : 1;
}

}  // namespace dilute::cli
