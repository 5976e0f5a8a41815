#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dilute/quadrature.hpp"

namespace dilute {

struct PotentialSpec {
  RadialFunction v;
  double support_radius = 1.0;
  std::string smoothness_note;

  // throws InvalidPotential
  void validate() const;
};

// amplitude * exp(-1 / (1 - (r/R)^2)) for r < R
PotentialSpec smooth_bump(double amplitude, double radius);

// piecewise-linear table (r_i, V_i), zero beyond the last node, then
// mollified with an even bump kernel of half-width `mollify`
PotentialSpec tabulated_potential(std::vector<double> r, std::vector<double> v,
                                  double mollify);
PotentialSpec load_potential_table(const std::string& path, double mollify);

// lambda^2 V(lambda r)
PotentialSpec rescale_potential(const PotentialSpec& pot, double lambda);

struct ScatterOptions {
  int panels = 64;          // Gauss-Legendre panels on [0, R]
  double p_table = 800.0;   // Fourier tables cover p <= p_table / R, zero beyond
  double ode_tol = 1e-13;
  double fit_tol = 1e-9;    // relative residual allowed in the log fit
  int fit_points = 64;
  double fit_lo = 2.0;      // log fit window [fit_lo R, fit_hi R]
  double fit_hi = 10.0;
};

struct FourierTable;

struct ScatteringSolution {
  double a = 0.0;
  double rho_ref = 0.0;
  double b = 0.0;
  double epsilon = 0.0;
  double support_radius = 0.0;
  double p_cut = kInf;  // V^ and Vw^ vanish identically beyond p_cut
  RadialFunction w0;
  RadialFunction w;
  RadialFunction vhat;
  RadialFunction vwhat;
  // V^(p) - V^(0) and Vw^(p) - Vw^(0) without cancellation at small p
  RadialFunction vhat_delta;
  RadialFunction vwhat_delta;
  double vhat0 = 0.0;
  double vwhat0 = 0.0;
  double curvature_v = 0.0;
  double curvature_vw = 0.0;
  double half_vw0_integral = 0.0;  // (1/2) \int V w0, should be 2 pi
  double fit_residual = 0.0;
  bool idealized = false;

  double nu() const { return vhat0 / b; }
};

ScatteringSolution solve_scattering(const PotentialSpec& pot, double rho_ref,
                                    const QuadSpec& spec,
                                    const ScatterOptions& opt = {});

// Same potential shape, rescaled by lambda so that b takes the requested
// value at density rho (a -> a / lambda; profiles follow exactly).
ScatteringSolution with_b(const ScatteringSolution& sol, double b, double rho);

// Flat profiles Vw^ = 8 pi b and V^ = nu b with a = exp(-1/(2b)) / sqrt(rho).
ScatteringSolution idealized_solution(double b, double rho, double nu);

// 2 pi \int_0^inf J0(p r) f(r) r dr for f supported in [0, support]
// (support = kInf allowed when f decays).
double fourier_radial(const RadialFunction& f, double p, double support,
                      const QuadSpec& spec);

struct CurvatureFit {
  double curvature_v = 0.0;
  double curvature_vw = 0.0;
  double residual_v = 0.0;
  double residual_vw = 0.0;
  double window = 0.0;
};

// Fits V^(p) = V^(0) + C a^2 p^2 + O(p^4) on (0, min(1/(4a), 1/R)].
CurvatureFit check_curvature(const ScatteringSolution& sol, const QuadSpec& spec);

// b = 1 / |ln(rho a^2)|; throws DensityTooHigh for rho a^2 >= 1
double b_of(double rho, double a);
double epsilon_of(double a, double b);

}  // namespace dilute
