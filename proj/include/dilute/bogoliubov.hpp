#pragma once

#include "dilute/quadrature.hpp"
#include "dilute/scattering.hpp"

namespace dilute {

struct MinimizerState {
  double rho0 = 0.0;
  double t0 = 0.0;
  double d = 0.0;  // delta = d rho0 b
  double temperature = 0.0;
  const ScatteringSolution* sol = nullptr;

  double delta() const { return d * rho0 * sol->b; }
  double coupling() const { return rho0 + t0; }
  // momentum scale sqrt(rho0 b), floored so empty condensates stay usable
  double kappa() const;
  void validate() const;
};

struct ThermoPoint {
  double rho = 1.0;
  double temperature = 0.0;
  double nu = 8.0 * 3.14159265358979323846;
  double b = 0.01;
  double vhat0() const { return nu * b; }
};

// s(beta) with beta = sqrt((1/2 + gamma)^2 - alpha^2)
double entropy_density(double gamma, double alpha);

// G(p); throws for T = 0, use dispersion_tg there
double dispersion_G(double p, const MinimizerState& st);
// T G(p) = sqrt((p^2 + delta)^2 + 2 (p^2 + delta)(rho0 + t0) Vw^(p))
double dispersion_tg(double p, const MinimizerState& st);

struct Profiles {
  RadialFunction gamma;
  RadialFunction alpha;
};
Profiles minimizer_profiles(const MinimizerState& st);

double rho_gamma(const MinimizerState& st, const QuadSpec& spec);

struct FsPieces {
  double i_less = 0.0;     // |p| <= eps part of the square-root integral
  double i_greater = 0.0;  // |p| > eps part with the counterterm folded in
  double i_one = 0.0;      // (Vw^2 - Vw(0)^2) / 4p^2 inside eps
  double thermal = 0.0;    // T (2pi)^-2 \int ln(1 - e^-G)
  double total = 0.0;      // F^s + delta \int gamma
  double split_residual = 0.0;
};

// Minimum of F^s + delta rho_gamma over the explicit family. With
// check_split the total is recomputed with the cut moved to 1.5 eps and
// the counterterm moved consistently; SplitMismatch if they disagree.
FsPieces fs_pieces(const MinimizerState& st, const QuadSpec& spec,
                   double split_factor = 1.0);
double fs_energy(const MinimizerState& st, const QuadSpec& spec,
                 bool check_split = true);

// F^sim = F^s - delta rho_gamma + 4 pi b (rho0+t0)(3 rho0 - 2 rho - t0)
//         + V^(0)(rho^2 - rho0^2)
double fsim_energy(const ThermoPoint& tp, const MinimizerState& st,
                   const QuadSpec& spec, double constraint_tol = 1e-8);

// Solves rho0 + rho_gamma(rho0) = rho for fixed d by bisection.
MinimizerState solve_condensate(const ThermoPoint& tp, double d,
                                const ScatteringSolution& sol,
                                const QuadSpec& spec, double t0_fraction = 0.0);

struct SimMinimum {
  double d_star = 0.0;
  double rho0 = 0.0;
  double f_min = 0.0;
  int evaluations = 0;
};

// inf over d in [0, d_max] of F^sim on the constrained family
SimMinimum minimize_fsim(const ThermoPoint& tp, const ScatteringSolution& sol,
                         const QuadSpec& spec, double d_max = 1e3,
                         double t0_fraction = 0.0);

struct CanonicalParts {
  double kinetic = 0.0;
  double entropy = 0.0;  // T S
  double mean_field = 0.0;
  double linear = 0.0;
  double pair_alpha = 0.0;
  double pair_gamma = 0.0;
  double total = 0.0;
  int kernel_evaluations = 0;
};

// Full canonical functional on radial (gamma, alpha); V^ taken from sol.
CanonicalParts fcan_parts(const ThermoPoint& tp, const RadialFunction& gamma,
                          const RadialFunction& alpha, double rho0,
                          const ScatteringSolution& sol, const QuadSpec& spec,
                          int budget = 100000);
double fcan_energy(const ThermoPoint& tp, const RadialFunction& gamma,
                   const RadialFunction& alpha, double rho0,
                   const ScatteringSolution& sol, const QuadSpec& spec);

struct Diagnostics {
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0;
  double a1_less = 0.0, a1_greater = 0.0;
  double a1_bound = 0.0;   // rho^2 b (A1< + A1>)^2
  double a23_bound = 0.0;  // rho^2 eps a
  double rho_gamma = 0.0;
  int kernel_evaluations = 0;
  // reference orders: rho^2 b^2 and b |ln b|
  double order_e234 = 0.0;
  double order_a1_less = 0.0;
};

// E1..E4 by direct quadrature on the explicit family, plus the A-terms.
// with_e1 = false skips the double integral in E1.
Diagnostics error_diagnostics(const ThermoPoint& tp, const MinimizerState& st,
                              const QuadSpec& spec, bool with_e1 = true,
                              int budget = 100000);

}  // namespace dilute
