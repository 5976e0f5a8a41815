#pragma once

#include <vector>

#include "dilute/bogoliubov.hpp"
#include "dilute/quadrature.hpp"
#include "dilute/scattering.hpp"

namespace dilute {

// sqrt(d (d + 16 pi))
double sqrt_d16(double d);

double c_of_d(double d);
double c_nu_of_d(double nu, double d);
// 2 nu - 14 pi + 4 pi ln(pi) + 8 pi Gamma
double c_nu_at_zero(double nu);
// 2 pi (1 + 4 Gamma + 2 ln pi)
double c_8pi_at_zero();

struct CnuMinimum {
  double d_star = 0.0;
  double value = 0.0;
  bool boundary = false;         // minimum sits at d = 0
  bool increasing_at_cap = true; // C_nu increasing at d_max
};
CnuMinimum minimize_cnu(double nu, double d_max = 1e3);

// (rho0 b)^2 / (4 pi) [bracket] without the O(b) remainder
double i_less_exact(double d, double rho0b, double eps);
// (rho0 b)^2/(4 pi) \int_0^L [sqrt((k^2+d)^2 + 16 pi (k^2+d)) - (k^2+d+8pi)] k dk,
// L = eps / sqrt(rho0 b)
double i_less_quadrature(double d, double rho0b, double eps, const QuadSpec& spec);
// same integrand plus 32 pi^2/k^2 on (L, inf)
double i_greater(double d, double rho0b, double eps, const QuadSpec& spec);

struct ExpansionResult {
  double leading = 0.0;
  double log_term = 0.0;
  double const_term = 0.0;
  double d_star = 0.0;      // argmin of C_nu
  double f_min = 0.0;       // numerical inf of F^sim
  double d_star_numeric = 0.0;
  double rho0 = 0.0;
  double residual = 0.0;
  double residual_ratio = 0.0;  // |residual| / (rho^2 b^2)
};

// closed-form terms only
ExpansionResult expansion_terms(const ThermoPoint& tp);
// closed-form terms plus the numerical minimization on sol
ExpansionResult ground_state_expansion(const ThermoPoint& tp,
                                       const ScatteringSolution& sol,
                                       const QuadSpec& spec, double d_max = 1e3,
                                       double t0_fraction = 0.0);

// -(T / 4 pi) ln(1 - e^{mu/T})
double ideal_gas_2d(double mu, double T);
// inverse in closed form
double ideal_gas_2d_mu(double rho, double T);

struct IdealGas3d {
  double f0 = 0.0;
  double rho_fc = 0.0;
  double mu = 0.0;
};
// pressure-type term T (2pi)^-3 \int ln(1 - e^{-(p^2 - mu)/T}) dp
double ideal_pressure_3d(double mu, double T, const QuadSpec& spec);
double ideal_density_3d(double mu, double T, const QuadSpec& spec);
double rho_fc_3d(double T);
// root of ideal_density_3d(mu) = rho for rho < rho_fc
double ideal_mu_3d(double rho, double T, const QuadSpec& spec);
IdealGas3d ideal_gas_3d(double T, double rho, const QuadSpec& spec);

// 4 pi rho / ln(xi / (4 pi b))
double critical_temperature_2d(double rho, double b, double xi = 14.4);

}  // namespace dilute
