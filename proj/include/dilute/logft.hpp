#pragma once

#include "dilute/quadrature.hpp"
#include "dilute/scattering.hpp"

namespace dilute {

enum class Part { All, Inner, Outer };

// delta_coeff (2pi)^2 delta_0 + N(p)/p^2, where the action subtracts
// N(0) phi(0) / p^2 inside |p| <= subtract_radius.
struct RadialDistribution {
  double delta_coeff = 0.0;
  RadialFunction numerator;
  RadialFunction numerator_delta;  // N(p) - N(0)
  double numerator0 = 0.0;
  double subtract_radius = 0.0;

  double regular(double p) const { return numerator(p) / (p * p); }

  // Inner is the |p| <= subtract_radius piece (with subtraction), Outer the
  // rest; the delta term belongs to All only.
  double action(const RadialFunction& phi, const QuadSpec& spec,
                Part part = Part::All) const;
};

RadialDistribution p_distribution();
double p_action(const RadialFunction& phi, const QuadSpec& spec);

// P(phi_k) - P(phi) - (2pi)^2 ln(k) phi(0) with phi_k(p) = phi(k p)
double p_scaling_residual(const RadialFunction& phi, double kappa,
                          const QuadSpec& spec);

// 2 (2pi)^2 \int_0^inf r ln(r) exp(-r^2/2) dr
double c0_check(const QuadSpec& spec);
// L(f^) - P(f) for f = exp(-p^2/2)
double c0_from_distributions(const QuadSpec& spec);
double c0_exact();

struct PhiHat {
  RadialDistribution dist;
  double action(const RadialFunction& phi, const QuadSpec& spec) const { return dist.action(phi, spec); }
  double phi1(const RadialFunction& phi, const QuadSpec& spec) const { return dist.action(phi, spec, Part::Inner); }
  double phi2(const RadialFunction& phi, const QuadSpec& spec) const { return dist.action(phi, spec, Part::Outer); }
};

PhiHat build_phi_hat(const ScatteringSolution& sol);
// w^ = (2pi)^2 delta_0 - phi^
RadialDistribution build_w_hat(const ScatteringSolution& sol);

double delta_cancellation_check(const ScatteringSolution& sol);
double delta_cancellation_check(double a, double b, double eps);

}  // namespace dilute
