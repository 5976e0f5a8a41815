#include "dilute/logft.hpp"

#include <algorithm>
#include <cmath>

#include "dilute/constants.hpp"
#include "dilute/errors.hpp"

namespace dilute {

namespace {
constexpr double kFourPi2 = 4.0 * kPi * kPi;
}

double RadialDistribution::action(const RadialFunction& phi, const QuadSpec& spec,
                                  Part part) const {
  const double phi0 = phi(0.0);
  const double r = subtract_radius;
  double out = 0.0;
  if (part == Part::All) out += delta_coeff * kFourPi2 * phi0;
  if (part != Part::Outer && r > 0) {
    const RadialFunction& dn = numerator_delta;
    // the ratio tends to a constant at 0; below p_flat phi(p) - phi(0) is
    // mostly rounding, and freezing it costs O(p_flat^4)
    const double p_flat = 1e-3 * std::min(phi.scale, r);
    RadialFunction inner{[&, p_flat](double p) {
                           p = std::max(p, p_flat);
                           const double dphi = phi(p) - phi0;
                           return (dn(p) * phi(p) + numerator0 * dphi) / (p * p);
                         },
                         std::min(phi.scale, r), Endpoint::Regular};
    out += kFourPi2 * integrate_radial_2d(inner, 0.0, r, spec).value;
  }
  if (part != Part::Inner) {
    const RadialFunction& n = numerator;
    RadialFunction outer{[&](double p) { return n(p) * phi(p) / (p * p); },
                         std::max(phi.scale, r), Endpoint::Regular};
    if (r > 0) {
      out += kFourPi2 * integrate_radial_2d(outer, r, kInf, spec).value;
    } else {
      outer.at_zero = Endpoint::InverseSquare;
      out += kFourPi2 * integrate_radial_2d(outer, 0.0, kInf, spec).value;
    }
  }
  return out;
}

RadialDistribution p_distribution() {
  RadialDistribution d;
  d.numerator = {[](double) { return -kTwoPi; }, 1.0, Endpoint::Regular};
  d.numerator_delta = {[](double) { return 0.0; }, 1.0, Endpoint::Regular};
  d.numerator0 = -kTwoPi;
  d.subtract_radius = 1.0;
  return d;
}

double p_action(const RadialFunction& phi, const QuadSpec& spec) {
  return p_distribution().action(phi, spec);
}

double p_scaling_residual(const RadialFunction& phi, double kappa, const QuadSpec& spec) {
  if (!(kappa > 0)) throw InvalidArgument("kappa must be positive");
  auto f = phi.eval;
  RadialFunction phik{[f, kappa](double p) { return f(kappa * p); }, phi.scale / kappa, phi.at_zero};
  return p_action(phik, spec) - p_action(phi, spec) - kFourPi2 * std::log(kappa) * phi(0.0);
}

double c0_check(const QuadSpec& spec) {
  auto f = [](double r) { return r * std::log(r) * std::exp(-0.5 * r * r); };
  return 2.0 * kFourPi2 * integrate_interval(f, 0.0, kInf, spec, Endpoint::Log).value;
}

double c0_from_distributions(const QuadSpec& spec) {
  // f^(x) = 2 pi exp(-x^2/2)
  auto l = [](double r) { return std::log(r) * kTwoPi * std::exp(-0.5 * r * r) * r; };
  const double lf = kTwoPi * integrate_interval(l, 0.0, kInf, spec, Endpoint::Log).value;
  RadialFunction f{[](double p) { return std::exp(-0.5 * p * p); }, 1.0, Endpoint::Regular};
  return lf - p_action(f, spec);
}

double c0_exact() { return kFourPi2 * (std::log(2.0) - kEulerGamma); }

PhiHat build_phi_hat(const ScatteringSolution& sol) {
  PhiHat h;
  auto vw = sol.vwhat.eval;
  auto dvw = sol.vwhat_delta.eval;
  h.dist.numerator = {[vw](double p) { return 0.5 * vw(p); }, sol.vwhat.scale, Endpoint::Regular};
  h.dist.numerator_delta = {[dvw](double p) { return 0.5 * dvw(p); }, sol.vwhat.scale, Endpoint::Regular};
  h.dist.numerator0 = 0.5 * sol.vwhat0;
  h.dist.subtract_radius = sol.epsilon;
  return h;
}

RadialDistribution build_w_hat(const ScatteringSolution& sol) {
  RadialDistribution d = build_phi_hat(sol).dist;
  auto n = d.numerator.eval;
  auto dn = d.numerator_delta.eval;
  d.numerator.eval = [n](double p) { return -n(p); };
  d.numerator_delta.eval = [dn](double p) { return -dn(p); };
  d.numerator0 = -d.numerator0;
  d.delta_coeff = 1.0;
  return d;
}

double delta_cancellation_check(double a, double b, double eps) {
  return 1.0 + 2.0 * b * (std::log(a) - std::log(2.0) + kEulerGamma + std::log(eps));
}

double delta_cancellation_check(const ScatteringSolution& sol) {
  return delta_cancellation_check(sol.a, sol.b, sol.epsilon);
}

}  // namespace dilute
