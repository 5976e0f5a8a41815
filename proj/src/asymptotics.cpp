#include "dilute/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "dilute/constants.hpp"
#include "dilute/errors.hpp"

namespace dilute {

namespace {

void check_d(double d) {
  if (!(d >= 0.0)) throw NegativeD("d = " + std::to_string(d));
}

// sqrt(X^2 + 16 pi X) + X + 8 pi with X = k^2 + d
double denom(double k, double d) {
  const double x = k * k + d;
  return std::sqrt(x * (x + 16.0 * kPi)) + x + 8.0 * kPi;
}

// sqrt(X^2 + 16 pi X) - (X + 8 pi), without the cancellation
double bracket(double k, double d) { return -64.0 * kPi * kPi / denom(k, d); }

// bracket + 32 pi^2 / k^2
double bracket_subtracted(double k, double d) {
  const double x = k * k + d;
  const double dd = denom(k, d);
  const double num = 16.0 * kPi * x / (std::sqrt(x * (x + 16.0 * kPi)) + x) + 2.0 * d + 8.0 * kPi;
  return 32.0 * kPi * kPi * num / (k * k * dd);
}

double lambda3(double T) { return std::pow(T / (4.0 * kPi), 1.5); }

}  // namespace

double sqrt_d16(double d) {
  check_d(d);
  return std::sqrt(d * (d + 16.0 * kPi));
}

double c_of_d(double d) {
  const double s = sqrt_d16(d) + d;
  if (s == 0.0) return 1.0;
  return 16.0 * kPi * d / (s * s);
}

double c_nu_of_d(double nu, double d) {
  if (!(nu > 0)) throw InvalidArgument("nu must be positive");
  const double s = sqrt_d16(d);
  return c_of_d(d) * (2.0 * nu - 16.0 * kPi - d) + d * d / (16.0 * kPi) + 2.0 * kPi + d -
         4.0 * kPi * (std::log(8.0) - 2.0 * kEulerGamma) - d * s / (16.0 * kPi) - 0.5 * s +
         4.0 * kPi * std::log(d + s + 8.0 * kPi);
}

double c_nu_at_zero(double nu) {
  return 2.0 * nu - 14.0 * kPi + 4.0 * kPi * std::log(kPi) + 8.0 * kPi * kEulerGamma;
}

double c_8pi_at_zero() { return 2.0 * kPi * (1.0 + 4.0 * kEulerGamma + 2.0 * std::log(kPi)); }

CnuMinimum minimize_cnu(double nu, double d_max) {
  if (!(d_max > 1e-6)) throw InvalidArgument("d_max too small");
  auto f = [nu](double d) { return c_nu_of_d(nu, d); };
  std::vector<double> grid{0.0};
  const int n = 399;
  for (int i = 0; i < n; ++i)
    grid.push_back(1e-6 * std::pow(d_max / 1e-6, static_cast<double>(i) / (n - 1)));
  std::vector<double> vals;
  for (double d : grid) vals.push_back(f(d));
  const auto i = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());

  CnuMinimum out;
  out.d_star = grid[i];
  out.value = vals[i];
  const double lo = i == 0 ? 0.0 : grid[i - 1];
  const double hi = std::min(i + 1 < grid.size() ? grid[i + 1] : grid[i], d_max);
  if (hi > lo) {
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::brent_find_minima(f, lo, hi, 52, iters);
    if (r.second < out.value) {
      out.d_star = r.first;
      out.value = r.second;
    }
  }
  // a minimum within the refinement tolerance of zero is the boundary point
  if (out.d_star <= 1e-8 || vals[0] <= out.value) {
    out.d_star = 0.0;
    out.value = vals[0];
  }
  out.boundary = out.d_star == 0.0;
  out.increasing_at_cap = f(d_max) > f(d_max * (1.0 - 1e-6));
  return out;
}

double i_less_exact(double d, double rho0b, double eps) {
  if (!(rho0b > 0) || !(eps > 0)) throw InvalidArgument("rho0 b and eps must be positive");
  const double s = sqrt_d16(d);
  const double pi2 = kPi * kPi;
  const double br = d * d / 4.0 + 8.0 * pi2 + 4.0 * kPi * d -
                    16.0 * pi2 * std::log(2.0 * eps * eps / rho0b) - 0.25 * d * s - 2.0 * kPi * s +
                    16.0 * pi2 * std::log(d + s + 8.0 * kPi);
  return rho0b * rho0b / (4.0 * kPi) * br;
}

double i_less_quadrature(double d, double rho0b, double eps, const QuadSpec& spec) {
  if (!(rho0b > 0) || !(eps > 0)) throw InvalidArgument("rho0 b and eps must be positive");
  check_d(d);
  const double L = eps / std::sqrt(rho0b);
  auto f = [d](double k) { return bracket(k, d) * k; };
  std::vector<double> br{0.0};
  for (double x = 1.0; x < L; x *= 4.0) br.push_back(x);
  br.push_back(L);
  return rho0b * rho0b / (4.0 * kPi) * integrate_breaks(f, br, spec).value;
}

double i_greater(double d, double rho0b, double eps, const QuadSpec& spec) {
  if (!(rho0b > 0) || !(eps > 0)) throw InvalidArgument("rho0 b and eps must be positive");
  check_d(d);
  const double L = eps / std::sqrt(rho0b);
  QuadSpec s = spec;
  s.tail_order = 3;  // integrand * k ~ k^-3
  s.tail_cut = std::max(spec.tail_cut, 1e3 * L);
  auto f = [d](double k) { return bracket_subtracted(k, d) * k; };
  return rho0b * rho0b / (4.0 * kPi) * integrate_interval(f, L, kInf, s).value;
}

ExpansionResult expansion_terms(const ThermoPoint& tp) {
  if (!(tp.b > 0 && tp.b < 1)) throw InvalidArgument("b must lie in (0,1)");
  if (!(tp.rho > 0)) throw InvalidArgument("rho must be positive");
  ExpansionResult r;
  const double r2 = tp.rho * tp.rho;
  const CnuMinimum m = minimize_cnu(tp.nu);
  r.leading = 4.0 * kPi * r2 * tp.b;
  r.log_term = 4.0 * kPi * r2 * tp.b * tp.b * std::log(tp.b);
  r.const_term = m.value * r2 * tp.b * tp.b;
  r.d_star = m.d_star;
  return r;
}

ExpansionResult ground_state_expansion(const ThermoPoint& tp, const ScatteringSolution& sol,
                                       const QuadSpec& spec, double d_max, double t0_fraction) {
  if (tp.temperature != 0.0) throw InvalidArgument("expansion requires T = 0");
  ExpansionResult r = expansion_terms(tp);
  const SimMinimum m = minimize_fsim(tp, sol, spec, d_max, t0_fraction);
  r.f_min = m.f_min;
  r.d_star_numeric = m.d_star;
  r.rho0 = m.rho0;
  r.residual = m.f_min - (r.leading + r.log_term + r.const_term);
  r.residual_ratio = std::abs(r.residual) / (tp.rho * tp.rho * tp.b * tp.b);
  return r;
}

double ideal_gas_2d(double mu, double T) {
  if (!(T > 0)) throw InvalidArgument("T must be positive");
  if (mu > 0) throw PositiveMu("mu = " + std::to_string(mu));
  if (mu == 0.0) return kInf;
  return -T / (4.0 * kPi) * std::log1p(-std::exp(mu / T));
}

double ideal_gas_2d_mu(double rho, double T) {
  if (!(T > 0)) throw InvalidArgument("T must be positive");
  if (!(rho >= 0)) throw InvalidArgument("rho must be non-negative");
  return T * std::log1p(-std::exp(-4.0 * kPi * rho / T));
}

double ideal_pressure_3d(double mu, double T, const QuadSpec& spec) {
  if (!(T > 0)) throw InvalidArgument("T must be positive");
  if (mu > 0) throw PositiveMu("mu = " + std::to_string(mu));
  auto f = [mu, T](double p) {
    if (p == 0.0) return 0.0;
    return 4.0 * kPi * p * p * std::log1p(-std::exp(-(p * p - mu) / T));
  };
  const double s = std::sqrt(T);
  return T / (8.0 * kPi * kPi * kPi) * integrate_breaks(f, {0.0, s, 4.0 * s, 16.0 * s, 64.0 * s}, spec).value;
}

double ideal_density_3d(double mu, double T, const QuadSpec& spec) {
  if (!(T > 0)) throw InvalidArgument("T must be positive");
  if (mu > 0) throw PositiveMu("mu = " + std::to_string(mu));
  auto f = [mu, T](double p) {
    if (p == 0.0) return mu < 0 ? 0.0 : 4.0 * kPi * T;
    return 4.0 * kPi * p * p / std::expm1((p * p - mu) / T);
  };
  const double s = std::sqrt(T);
  return integrate_breaks(f, {0.0, s, 4.0 * s, 16.0 * s, 64.0 * s}, spec).value / (8.0 * kPi * kPi * kPi);
}

double rho_fc_3d(double T) {
  if (!(T > 0)) throw InvalidArgument("T must be positive");
  return kZeta3Half * lambda3(T);
}

double ideal_mu_3d(double rho, double T, const QuadSpec& spec) {
  if (!(T > 0) || !(rho > 0)) throw InvalidArgument("T and rho must be positive");
  if (rho >= rho_fc_3d(T)) return 0.0;
  const double lam = lambda3(T);
  const double lo = T * std::log(rho / (kZeta3Half * lam)) - T;
  const double hi = std::min(0.0, T * std::log(rho / lam));
  auto f = [&](double mu) { return ideal_density_3d(mu, T, spec) - rho; };
  auto tol = [T](double a, double b) { return std::abs(a - b) <= 1e-15 * T; };
  auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol);
  return 0.5 * (a + b);
}

IdealGas3d ideal_gas_3d(double T, double rho, const QuadSpec& spec) {
  if (!(T > 0) || !(rho > 0)) throw InvalidArgument("T and rho must be positive");
  IdealGas3d out;
  out.rho_fc = rho_fc_3d(T);
  if (rho >= out.rho_fc) {
    out.mu = 0.0;
    out.f0 = ideal_pressure_3d(0.0, T, spec);
    return out;
  }
  // zeta(3/2) z >= Li_{3/2}(z) >= z brackets the maximiser
  const double lam = lambda3(T);
  const double lo = T * std::log(rho / (kZeta3Half * lam)) - T;
  const double hi = std::min(0.0, T * std::log(rho / lam));
  auto neg = [&](double mu) { return -(mu * rho + ideal_pressure_3d(mu, T, spec)); };
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::brent_find_minima(neg, lo, hi, 50, iters);
  out.mu = r.first;
  out.f0 = -r.second;
  return out;
}

double critical_temperature_2d(double rho, double b, double xi) {
  if (!(rho > 0)) throw InvalidArgument("rho must be positive");
  if (!(b > 0 && b < 1)) throw InvalidArgument("b must lie in (0,1)");
  if (!(xi > 4.0 * kPi * b)) throw LogDomain("xi must exceed 4 pi b");
  return 4.0 * kPi * rho / std::log(xi / (4.0 * kPi * b));
}

}  // namespace dilute
