#include "dilute/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "dilute/constants.hpp"
#include "dilute/errors.hpp"
#include "dilute/logft.hpp"

namespace dilute {

namespace {

constexpr double kFourPi2 = 4.0 * kPi * kPi;

// (2pi)^-1 \int_lo^hi f p dp, clipped to the support of the Fourier tables
double radial(const ScatteringSolution& sol, const ScalarFn& f, double lo,
              double hi, double scale, const QuadSpec& spec) {
  hi = std::min(hi, sol.p_cut);
  if (!(hi > lo)) return 0.0;
  RadialFunction rf{f, scale, Endpoint::Regular};
  return integrate_radial_2d(rf, lo, hi, spec).value;
}

}  // namespace

double MinimizerState::kappa() const {
  const double s = std::max({coupling() * sol->b, temperature, 0.0});
  return s > 0 ? std::sqrt(s) : std::sqrt(sol->rho_ref * sol->b);
}

void MinimizerState::validate() const {
  if (!sol) throw InvalidArgument("minimizer state needs a scattering solution");
  if (!(rho0 >= 0)) throw InvalidArgument("rho0 must be nonnegative");
  if (t0 > 0 || t0 < -rho0) throw InvalidArgument("t0 must lie in [-rho0, 0]");
  if (!(d >= 0)) throw NegativeD("d must be nonnegative");
  if (!(temperature >= 0)) throw InvalidArgument("temperature must be nonnegative");
}

double entropy_density(double gamma, double alpha) {
  if (gamma < 0) throw DomainViolation("gamma < 0");
  const double slack = gamma * (gamma + 1.0) - alpha * alpha;
  if (slack < -1e-12 * (1.0 + gamma) * (1.0 + gamma))
    throw DomainViolation("alpha^2 > gamma (gamma + 1)");
  // beta - 1/2 = slack / (beta + 1/2) avoids the cancellation near the boundary
  const double beta = std::sqrt(std::max(0.25 + std::max(slack, 0.0), 0.25));
  const double lo = std::max(slack, 0.0) / (beta + 0.5);
  const double hi = beta + 0.5;
  const double s_hi = hi * std::log1p(lo);
  const double s_lo = lo > 0 ? lo * std::log(lo) : 0.0;
  return std::max(s_hi - s_lo, 0.0);
}

double dispersion_tg(double p, const MinimizerState& st) {
  const double A = p * p + st.delta();
  const double s = st.coupling() * st.sol->vwhat(p);
  return std::sqrt(std::max(A * A + 2.0 * A * s, 0.0));
}

double dispersion_G(double p, const MinimizerState& st) {
  if (!(st.temperature > 0)) throw InvalidArgument("G needs T > 0; use the T G form at T = 0");
  return dispersion_tg(p, st) / st.temperature;
}

Profiles minimizer_profiles(const MinimizerState& st) {
  st.validate();
  const MinimizerState s = st;
  const double scale = st.kappa();
  Profiles out;
  if (st.temperature == 0.0) {
    out.gamma = {[s](double p) {
                   const double A = p * p + s.delta();
                   const double v = s.coupling() * s.sol->vwhat(p);
                   const double tg = std::sqrt(std::max(A * A + 2.0 * A * v, 0.0));
                   return v * v / (2.0 * tg * (A + v + tg));
                 },
                 scale, Endpoint::Regular};
    out.alpha = {[s](double p) {
                   const double A = p * p + s.delta();
                   const double v = s.coupling() * s.sol->vwhat(p);
                   const double tg = std::sqrt(std::max(A * A + 2.0 * A * v, 0.0));
                   return -v / (2.0 * tg);
                 },
                 scale, Endpoint::Regular};
  } else {
    const double T = st.temperature;
    out.gamma = {[s, T](double p) {
                   const double A = p * p + s.delta();
                   const double v = s.coupling() * s.sol->vwhat(p);
                   const double tg = std::sqrt(std::max(A * A + 2.0 * A * v, 0.0));
                   const double nb = 1.0 / std::expm1(tg / T);
                   return (A + v) * nb / tg + v * v / (2.0 * tg * (A + v + tg));
                 },
                 scale, Endpoint::Regular};
    out.alpha = {[s, T](double p) {
                   const double A = p * p + s.delta();
                   const double v = s.coupling() * s.sol->vwhat(p);
                   const double tg = std::sqrt(std::max(A * A + 2.0 * A * v, 0.0));
                   const double beta = 1.0 / std::expm1(tg / T) + 0.5;
                   return -beta * v / tg;
                 },
                 scale, Endpoint::Regular};
  }
  return out;
}

double rho_gamma(const MinimizerState& st, const QuadSpec& spec) {
  st.validate();
  if (st.coupling() == 0.0 && st.temperature == 0.0) return 0.0;
  Profiles pr = minimizer_profiles(st);
  return radial(*st.sol, pr.gamma.eval, 0.0, kInf, st.kappa(), spec);
}

FsPieces fs_pieces(const MinimizerState& st, const QuadSpec& spec, double split_factor) {
  st.validate();
  FsPieces out;
  const ScatteringSolution& sol = *st.sol;
  const double c = st.coupling();
  const double delta = st.delta();
  const double eps = sol.epsilon * split_factor;
  const double scale = st.kappa();
  if (c != 0.0) {
    auto inner = [&](double p) {
      const double A = p * p + delta;
      const double v = c * sol.vwhat(p);
      const double tg = std::sqrt(std::max(A * A + 2.0 * A * v, 0.0));
      return -v * v / (2.0 * (tg + A + v));
    };
    auto one = [&](double p) {
      const double dv = sol.vwhat_delta(p);
      return c * c * dv * (2.0 * sol.vwhat0 + dv) / (4.0 * p * p);
    };
    auto outer = [&](double p) {
      const double A = p * p + delta;
      const double v = c * sol.vwhat(p);
      const double tg = std::sqrt(std::max(A * A + 2.0 * A * v, 0.0));
      const double D = tg + A + v;
      const double Dm = 2.0 * A * v / (tg + A) + 2.0 * delta + v;
      return v * v * Dm / (4.0 * p * p * D);
    };
    out.i_less = radial(sol, inner, 0.0, eps, std::min(scale, eps), spec);
    out.i_one = sol.idealized ? 0.0 : radial(sol, one, 0.0, eps, std::min(scale, eps), spec);
    out.i_greater = radial(sol, outer, eps, kInf, std::max(scale, eps), spec);
  }
  if (st.temperature > 0) {
    const double T = st.temperature;
    auto th = [&](double p) {
      const double A = p * p + delta;
      const double v = c * sol.vwhat(p);
      const double tg = std::sqrt(std::max(A * A + 2.0 * A * v, 0.0));
      return std::log1p(-std::exp(-tg / T));
    };
    QuadSpec ts = spec;
    RadialFunction rf{th, std::max(scale, std::sqrt(T)), Endpoint::Log};
    out.thermal = T * integrate_radial_2d(rf, 0.0, kInf, ts).value;
  }
  const double moved = c * c * sol.vwhat0 * sol.vwhat0 * std::log(split_factor) / (8.0 * kPi);
  out.total = out.i_less + out.i_one + out.i_greater + out.thermal + moved;
  return out;
}

double fs_energy(const MinimizerState& st, const QuadSpec& spec, bool check_split) {
  FsPieces a = fs_pieces(st, spec, 1.0);
  if (check_split && st.coupling() != 0.0) {
    FsPieces b = fs_pieces(st, spec, 1.5);
    const double mag = std::abs(a.i_less) + std::abs(a.i_greater) + std::abs(a.i_one) + std::abs(a.thermal);
    const double tol = 1e3 * std::max(spec.abs_tol, spec.rel_tol * mag);
    if (std::abs(a.total - b.total) > tol)
      throw SplitMismatch("split at eps and 1.5 eps differ by " + std::to_string(a.total - b.total));
  }
  return a.total;
}

double fsim_energy(const ThermoPoint& tp, const MinimizerState& st, const QuadSpec& spec,
                   double constraint_tol) {
  const double rg = rho_gamma(st, spec);
  if (std::abs(st.rho0 + rg - tp.rho) > constraint_tol * tp.rho)
    throw ConstraintViolated("rho0 + rho_gamma = " + std::to_string(st.rho0 + rg) + " vs rho = " +
                             std::to_string(tp.rho));
  const double c = st.coupling();
  const double b = tp.b;
  return fs_energy(st, spec) - st.delta() * rg + 4.0 * kPi * b * c * (3.0 * st.rho0 - 2.0 * tp.rho - st.t0) +
         tp.vhat0() * (tp.rho * tp.rho - st.rho0 * st.rho0);
}

MinimizerState solve_condensate(const ThermoPoint& tp, double d, const ScatteringSolution& sol,
                                const QuadSpec& spec, double t0_fraction) {
  if (!(d >= 0)) throw NegativeD("d must be nonnegative");
  if (t0_fraction < 0 || t0_fraction > 1) throw InvalidArgument("t0 fraction must lie in [0, 1]");
  MinimizerState st;
  st.d = d;
  st.temperature = tp.temperature;
  st.sol = &sol;
  auto residual = [&](double r0) {
    MinimizerState s = st;
    s.rho0 = r0;
    s.t0 = -t0_fraction * r0;
    return r0 + rho_gamma(s, spec) - tp.rho;
  };
  const double f_lo = residual(0.0);
  const double f_hi = residual(tp.rho);
  if (!(f_lo <= 0 && f_hi >= 0))
    throw ConstraintViolated("condensate equation has no root in [0, rho]");
  auto tol = [&](double x, double y) { return std::abs(x - y) <= 1e-14 * tp.rho; };
  auto [x0, x1] = boost::math::tools::bisect(residual, 0.0, tp.rho, tol);
  st.rho0 = 0.5 * (x0 + x1);
  st.t0 = -t0_fraction * st.rho0;
  return st;
}

SimMinimum minimize_fsim(const ThermoPoint& tp, const ScatteringSolution& sol, const QuadSpec& spec,
                         double d_max, double t0_fraction) {
  SimMinimum best;
  best.f_min = std::numeric_limits<double>::infinity();
  auto eval = [&](double d) {
    MinimizerState st = solve_condensate(tp, d, sol, spec, t0_fraction);
    const double f = fsim_energy(tp, st, spec);
    ++best.evaluations;
    if (f < best.f_min) {
      best.f_min = f;
      best.d_star = d;
      best.rho0 = st.rho0;
    }
    return f;
  };
  std::vector<double> grid{0.0};
  for (double d = 1e-2; d <= d_max * 1.0000001; d *= std::sqrt(10.0)) grid.push_back(d);
  std::vector<double> vals;
  for (double d : grid) vals.push_back(eval(d));
  const std::size_t i = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  const double lo = i == 0 ? 0.0 : grid[i - 1];
  const double hi = i + 1 < grid.size() ? grid[i + 1] : grid[i];
  if (hi > lo) {
    std::uintmax_t iters = 60;
    boost::math::tools::brent_find_minima(eval, lo, hi, 30, iters);
  }
  return best;
}

CanonicalParts fcan_parts(const ThermoPoint& tp, const RadialFunction& gamma, const RadialFunction& alpha,
                          double rho0, const ScatteringSolution& sol, const QuadSpec& spec, int budget) {
  CanonicalParts out;
  const double scale = std::min(gamma.scale, alpha.scale);
  out.kinetic = radial(sol, [&](double p) { return p * p * gamma(p); }, 0.0, kInf, scale, spec);
  if (tp.temperature > 0) {
    out.entropy = tp.temperature *
                  radial(sol, [&](double p) { return entropy_density(gamma(p), alpha(p)); }, 0.0, kInf, scale, spec);
  }
  const double v0 = sol.vhat0;
  out.mean_field = 0.5 * v0 * tp.rho * tp.rho;
  out.linear = rho0 * radial(sol, [&](double p) { return sol.vhat(p) * (gamma(p) + alpha(p)); }, 0.0, kInf, scale, spec);
  // V^(p - q) = V^(0) + [V^(p - q) - V^(0)]; the constant part factorises
  const double hi = std::isfinite(sol.p_cut) ? sol.p_cut : spec.tail_cut * scale;
  const double int_a = kFourPi2 * radial(sol, alpha.eval, 0.0, kInf, scale, spec);
  const double int_g = kFourPi2 * radial(sol, gamma.eval, 0.0, kInf, scale, spec);
  const double norm = 0.5 / (kFourPi2 * kFourPi2);
  double paa = v0 * int_a * int_a, pgg = v0 * int_g * int_g;
  if (!sol.idealized) {
    PairingResult ra = radial_pairing(alpha, alpha, sol.vhat_delta, 0.0, hi, spec, budget);
    PairingResult rg = radial_pairing(gamma, gamma, sol.vhat_delta, 0.0, hi, spec, budget);
    paa += ra.value;
    pgg += rg.value;
    out.kernel_evaluations = ra.kernel_evaluations + rg.kernel_evaluations;
  }
  out.pair_alpha = norm * paa;
  out.pair_gamma = norm * pgg;
  out.total = out.kinetic - out.entropy + out.mean_field + out.linear + out.pair_alpha + out.pair_gamma;
  return out;
}

double fcan_energy(const ThermoPoint& tp, const RadialFunction& gamma, const RadialFunction& alpha, double rho0,
                   const ScatteringSolution& sol, const QuadSpec& spec) {
  return fcan_parts(tp, gamma, alpha, rho0, sol, spec).total;
}

Diagnostics error_diagnostics(const ThermoPoint& tp, const MinimizerState& st, const QuadSpec& spec,
                              bool with_e1, int budget) {
  st.validate();
  Diagnostics out;
  const ScatteringSolution& sol = *st.sol;
  Profiles pr = minimizer_profiles(st);
  const double scale = st.kappa();
  const double c = st.coupling();
  const double eps = sol.epsilon;
  out.rho_gamma = radial(sol, pr.gamma.eval, 0.0, kInf, scale, spec);

  out.e2 = st.rho0 * radial(sol, [&](double p) { return sol.vhat_delta(p) * pr.gamma(p); }, 0.0, kInf, scale, spec);
  out.e3 = -c * radial(sol, [&](double p) { return sol.vwhat_delta(p) * pr.gamma(p); }, 0.0, kInf, scale, spec);
  const double hi = std::isfinite(sol.p_cut) ? sol.p_cut : spec.tail_cut * scale;
  const double norm = 0.5 / (kFourPi2 * kFourPi2);
  if (!sol.idealized) {
    PairingResult rg = radial_pairing(pr.gamma, pr.gamma, sol.vhat_delta, 0.0, hi, spec, budget);
    out.e4 = norm * rg.value;
    out.kernel_evaluations += rg.kernel_evaluations;
  }

  if (with_e1) {
    if (sol.idealized) throw InvalidArgument("E1 needs a decaying potential profile");
    const double r0 = st.rho0;
    RadialFunction g{[&](double p) { return c * sol.vwhat(p) - r0 * sol.vhat(p); }, sol.vwhat.scale,
                     Endpoint::Regular};
    const double int_a = kFourPi2 * radial(sol, pr.alpha.eval, 0.0, kInf, scale, spec);
    PairingResult ra = radial_pairing(pr.alpha, pr.alpha, sol.vhat_delta, 0.0, hi, spec, budget);
    out.kernel_evaluations += ra.kernel_evaluations;
    const double paa = norm * (sol.vhat0 * int_a * int_a + ra.value);
    const double lin = radial(sol, [&](double p) { return pr.alpha(p) * g(p); }, 0.0, kInf, scale, spec);
    const double g0 = c * sol.vwhat0 - r0 * sol.vhat0;
    const double phig = build_phi_hat(sol).action(g, spec);
    out.e1 = paa - lin + 0.5 * (st.t0 * g0 - c * phig / kFourPi2);
  }

  // alpha~ pieces, per unit condensate
  if (c > 0) {
    const double delta = st.delta();
    auto less = [&](double p) { return std::abs(pr.alpha(p)) / c; };
    auto greater = [&](double p) {
      const double A = p * p + delta;
      const double v = c * sol.vwhat(p);
      const double tg = std::sqrt(std::max(A * A + 2.0 * A * v, 0.0));
      const double num = 2.0 * p * p * delta + delta * delta + 2.0 * A * v;
      return std::abs(0.5 * sol.vwhat(p) * num / ((tg + p * p) * p * p * tg));
    };
    out.a1_less = kFourPi2 * radial(sol, less, 0.0, eps, std::min(scale, eps), spec);
    out.a1_greater = kFourPi2 * radial(sol, greater, eps, kInf, std::max(scale, eps), spec);
  }
  out.a1_bound = tp.rho * tp.rho * tp.b * std::pow(out.a1_less + out.a1_greater, 2);
  out.a23_bound = tp.rho * tp.rho * eps * sol.a;
  out.order_e234 = tp.rho * tp.rho * tp.b * tp.b;
  out.order_a1_less = tp.b * std::abs(std::log(tp.b));
  return out;
}

}  // namespace dilute
