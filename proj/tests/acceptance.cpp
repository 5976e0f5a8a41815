// One line per acceptance criterion; exit status is the number of failures
// (capped at 1 for ctest).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dilute/asymptotics.hpp"
#include "dilute/bogoliubov.hpp"
#include "dilute/constants.hpp"
#include "dilute/logft.hpp"
#include "dilute/scattering.hpp"

using namespace dilute;

namespace {

const QuadSpec kSpec;
const double kEps1 = 2.0 / std::exp(kEulerGamma);  // cutoff at rho = 1

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const ScatteringSolution& bump() {
  static const ScatteringSolution s = solve_scattering(smooth_bump(10.0, 1.0), 1e-6, kSpec);
  return s;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("threw ") + e.what();
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt < budget_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s %2d %-28s %s [%.3g s / %.3g s%s]\n", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), dt,
              budget_s, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "c0 constant", 1.0, [] {
    const double r = std::abs(c0_check(kSpec) - c0_exact());
    return Outcome{r <= 1e-8, "|c0 - (2pi)^2 (ln2 - Gamma)| = " + fmt("%.3g", r)};
  });

  criterion(2, "delta cancellation", 1e-3, [] {
    double worst = 0;
    for (double b : {0.01, 0.05})
      for (double a : {0.3, 1.0}) worst = std::max(worst, std::abs(delta_cancellation_check(a, b, epsilon_of(a, b))));
    return Outcome{worst <= 1e-14, "max |residual| = " + fmt("%.3g", worst)};
  });

  criterion(3, "P scaling covariance", 1.0, [] {
    RadialFunction g{[](double p) { return std::exp(-0.5 * p * p); }, 1.0, Endpoint::Regular};
    double worst = 0;
    for (double k : {2.0, 5.0}) worst = std::max(worst, std::abs(p_scaling_residual(g, k, kSpec)));
    return Outcome{worst <= 1e-7, "max |residual| = " + fmt("%.3g", worst)};
  });

  criterion(4, "scattering identities", 10.0, [] {
    const ScatteringSolution& s = bump();
    const double h = std::abs(s.half_vw0_integral - kTwoPi) / kTwoPi;
    const double v = std::abs(s.vwhat0 - 8 * kPi * s.b) / (8 * kPi * s.b);
    const ScatteringSolution s2 = solve_scattering(rescale_potential(smooth_bump(10.0, 1.0), 2.0), 1e-6, kSpec);
    const double l = std::abs(s2.a - s.a / 2) / (s.a / 2);
    return Outcome{h <= 1e-8 && v <= 1e-8 && l <= 1e-6,
                   "rel: half-int " + fmt("%.2g", h) + ", Vw(0) " + fmt("%.2g", v) + ", a(V_2) " + fmt("%.2g", l)};
  });

  criterion(5, "depletion coefficient C(d)", 5.0, [] {
    const ScatteringSolution sol = idealized_solution(1e-3, 1.0, 8 * kPi);
    double worst = 0;
    for (double d : {0.0, 1.0, 4 * kPi, 16 * kPi}) {
      MinimizerState st;
      st.rho0 = 1.0;
      st.d = d;
      st.sol = &sol;
      worst = std::max(worst, std::abs(rho_gamma(st, kSpec) / (st.rho0 * sol.b) - c_of_d(d)));
    }
    const double c0 = std::abs(c_of_d(0.0) - 1.0);
    const double c16 = std::abs(c_of_d(16 * kPi) - (3 - 2 * std::sqrt(2.0)));
    return Outcome{worst <= 1e-8 && c0 <= 1e-12 && c16 <= 1e-12,
                   "max |rho_g/(rho0 b) - C| = " + fmt("%.2g", worst) + ", closed forms " + fmt("%.2g", std::max(c0, c16))};
  });

  criterion(6, "I< closed form", 10.0, [] {
    double worst = 0, ident = 0;
    for (double b : {0.01, 0.005})
      for (double d : {0.0, 1.0, 10.0}) {
        const double r0b = b / (1 + c_of_d(d) * b);
        const double ex = i_less_exact(d, r0b, kEps1);
        const double q = i_less_quadrature(d, r0b, kEps1, kSpec);
        worst = std::max(worst, std::abs(ex - q) / std::abs(q));
        ident = std::max(ident, std::abs(ex - q - i_greater(d, r0b, kEps1, kSpec)) / std::abs(ex));
      }
    return Outcome{worst <= 1e-6, "max rel err vs truncated quadrature " + fmt("%.3g", worst) +
                                      " (closed form = I< + I> to " + fmt("%.2g", ident) + ")"};
  });

  criterion(7, "C_nu minimization", 1.0, [] {
    const CnuMinimum m = minimize_cnu(8 * kPi);
    const double dv = std::abs(m.value - c_8pi_at_zero());
    return Outcome{m.d_star <= 1e-6 && dv <= 1e-10,
                   "d* = " + fmt("%.3g", m.d_star) + ", C = " + fmt("%.13g", m.value) + ", err " + fmt("%.2g", dv)};
  });

  criterion(8, "decomposition identity", 60.0, [] {
    const ScatteringSolution sol = with_b(bump(), 0.01, 1.0);
    ThermoPoint tp;
    tp.b = 0.01;
    tp.nu = sol.nu();
    const MinimizerState st = solve_condensate(tp, 0.0, sol, kSpec);
    const Profiles pr = minimizer_profiles(st);
    const double fcan = fcan_energy(tp, pr.gamma, pr.alpha, st.rho0, sol, kSpec);
    const double fsim = fsim_energy(tp, st, kSpec);
    const Diagnostics dg = error_diagnostics(tp, st, kSpec);
    const double r = std::abs(fcan - fsim - (dg.e1 + dg.e2 + dg.e3 + dg.e4)) / std::abs(fcan);
    return Outcome{r <= 1e-6, "|Fcan - Fsim - sum E| / |Fcan| = " + fmt("%.2g", r)};
  });

  criterion(9, "T = 0 purity", 1.0, [] {
    const ScatteringSolution sol = with_b(bump(), 0.01, 1.0);
    MinimizerState st;
    st.rho0 = 1.0 / 1.01;
    st.sol = &sol;
    const Profiles pr = minimizer_profiles(st);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
      const double p = 1e-4 * std::pow(1e8, i / 199.0) * st.kappa();
      const double g = pr.gamma(p), a = pr.alpha(p);
      worst = std::max(worst, std::abs(a * a - g * (g + 1)) / ((1 + g) * (1 + g)));
    }
    return Outcome{worst <= 1e-10, "max |a^2 - g(g+1)|/(1+g)^2 = " + fmt("%.2g", worst)};
  });

  criterion(10, "expansion residual trend", 300.0, [] {
    std::vector<double> r;
    std::string d;
    for (double b : {0.05, 0.02, 0.01, 0.005}) {
      const ScatteringSolution sol = with_b(bump(), b, 1.0);
      ThermoPoint tp;
      tp.b = b;
      tp.nu = 8 * kPi;
      r.push_back(ground_state_expansion(tp, sol, kSpec).residual_ratio);
      d += (d.empty() ? "" : ", ") + fmt("%.3g", r.back());
    }
    bool ok = r.back() <= 0.5 * r.front();
    for (std::size_t i = 1; i < r.size(); ++i) ok = ok && r[i] < r[i - 1];
    return Outcome{ok, "r_b = " + d};
  });

  criterion(11, "I> smallness", 30.0, [] {
    std::vector<double> r;
    std::string d;
    for (double b : {0.01, 0.005, 0.0025}) {
      r.push_back(i_greater(0.0, b / (1 + b), kEps1, kSpec) / (b * b));
      d += (d.empty() ? "" : ", ") + fmt("%.3g", r.back());
    }
    const bool ok = r[1] < r[0] && r[2] < r[1] && r[2] <= 0.05;
    return Outcome{ok, "I>(0)/(rho^2 b^2) = " + d};
  });

  criterion(12, "A1< order", 30.0, [] {
    std::vector<double> r;
    std::string d;
    for (double b : {0.01, 0.005, 0.0025}) {
      const ScatteringSolution sol = with_b(bump(), b, 1.0);
      ThermoPoint tp;
      tp.b = b;
      tp.nu = sol.nu();
      const MinimizerState st = solve_condensate(tp, 0.0, sol, kSpec);
      const Diagnostics dg = error_diagnostics(tp, st, kSpec, false);
      r.push_back(dg.a1_less / (b * std::log(1 / b)));
      d += (d.empty() ? "" : ", ") + fmt("%.3g", r.back());
    }
    const double spread = *std::max_element(r.begin(), r.end()) / *std::min_element(r.begin(), r.end());
    return Outcome{spread < 2.0, "A1</(b ln 1/b) = " + d + " (spread " + fmt("%.3g", spread) + ")"};
  });

  criterion(13, "ideal-gas references", 5.0, [] {
    RadialFunction bose{[](double p) { return 1.0 / std::expm1(p * p + 1.0); }, 1.0, Endpoint::Regular};
    const double r2 = ideal_gas_2d(-1.0, 1.0);
    const double e2 = std::abs(r2 - integrate_radial_2d(bose, 0.0, kInf, kSpec).value);
    const double fc = rho_fc_3d(1.0);
    const double e3 = std::abs(fc - ideal_density_3d(0.0, 1.0, kSpec));
    return Outcome{e2 <= 1e-8 && e3 <= 1e-6, "rho_2d(1,-1) = " + fmt("%.8g", r2) + " err " + fmt("%.2g", e2) +
                                                 ", rho_fc(1) = " + fmt("%.8g", fc) + " err " + fmt("%.2g", e3)};
  });

  std::printf("%d of 13 criteria failed\n", failures);
  return failures ? 1 : 0;
}
