#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dilute/asymptotics.hpp"
#include "dilute/bogoliubov.hpp"
#include "dilute/constants.hpp"
#include "dilute/errors.hpp"
#include "gen.hpp"

using namespace dilute;

namespace {
const QuadSpec kSpec;

const ScatteringSolution& base() {
  static const ScatteringSolution s = solve_scattering(smooth_bump(10.0, 1.0), 1e-6, kSpec);
  return s;
}

MinimizerState state(const ScatteringSolution& sol, double rho0, double d, double T = 0.0) {
  MinimizerState st;
  st.rho0 = rho0;
  st.d = d;
  st.temperature = T;
  st.sol = &sol;
  return st;
}
}  // namespace

TEST_CASE("entropy density") {
  CHECK(entropy_density(0.0, 0.0) == 0.0);
  // pure state: alpha^2 = gamma (gamma + 1) carries no entropy
  const double g = 0.37;
  CHECK(entropy_density(g, -std::sqrt(g * (g + 1))) == doctest::Approx(0.0).scale(1.0));
  // alpha = 0 reduces to the Bose entropy
  CHECK(entropy_density(g, 0.0) == doctest::Approx((1 + g) * std::log(1 + g) - g * std::log(g)).epsilon(1e-14));
  CHECK_THROWS_AS(entropy_density(-0.1, 0.0), DomainViolation);
  CHECK_THROWS_AS(entropy_density(0.1, 1.0), DomainViolation);
}

TEST_CASE("dispersion") {
  ScatteringSolution sol = with_b(base(), 0.01, 1.0);
  MinimizerState st = state(sol, 0.99, 1.0);
  CHECK_THROWS_AS(dispersion_G(1.0, st), InvalidArgument);
  const double p = 0.7, A = p * p + st.delta(), v = st.coupling() * sol.vwhat(p);
  CHECK(dispersion_tg(p, st) == doctest::Approx(std::sqrt(A * A + 2 * A * v)).epsilon(1e-15));
  st.temperature = 0.5;
  CHECK(dispersion_G(p, st) == doctest::Approx(dispersion_tg(p, st) / 0.5));
  st.d = -1;
  CHECK_THROWS_AS(st.validate(), NegativeD);
}

TEST_CASE("property: T = 0 profiles are pure") {
  ScatteringSolution sol = with_b(base(), 0.01, 1.0);
  for_all(10, 41, [&](Gen& g, int) {
    MinimizerState st = state(sol, g.uniform(0.5, 1.0), g.uniform(0, 20));
    Profiles pr = minimizer_profiles(st);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double p = 1e-4 * std::pow(1e8, i / 199.0) * st.kappa();
      const double ga = pr.gamma(p), al = pr.alpha(p);
      worst = std::max(worst, std::abs(al * al - ga * (ga + 1)) / ((1 + ga) * (1 + ga)));
    }
    CHECK(worst <= 1e-10);
  });
}

TEST_CASE("property: T > 0 profiles are Gibbs states of the dispersion") {
  ScatteringSolution sol = with_b(base(), 0.01, 1.0);
  for_all(10, 42, [&](Gen& g, int) {
    MinimizerState st = state(sol, g.uniform(0.5, 1.0), g.uniform(0, 20), g.log_uniform(1e-3, 1.0));
    Profiles pr = minimizer_profiles(st);
    const double p = g.log_uniform(1e-2, 10) * st.kappa();
    const double ga = pr.gamma(p), al = pr.alpha(p);
    const double beta = std::sqrt((0.5 + ga) * (0.5 + ga) - al * al);
    const double nb = 1.0 / std::expm1(dispersion_G(p, st));
    CHECK(beta == doctest::Approx(nb + 0.5).epsilon(1e-10));
    // occupations below rounding give zero entropy
    CHECK(entropy_density(ga, al) >= 0);
    if (nb > 1e-8) CHECK(entropy_density(ga, al) > 0);
  });
}

TEST_CASE("idealized rho_gamma reproduces C(d)") {
  ScatteringSolution sol = idealized_solution(0.01, 1.0, 8 * kPi);
  for (double d : {0.0, 1.0, 4 * kPi, 16 * kPi, 200.0}) {
    MinimizerState st = state(sol, 0.98, d);
    const double r = rho_gamma(st, kSpec) / (st.rho0 * sol.b);
    CHECK(std::abs(r - c_of_d(d)) <= 1e-8);
  }
}

TEST_CASE("property: split invariance of the zero-point energy") {
  ScatteringSolution sol = with_b(base(), 0.01, 1.0);
  for_all(6, 43, [&](Gen& g, int) {
    MinimizerState st = state(sol, g.uniform(0.8, 1.0), g.uniform(0, 10));
    const double sigma = g.uniform(0.5, 3.0);
    FsPieces a = fs_pieces(st, kSpec, 1.0), b = fs_pieces(st, kSpec, sigma);
    CHECK(a.total == doctest::Approx(b.total).epsilon(1e-8));
    CHECK(a.i_less < 0);
    CHECK(a.i_greater > 0);
  });
}

TEST_CASE("condensate constraint and F^sim") {
  ScatteringSolution sol = with_b(base(), 0.01, 1.0);
  ThermoPoint tp;
  tp.b = 0.01;
  tp.nu = sol.nu();
  for (double d : {0.0, 2.0, 30.0}) {
    MinimizerState st = solve_condensate(tp, d, sol, kSpec);
    CHECK(st.rho0 + rho_gamma(st, kSpec) == doctest::Approx(tp.rho).epsilon(1e-12));
    // rho0 / rho = 1 / (1 + C(d) b) up to the profile correction
    CHECK(st.rho0 == doctest::Approx(1.0 / (1.0 + c_of_d(d) * 0.01)).epsilon(1e-3));
    CHECK(std::isfinite(fsim_energy(tp, st, kSpec)));
  }
  MinimizerState off = state(sol, 0.5, 0.0);
  CHECK_THROWS_AS(fsim_energy(tp, off, kSpec), ConstraintViolated);
}

TEST_CASE("property: F^sim scales like rho^2 in the idealized mode") {
  // with flat profiles the functional is homogeneous once b is held fixed
  for_all(3, 44, [&](Gen& g, int) {
    const double rho = g.log_uniform(0.1, 10);
    ScatteringSolution s1 = idealized_solution(0.01, 1.0, 8 * kPi);
    ScatteringSolution s2 = idealized_solution(0.01, rho, 8 * kPi);
    ThermoPoint t1, t2;
    t1.b = t2.b = 0.01;
    t1.nu = t2.nu = 8 * kPi;
    t2.rho = rho;
    const double d = g.uniform(0, 5);
    MinimizerState a = solve_condensate(t1, d, s1, kSpec);
    MinimizerState b = solve_condensate(t2, d, s2, kSpec);
    CHECK(fsim_energy(t2, b, kSpec) == doctest::Approx(rho * rho * fsim_energy(t1, a, kSpec)).epsilon(1e-8));
  });
}

TEST_CASE("decomposition F^can = F^sim + sum E") {
  ScatteringSolution sol = with_b(base(), 0.01, 1.0);
  ThermoPoint tp;
  tp.b = 0.01;
  tp.nu = sol.nu();
  MinimizerState st = solve_condensate(tp, 0.0, sol, kSpec);
  Profiles pr = minimizer_profiles(st);
  const double fcan = fcan_energy(tp, pr.gamma, pr.alpha, st.rho0, sol, kSpec);
  const double fsim = fsim_energy(tp, st, kSpec);
  Diagnostics dg = error_diagnostics(tp, st, kSpec);
  CHECK(std::abs(fcan - fsim - (dg.e1 + dg.e2 + dg.e3 + dg.e4)) <= 1e-6 * std::abs(fcan));
  CHECK(dg.a1_less > 0);
  CHECK(dg.a1_greater > 0);
  CHECK(dg.a1_bound == doctest::Approx(0.01 * std::pow(dg.a1_less + dg.a1_greater, 2)));
  CHECK(dg.kernel_evaluations <= 2 * 100000);
}

TEST_CASE("idealized mode has no E2..E4") {
  ScatteringSolution sol = idealized_solution(0.01, 1.0, 8 * kPi);
  ThermoPoint tp;
  tp.b = 0.01;
  MinimizerState st = solve_condensate(tp, 1.0, sol, kSpec);
  Diagnostics dg = error_diagnostics(tp, st, kSpec, false);
  CHECK(dg.e2 == doctest::Approx(0.0).scale(1e-12));
  CHECK(dg.e3 == doctest::Approx(0.0).scale(1e-12));
  CHECK(dg.e4 == doctest::Approx(0.0).scale(1e-12));
}
