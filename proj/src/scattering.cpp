#include "dilute/scattering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/detail/bessel_j0.hpp>
#include <boost/numeric/odeint.hpp>

#include "dilute/constants.hpp"
#include "dilute/errors.hpp"

namespace dilute {

namespace bq = boost::math::quadrature;
namespace ode = boost::numeric::odeint;

void PotentialSpec::validate() const {
  const double R = support_radius;
  if (!(R > 0) || !std::isfinite(R)) throw InvalidPotential("support radius must be positive");
  if (!v.eval) throw InvalidPotential("missing evaluator");
  bool nonzero = false;
  for (int i = 0; i <= 2000; ++i) {
    const double r = R * i / 2000.0;
    const double x = v(r);
    if (!std::isfinite(x)) throw InvalidPotential("V not finite at r = " + std::to_string(r));
    if (x < 0) throw InvalidPotential("V negative at r = " + std::to_string(r));
    if (x > 0) nonzero = true;
  }
  for (double f : {1.0001, 1.5, 3.0})
    if (v(f * R) != 0.0) throw InvalidPotential("V does not vanish beyond the support radius");
  if (!nonzero) throw InvalidPotential("V vanishes identically");
}

PotentialSpec smooth_bump(double amplitude, double radius) {
  if (!(amplitude > 0) || !(radius > 0))
    throw InvalidPotential("bump amplitude and radius must be positive");
  PotentialSpec p;
  p.support_radius = radius;
  p.smoothness_note = "C-infinity bump";
  p.v.scale = radius;
  p.v.eval = [amplitude, radius](double r) {
    const double x = r / radius;
    if (x >= 1.0) return 0.0;
    return amplitude * std::exp(-1.0 / (1.0 - x * x));
  };
  return p;
}

PotentialSpec tabulated_potential(std::vector<double> r, std::vector<double> v,
                                  double mollify) {
  if (r.size() != v.size() || r.size() < 2) throw InvalidPotential("table needs at least two (r, V) rows");
  if (!(mollify > 0)) throw InvalidPotential("mollifier width must be positive");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (v[i] < 0) throw InvalidPotential("negative V in table at r = " + std::to_string(r[i]));
    if (i > 0 && !(r[i] > r[i - 1])) throw InvalidPotential("table radii must increase");
  }
  if (r.front() < 0) throw InvalidPotential("table radii must be nonnegative");
  auto lin = [r, v](double x) {
    x = std::abs(x);
    if (x >= r.back()) return 0.0;
    if (x <= r.front()) return v.front();
    auto it = std::upper_bound(r.begin(), r.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - r.begin());
    const double t = (x - r[j - 1]) / (r[j] - r[j - 1]);
    return (1 - t) * v[j - 1] + t * v[j];
  };
  // normalised bump kernel on 32 Gauss nodes
  constexpr int kN = 30;
  const auto& xs = bq::gauss<double, kN>::abscissa();
  const auto& ws = bq::gauss<double, kN>::weights();
  std::vector<double> s, w;
  double norm = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int sign : {-1, 1}) {
      if (xs[i] == 0.0 && sign > 0) continue;
      const double x = sign * xs[i];
      const double k = std::exp(-1.0 / (1.0 - x * x)) * ws[i];
      s.push_back(x * mollify);
      w.push_back(k);
      norm += k;
    }
  }
  for (double& k : w) k /= norm;
  PotentialSpec p;
  p.support_radius = r.back() + mollify;
  p.smoothness_note = "tabulated, mollified";
  p.v.scale = p.support_radius;
  const double R = p.support_radius;
  p.v.eval = [lin, s, w, R](double x) {
    if (x >= R) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) acc += w[i] * lin(x - s[i]);
    return acc;
  };
  return p;
}

PotentialSpec load_potential_table(const std::string& path, double mollify) {
  std::ifstream in(path);
  if (!in) throw InvalidPotential("cannot open potential table " + path);
  std::vector<double> r, v;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    double a, b;
    if (ls >> a >> b) {
      r.push_back(a);
      v.push_back(b);
    }
  }
  return tabulated_potential(std::move(r), std::move(v), mollify);
}

PotentialSpec rescale_potential(const PotentialSpec& pot, double lambda) {
  PotentialSpec p = pot;
  p.support_radius = pot.support_radius / lambda;
  p.v.scale = pot.v.scale / lambda;
  auto f = pot.v.eval;
  p.v.eval = [f, lambda](double r) { return lambda * lambda * f(lambda * r); };
  return p;
}

double b_of(double rho, double a) {
  const double x = rho * a * a;
  if (!(x < 1.0)) throw DensityTooHigh("rho a^2 = " + std::to_string(x) + " >= 1");
  if (!(x > 0.0)) throw InvalidArgument("rho a^2 must be positive");
  return 1.0 / std::abs(std::log(x));
}

double epsilon_of(double a, double b) {
  return 2.0 / (a * std::exp(kEulerGamma)) * std::exp(-0.5 / b);
}

// Piecewise Chebyshev tables for V^ and Vw0^ with a Taylor series near 0.
struct FourierTable {
  static constexpr int kDeg = 20;
  double p_series = 0.0;
  double p_max = 0.0;
  double h = 0.0;
  std::vector<double> mom_v, mom_vw;  // 2 pi \int r^{2k} f r dr
  std::vector<double> vals_v, vals_vw;
  std::vector<double> r_nodes, r_wv, r_wvw;  // GL nodes with f r weights folded in

  static double cheb_node(int j) { return std::cos(kPi * j / kDeg); }

  // sum_{k >= first} (-1)^k (p/2)^{2k} / (k!)^2 M_{2k}
  static double series(const std::vector<double>& mom, double p, int first) {
    double term = 1.0, acc = 0.0;
    const double x = 0.25 * p * p;
    for (std::size_t k = 0; k < mom.size(); ++k) {
      if (k > 0) term *= -x / (static_cast<double>(k) * k);
      if (static_cast<int>(k) >= first) acc += term * mom[k];
    }
    return acc;
  }

  double interp(const std::vector<double>& vals, double p) const {
    int i = static_cast<int>((p - p_series) / h);
    i = std::clamp(i, 0, static_cast<int>(vals.size() / (kDeg + 1)) - 1);
    const double a = p_series + i * h;
    const double x = 2.0 * (p - a) / h - 1.0;
    const double* f = &vals[static_cast<std::size_t>(i) * (kDeg + 1)];
    double num = 0.0, den = 0.0;
    for (int j = 0; j <= kDeg; ++j) {
      const double d = x - cheb_node(j);
      if (d == 0.0) return f[j];
      double w = (j % 2 == 0 ? 1.0 : -1.0) / d;
      if (j == 0 || j == kDeg) w *= 0.5;
      num += w * f[j];
      den += w;
    }
    return num / den;
  }

  double eval(bool vw, double p, bool delta) const {
    p = std::abs(p);
    const auto& mom = vw ? mom_vw : mom_v;
    if (p <= p_series) return series(mom, p, delta ? 1 : 0);
    // beyond the table the transform of a smooth bump is below double resolution
    double v = p <= p_max ? interp(vw ? vals_vw : vals_v, p) : 0.0;
    return delta ? v - mom[0] : v;
  }
};

ScatteringSolution solve_scattering(const PotentialSpec& pot, double rho_ref,
                                    const QuadSpec& spec,
                                    const ScatterOptions& opt) {
  pot.validate();
  spec.validate();
  if (!(rho_ref > 0)) throw InvalidArgument("rho_ref must be positive");
  const double R = pot.support_radius;

  constexpr int kGL = 16;
  const auto& gx = bq::gauss<double, kGL>::abscissa();
  const auto& gw = bq::gauss<double, kGL>::weights();
  std::vector<double> nodes, weights;
  const double hp = R / opt.panels;
  for (int k = 0; k < opt.panels; ++k) {
    const double c = (k + 0.5) * hp, half = 0.5 * hp;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      nodes.push_back(c - half * gx[i]);
      weights.push_back(half * gw[i]);
      if (gx[i] != 0.0) {
        nodes.push_back(c + half * gx[i]);
        weights.push_back(half * gw[i]);
      }
    }
  }
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return nodes[x] < nodes[y]; });
  {
    std::vector<double> n2, w2;
    for (auto i : order) {
      n2.push_back(nodes[i]);
      w2.push_back(weights[i]);
    }
    nodes.swap(n2);
    weights.swap(w2);
  }

  // u'' + u'/r = V u / 2 as (u, r u')
  using State = std::array<double, 2>;
  auto rhs = [&](const State& y, State& dy, double r) {
    dy[0] = y[1] / r;
    dy[1] = 0.5 * r * pot.v(r) * y[0];
  };
  const double r0 = 1e-8 * R;
  const double v0 = pot.v(0.0);
  State y{1.0 + v0 * r0 * r0 / 8.0, v0 * r0 * r0 / 4.0};

  std::vector<double> times{r0};
  times.insert(times.end(), nodes.begin(), nodes.end());
  times.push_back(R);
  const int nfit = opt.fit_points;
  if (nfit < 3 || !(opt.fit_lo > 1.0) || !(opt.fit_hi > opt.fit_lo))
    throw InvalidArgument("fit window needs 1 < fit_lo < fit_hi and at least 3 points");
  for (int k = 0; k < nfit; ++k)
    times.push_back(opt.fit_lo * R + (opt.fit_hi - opt.fit_lo) * R * k / (nfit - 1));
  std::vector<double> u(times.size());
  std::size_t idx = 0;
  auto stepper = ode::make_dense_output(opt.ode_tol, opt.ode_tol, ode::runge_kutta_dopri5<State>());
  ode::integrate_times(stepper, rhs, y, times.begin(), times.end(), 1e-3 * hp,
                       [&](const State& s, double) { u[idx++] = s[0]; });

  // log fit on [fit_lo R, fit_hi R]
  Eigen::MatrixXd X(nfit, 2);
  Eigen::VectorXd Y(nfit);
  for (int k = 0; k < nfit; ++k) {
    const std::size_t j = times.size() - nfit + k;
    X(k, 0) = 1.0;
    X(k, 1) = std::log(times[j]);
    Y(k) = u[j];
  }
  Eigen::Vector2d coef = X.colPivHouseholderQr().solve(Y);
  const double A = coef(0), B = coef(1);
  const double fit_res = (X * coef - Y).cwiseAbs().maxCoeff() / Y.cwiseAbs().maxCoeff();
  if (!(B > 0) || !std::isfinite(B) || !(fit_res <= opt.fit_tol))
    throw NoLogAsymptote("log fit residual " + std::to_string(fit_res) + ", slope " + std::to_string(B));

  ScatteringSolution sol;
  sol.a = std::exp(-A / B);
  sol.rho_ref = rho_ref;
  sol.b = b_of(rho_ref, sol.a);
  sol.epsilon = epsilon_of(sol.a, sol.b);
  sol.support_radius = R;
  sol.fit_residual = fit_res;

  auto table = std::make_shared<FourierTable>();
  const std::size_t n = nodes.size();
  std::vector<double> w0n(n), vn(n);
  double half_int = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w0n[i] = u[i + 1] / B;
    vn[i] = pot.v(nodes[i]);
    half_int += 0.5 * kTwoPi * weights[i] * vn[i] * w0n[i] * nodes[i];
    table->r_nodes.push_back(nodes[i]);
    table->r_wv.push_back(weights[i] * vn[i] * nodes[i]);
    table->r_wvw.push_back(weights[i] * vn[i] * w0n[i] * nodes[i]);
  }
  sol.half_vw0_integral = half_int;
  constexpr int kMoments = 14;
  for (int k = 0; k < kMoments; ++k) {
    double mv = 0.0, mw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r2k = std::pow(nodes[i], 2 * k);
      mv += r2k * table->r_wv[i];
      mw += r2k * table->r_wvw[i];
    }
    table->mom_v.push_back(kTwoPi * mv);
    table->mom_vw.push_back(kTwoPi * mw);
  }
  table->p_series = 0.5 / R;
  table->h = 4.0 / R;
  const int npanel = static_cast<int>(std::ceil((opt.p_table / R - table->p_series) / table->h));
  table->p_max = table->p_series + npanel * table->h;
  sol.p_cut = table->p_max;
  for (int i = 0; i < npanel; ++i) {
    const double a = table->p_series + i * table->h;
    for (int j = 0; j <= FourierTable::kDeg; ++j) {
      const double p = a + 0.5 * table->h * (FourierTable::cheb_node(j) + 1.0);
      double sv = 0.0, sw = 0.0;
      for (std::size_t m = 0; m < n; ++m) {
        const double j0 = boost::math::detail::bessel_j0(p * nodes[m]);
        sv += table->r_wv[m] * j0;
        sw += table->r_wvw[m] * j0;
      }
      table->vals_v.push_back(kTwoPi * sv);
      table->vals_vw.push_back(kTwoPi * sw);
    }
  }

  const double twob = 2.0 * sol.b;
  const double ps = 1.0 / R;
  sol.vhat = {[table](double p) { return table->eval(false, p, false); }, ps, Endpoint::Regular};
  sol.vhat_delta = {[table](double p) { return table->eval(false, p, true); }, ps, Endpoint::Regular};
  sol.vwhat = {[table, twob](double p) { return twob * table->eval(true, p, false); }, ps, Endpoint::Regular};
  sol.vwhat_delta = {[table, twob](double p) { return twob * table->eval(true, p, true); }, ps, Endpoint::Regular};
  sol.vhat0 = table->mom_v[0];
  sol.vwhat0 = twob * table->mom_vw[0];

  // w0 on [0, R] by cubic interpolation of the ODE samples, exact log beyond
  auto rs = std::make_shared<std::vector<double>>(times.begin(), times.begin() + 1 + static_cast<long>(n));
  auto us = std::make_shared<std::vector<double>>();
  for (std::size_t i = 0; i <= n; ++i) us->push_back(u[i] / B);
  const double a = sol.a;
  sol.w0 = {[rs, us, R, a](double r) {
              if (r >= R) return std::log(r / a);
              if (r <= rs->front()) return us->front();
              auto it = std::upper_bound(rs->begin(), rs->end(), r);
              std::size_t j = static_cast<std::size_t>(it - rs->begin());
              j = std::clamp<std::size_t>(j, 2, rs->size() - 2);
              // 4-point Lagrange
              double acc = 0.0;
              for (std::size_t m = j - 2; m < j + 2; ++m) {
                double l = 1.0;
                for (std::size_t q = j - 2; q < j + 2; ++q)
                  if (q != m) l *= (r - (*rs)[q]) / ((*rs)[m] - (*rs)[q]);
                acc += l * (*us)[m];
              }
              return acc;
            },
            R, Endpoint::Regular};
  auto w0f = sol.w0.eval;
  sol.w = {[w0f, twob](double r) { return twob * w0f(r); }, R, Endpoint::Regular};

  CurvatureFit cf = check_curvature(sol, spec);
  sol.curvature_v = cf.curvature_v;
  sol.curvature_vw = cf.curvature_vw;
  return sol;
}

namespace {

RadialFunction stretch(const RadialFunction& f, double lambda, double factor = 1.0) {
  auto g = f.eval;
  return {[g, lambda, factor](double p) { return factor * g(p / lambda); }, f.scale * lambda, f.at_zero};
}

}  // namespace

ScatteringSolution with_b(const ScatteringSolution& sol, double b, double rho) {
  if (!(b > 0 && b < 1)) throw InvalidArgument("b must lie in (0, 1)");
  if (!(rho > 0)) throw InvalidArgument("rho must be positive");
  if (sol.idealized) return idealized_solution(b, rho, sol.nu());
  const double a_new = std::exp(-0.5 / b) / std::sqrt(rho);
  const double lambda = sol.a / a_new;
  ScatteringSolution s = sol;
  s.a = a_new;
  s.rho_ref = rho;
  s.b = b;
  s.epsilon = epsilon_of(a_new, b);
  s.support_radius = sol.support_radius / lambda;
  s.p_cut = sol.p_cut * lambda;
  const double ratio = b / sol.b;  // Vw^ carries the factor 2b
  s.vhat = stretch(sol.vhat, lambda);
  s.vhat_delta = stretch(sol.vhat_delta, lambda);
  s.vwhat = stretch(sol.vwhat, lambda, ratio);
  s.vwhat_delta = stretch(sol.vwhat_delta, lambda, ratio);
  s.vwhat0 = sol.vwhat0 * ratio;
  auto w0 = sol.w0.eval;
  s.w0 = {[w0, lambda](double r) { return w0(lambda * r); }, sol.w0.scale / lambda, Endpoint::Regular};
  s.w = {[w0, lambda, b](double r) { return 2.0 * b * w0(lambda * r); }, sol.w0.scale / lambda,
         Endpoint::Regular};
  return s;
}

ScatteringSolution idealized_solution(double b, double rho, double nu) {
  if (!(b > 0 && b < 1)) throw InvalidArgument("b must lie in (0, 1)");
  if (!(rho > 0) || !(nu > 0)) throw InvalidArgument("rho and nu must be positive");
  ScatteringSolution s;
  s.idealized = true;
  s.b = b;
  s.rho_ref = rho;
  s.a = std::exp(-0.5 / b) / std::sqrt(rho);
  s.epsilon = epsilon_of(s.a, b);
  s.support_radius = 0.0;
  const double vw0 = 8.0 * kPi * b, v0 = nu * b;
  const double ps = 1.0 / s.a;
  s.vhat = {[v0](double) { return v0; }, ps, Endpoint::Regular};
  s.vwhat = {[vw0](double) { return vw0; }, ps, Endpoint::Regular};
  s.vhat_delta = {[](double) { return 0.0; }, ps, Endpoint::Regular};
  s.vwhat_delta = s.vhat_delta;
  s.vhat0 = v0;
  s.vwhat0 = vw0;
  const double a = s.a;
  s.w0 = {[a](double r) { return std::log(r / a); }, a, Endpoint::Log};
  s.w = {[a, b](double r) { return 2.0 * b * std::log(r / a); }, a, Endpoint::Log};
  s.half_vw0_integral = kTwoPi;
  return s;
}

double fourier_radial(const RadialFunction& f, double p, double support,
                      const QuadSpec& spec) {
  p = std::abs(p);
  if (p == 0.0) {
    auto g = [&](double r) { return f(r) * r; };
    return kTwoPi * integrate_interval(g, 0.0, support, spec, f.at_zero).value;
  }
  auto g = [&](double r) { return boost::math::cyl_bessel_j(0, p * r) * f(r) * r; };
  std::vector<double> breaks{0.0};
  const bool finite = std::isfinite(support);
  for (int k = 1;; ++k) {
    const double z = boost::math::cyl_bessel_j_zero(0.0, k) / p;
    if (finite && z >= support) break;
    breaks.push_back(z);
    if (!finite && k >= 8) break;
  }
  if (finite) {
    breaks.push_back(support);
    return kTwoPi * integrate_breaks(g, breaks, spec, nullptr, f.at_zero).value;
  }
  double head = integrate_breaks(g, breaks, spec, nullptr, f.at_zero).value;
  // alternating tail between further zeros, accelerated by repeated averaging
  std::vector<double> partial;
  double acc = head;
  double prev = breaks.back();
  const QuadSpec s = spec.loosened(1e-2);
  for (int k = static_cast<int>(breaks.size()); k < 400; ++k) {
    const double z = boost::math::cyl_bessel_j_zero(0.0, k) / p;
    const double term = integrate_interval(g, prev, z, s).value;
    acc += term;
    prev = z;
    partial.push_back(acc);
    if (partial.size() >= 16 && std::abs(term) < spec.abs_tol) break;
  }
  std::size_t m = std::min<std::size_t>(partial.size(), 12);
  std::vector<double> t(partial.end() - static_cast<long>(m), partial.end());
  while (t.size() > 1) {
    for (std::size_t i = 0; i + 1 < t.size(); ++i) t[i] = 0.5 * (t[i] + t[i + 1]);
    t.pop_back();
  }
  return kTwoPi * t.front();
}

CurvatureFit check_curvature(const ScatteringSolution& sol, const QuadSpec&) {
  CurvatureFit out;
  if (sol.idealized) return out;
  const double window = std::min(1.0 / (4.0 * sol.a), 1.0 / sol.support_radius);
  out.window = window;
  constexpr int kPts = 32, kTerms = 4;
  if (!(window > 0) || !std::isfinite(window)) throw FitDegenerate("empty fit window");
  Eigen::MatrixXd X(kPts, kTerms);
  Eigen::VectorXd yv(kPts), yw(kPts);
  for (int i = 0; i < kPts; ++i) {
    const double p = window * (i + 1) / kPts;
    const double p2 = p * p;
    double m = p2;
    for (int j = 0; j < kTerms; ++j, m *= p2) X(i, j) = m;
    yv(i) = sol.vhat_delta(p);
    yw(i) = sol.vwhat_delta(p);
  }
  auto qr = X.colPivHouseholderQr();
  if (qr.rank() < kTerms) throw FitDegenerate("fit matrix rank deficient");
  Eigen::VectorXd cv = qr.solve(yv), cw = qr.solve(yw);
  const double a2 = sol.a * sol.a;
  out.curvature_v = cv(0) / a2;
  out.curvature_vw = cw(0) / a2;
  auto rel = [&](const Eigen::VectorXd& c, const Eigen::VectorXd& y) {
    const double s = y.cwiseAbs().maxCoeff();
    return s > 0 ? (X * c - y).cwiseAbs().maxCoeff() / s : 0.0;
  };
  out.residual_v = rel(cv, yv);
  out.residual_vw = rel(cw, yw);
  return out;
}

}  // namespace dilute
