#include "dilute/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dilute/constants.hpp"
#include "dilute/errors.hpp"

namespace dilute {

namespace bq = boost::math::quadrature;

void QuadSpec::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0))
    throw InvalidArgument("quadrature tolerances must be positive");
  if (!(tail_cut > 0)) throw InvalidArgument("tail_cut must be positive");
  if (tail_order < 2) throw InvalidArgument("tail_order must be at least 2");
  if (max_subdivisions < 1)
    throw InvalidArgument("max_subdivisions must be positive");
}

QuadSpec QuadSpec::loosened(double factor) const {
  QuadSpec s = *this;
  s.abs_tol *= factor;
  s.rel_tol *= factor;
  return s;
}

namespace {

struct Work {
  Panel panel;
  bool singular_lo = false;
  bool singular_hi = false;
  bool operator<(const Work& o) const { return panel.error < o.panel.error; }
};

Panel gk_panel(const ScalarFn& f, double lo, double hi, int& evals) {
  double err = 0.0;
  auto guarded = [&](double x) {
    double y = f(x);
    if (!std::isfinite(y))
      throw SingularEndpoint("non-finite integrand at x = " + std::to_string(x));
    return y;
  };
  double v = bq::gauss_kronrod<double, 21>::integrate(guarded, lo, hi, 0, 0.0, &err);
  evals += 21;
  return {lo, hi, v, err};
}

Panel de_panel(const ScalarFn& f, double lo, double hi, double tol, int& evals) {
  bq::tanh_sinh<double> ts(12);
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  auto counted = [&](double x) {
    ++evals;
    double y = f(x);
    return std::isfinite(y) ? y : 0.0;
  };
  double v = ts.integrate(counted, lo, hi, tol, &err, &l1, &levels);
  return {lo, hi, v, err};
}

}  // namespace

QuadResult integrate_breaks(const ScalarFn& f, std::vector<double> breaks,
                            const QuadSpec& spec, std::vector<Panel>* panels,
                            Endpoint lo_class, Endpoint hi_class) {
  spec.validate();
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  QuadResult res;
  if (breaks.size() < 2) return res;

  const double de_tol = std::max(spec.rel_tol * 1e-2, 1e-15);
  std::priority_queue<Work> heap;
  double total = 0.0, total_err = 0.0;
  int evals = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Work w;
    w.singular_lo = (i == 0 && lo_class != Endpoint::Regular);
    w.singular_hi = (i + 2 == breaks.size() && hi_class != Endpoint::Regular);
    if (w.singular_lo || w.singular_hi)
      w.panel = de_panel(f, breaks[i], breaks[i + 1], de_tol, evals);
    else
      w.panel = gk_panel(f, breaks[i], breaks[i + 1], evals);
    total += w.panel.value;
    total_err += w.panel.error;
    heap.push(w);
  }

  int subdivisions = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (subdivisions >= spec.max_subdivisions)
      throw NonConvergence("subdivision budget exhausted (error " +
                           std::to_string(total_err) + ", value " +
                           std::to_string(total) + ")");
    Work w = heap.top();
    heap.pop();
    const double mid = 0.5 * (w.panel.lo + w.panel.hi);
    if (!(mid > w.panel.lo && mid < w.panel.hi))
      throw NonConvergence("panel collapsed to machine resolution");
    Work a, b;
    a.singular_lo = w.singular_lo;
    b.singular_hi = w.singular_hi;
    a.panel = a.singular_lo ? de_panel(f, w.panel.lo, mid, de_tol, evals)
                            : gk_panel(f, w.panel.lo, mid, evals);
    b.panel = b.singular_hi ? de_panel(f, mid, w.panel.hi, de_tol, evals)
                            : gk_panel(f, mid, w.panel.hi, evals);
    total += a.panel.value + b.panel.value - w.panel.value;
    total_err += a.panel.error + b.panel.error - w.panel.error;
    heap.push(a);
    heap.push(b);
    ++subdivisions;
  }

  // re-sum to drop the drift of incremental updates
  total = 0.0;
  total_err = 0.0;
  std::vector<Panel> out;
  out.reserve(heap.size());
  while (!heap.empty()) {
    out.push_back(heap.top().panel);
    heap.pop();
  }
  std::sort(out.begin(), out.end(),
            [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  for (const Panel& p : out) {
    total += p.value;
    total_err += p.error;
  }
  if (panels) *panels = std::move(out);
  res.value = total;
  res.error = total_err;
  res.evaluations = evals;
  return res;
}

QuadResult integrate_interval(const ScalarFn& f, double lo, double hi,
                              const QuadSpec& spec, Endpoint lo_class,
                              Endpoint hi_class) {
  spec.validate();
  if (hi == lo) return {};
  if (std::isfinite(hi)) {
    if (hi < lo) {
      QuadResult r = integrate_interval(f, hi, lo, spec, hi_class, lo_class);
      r.value = -r.value;
      return r;
    }
    return integrate_breaks(f, {lo, hi}, spec, nullptr, lo_class, hi_class);
  }
  // semi-infinite: geometric breaks up to the cut, then a power-law tail
  const double cut = std::max(lo, 0.0) + spec.tail_cut;
  std::vector<double> breaks{lo};
  for (double x = std::max(lo, 0.0) + 1.0; x < cut; x *= 4.0) breaks.push_back(x);
  breaks.push_back(cut);
  QuadResult r = integrate_breaks(f, breaks, spec, nullptr, lo_class, Endpoint::Regular);
  const double tail = f(cut) * cut / (spec.tail_order - 1);
  r.value += tail;
  r.error += std::abs(tail) * 1e-2;
  return r;
}

namespace {

// Log-variable integrand t -> g(e^t) e^t for the radial measure.
struct RadialSetup {
  double p0 = 0.0;     // linear piece [lo, p0] when lo == 0
  double top = 0.0;    // finite upper limit actually integrated
  bool tail = false;
};

RadialSetup radial_setup(const RadialFunction& f, double lo, double hi,
                         const QuadSpec& spec) {
  if (lo < 0 || hi < lo) throw InvalidArgument("radial limits must satisfy 0 <= lo <= hi");
  RadialSetup s;
  s.tail = !std::isfinite(hi);
  s.top = s.tail ? std::max(spec.tail_cut * f.scale, 2.0 * lo) : hi;
  if (s.tail && spec.tail_order <= 2)
    throw InvalidArgument("radial tail needs tail_order > 2");
  if (lo == 0.0) {
    if (f.at_zero == Endpoint::InverseSquare)
      throw SingularEndpoint("p^-2 profile is not integrable against p dp at 0");
    s.p0 = std::min(s.top, 1e-6 * f.scale);
  }
  return s;
}

std::vector<double> log_breaks(double a, double b, double ratio = 4.0) {
  std::vector<double> t{std::log(a)};
  const double step = std::log(ratio);
  for (double x = t.front() + step; x < std::log(b); x += step) t.push_back(x);
  t.push_back(std::log(b));
  return t;
}

}  // namespace

QuadResult integrate_radial_2d(const RadialFunction& f, double lo, double hi,
                               const QuadSpec& spec) {
  spec.validate();
  if (hi == lo) return {};
  RadialSetup s = radial_setup(f, lo, hi, spec);
  QuadResult out;
  double start = lo;
  if (lo == 0.0) {
    auto lin = [&](double p) { return f(p) * p; };
    QuadResult r = integrate_breaks(lin, {0.0, s.p0}, spec, nullptr, f.at_zero);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    start = s.p0;
  }
  if (s.top > start) {
    auto logf = [&](double t) {
      const double p = std::exp(t);
      return f(p) * p * p;
    };
    QuadResult r = integrate_breaks(logf, log_breaks(start, s.top), spec);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
  }
  if (s.tail) {
    const double tail = f(s.top) * s.top * s.top / (spec.tail_order - 2);
    out.value += tail;
    out.error += std::abs(tail) * 1e-2;
  }
  out.value /= kTwoPi;
  out.error /= kTwoPi;
  return out;
}

std::vector<Panel> radial_panels(const RadialFunction& f, double lo, double hi,
                                 const QuadSpec& spec) {
  RadialSetup s = radial_setup(f, lo, hi, spec);
  std::vector<Panel> out;
  double start = lo;
  if (lo == 0.0) {
    out.push_back({0.0, s.p0, 0.0, 0.0});
    start = s.p0;
  }
  if (s.top > start) {
    auto logf = [&](double t) {
      const double p = std::exp(t);
      return std::abs(f(p)) * p * p;
    };
    std::vector<Panel> tp;
    integrate_breaks(logf, log_breaks(start, s.top, 64.0), spec, &tp);
    for (const Panel& q : tp)
      out.push_back({std::exp(q.lo), std::exp(q.hi), q.value, q.error});
  }
  return out;
}

double angular_kernel(const RadialFunction& g, double p, double q,
                      const QuadSpec& spec) {
  const double hi = std::max(p, q);
  const double lo = std::min(p, q);
  const double diff = hi - lo;
  const double prod = 4.0 * hi * lo;
  auto h = [&](double th) {
    const double s = std::sin(0.5 * th);
    return g(std::sqrt(diff * diff + prod * s * s));
  };
  if (prod == 0.0) return kTwoPi * g(diff);
  // the integrand varies fastest near theta = 0 when hi*lo >> scale^2
  std::vector<double> breaks{0.0};
  const double x = g.scale / std::sqrt(prod);
  if (x < 0.25) {
    for (double th = 2.0 * std::asin(x); th < 0.5 * kPi; th *= 4.0) breaks.push_back(th);
  }
  breaks.push_back(kPi);
  QuadSpec s = spec;
  s.max_subdivisions = std::max(spec.max_subdivisions, 200);
  return 2.0 * integrate_breaks(h, breaks, s).value;
}

RadialGrid radial_grid(const RadialFunction& f, double lo, double hi,
                       const QuadSpec& spec, int max_nodes) {
  constexpr int kOrder = 10;
  const auto& xs = bq::gauss<double, kOrder>::abscissa();
  const auto& ws = bq::gauss<double, kOrder>::weights();
  QuadSpec s = spec;
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<Panel> panels = radial_panels(f, lo, hi, s);
    // a far cutoff leaves many decades of negligible mass at the top
    double mass = 0.0;
    for (const Panel& pn : panels) mass += std::abs(pn.value);
    double tail = 0.0;
    while (panels.size() > 1) {
      tail += std::abs(panels.back().value);
      if (tail > 1e-3 * spec.rel_tol * mass) break;
      panels.pop_back();
    }
    if (static_cast<int>(panels.size()) * kOrder > max_nodes) {
      s = s.loosened(4.0);
      continue;
    }
    RadialGrid grid;
    for (const Panel& pn : panels) {
      const bool linear = pn.lo == 0.0;
      const double a = linear ? pn.lo : std::log(pn.lo);
      const double b = linear ? pn.hi : std::log(pn.hi);
      const double c = 0.5 * (a + b), r = 0.5 * (b - a);
      auto push = [&](double t, double w) {
        if (linear) {
          grid.nodes.push_back(t);
          grid.weights.push_back(w * r);
        } else {
          const double p = std::exp(t);
          grid.nodes.push_back(p);
          grid.weights.push_back(w * r * p);
        }
      };
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0.0) {
          push(c, ws[i]);
        } else {
          push(c - r * xs[i], ws[i]);
          push(c + r * xs[i], ws[i]);
        }
      }
    }
    return grid;
  }
  throw NonConvergence("radial grid exceeds node budget");
}

PairingResult radial_pairing(const RadialFunction& f, const RadialFunction& g,
                             const RadialFunction& k, double lo, double hi,
                             const QuadSpec& spec, int budget) {
  // one grid for both factors, driven by |f| + |g|
  RadialFunction both{[&](double p) { return std::abs(f(p)) + std::abs(g(p)); },
                      std::min(f.scale, g.scale), Endpoint::Regular};
  const int max_nodes = static_cast<int>(std::sqrt(2.0 * budget));
  RadialGrid grid = radial_grid(both, lo, hi, spec, max_nodes);
  const std::size_t n = grid.nodes.size();
  std::vector<double> fv(n), gv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = grid.nodes[i];
    fv[i] = f(p) * p * grid.weights[i];
    gv[i] = g(p) * p * grid.weights[i];
  }
  QuadSpec ks = spec;
  ks.abs_tol = std::max(spec.abs_tol, 1e-300);
  PairingResult out;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double kij = angular_kernel(k, grid.nodes[i], grid.nodes[j], ks);
      ++out.kernel_evaluations;
      const double w = fv[i] * gv[j] + (i == j ? 0.0 : fv[j] * gv[i]);
      sum += w * kij;
    }
  }
  if (out.kernel_evaluations > budget)
    throw NonConvergence("kernel evaluation budget exceeded");
  out.value = kTwoPi * sum;
  return out;
}

}  // namespace dilute
