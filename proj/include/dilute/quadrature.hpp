#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace dilute {

struct QuadSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  // Semi-infinite integrals are cut at tail_cut (in units of the function's
  // scale hint) and completed with a power-law tail of order tail_order.
  double tail_cut = 1e4;
  int tail_order = 4;

  void validate() const;
  QuadSpec loosened(double factor) const;
};

// Behaviour of a radial profile at p -> 0.
enum class Endpoint { Regular, Log, InverseSquare };

struct RadialFunction {
  std::function<double(double)> eval;
  double scale = 1.0;
  Endpoint at_zero = Endpoint::Regular;

  double operator()(double p) const { return eval(p); }
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double error = 0.0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using ScalarFn = std::function<double(double)>;

// Global adaptive Gauss-Kronrod on [lo, hi]; hi may be kInf.
QuadResult integrate_interval(const ScalarFn& f, double lo, double hi,
                              const QuadSpec& spec,
                              Endpoint lo_class = Endpoint::Regular,
                              Endpoint hi_class = Endpoint::Regular);

// Same driver with caller-supplied initial breakpoints. Accepted panels are
// written to *panels when non-null.
QuadResult integrate_breaks(const ScalarFn& f, std::vector<double> breaks,
                            const QuadSpec& spec,
                            std::vector<Panel>* panels = nullptr,
                            Endpoint lo_class = Endpoint::Regular,
                            Endpoint hi_class = Endpoint::Regular);

// (2 pi)^-1 \int_lo^hi f(p) p dp, i.e. (2 pi)^-2 \int f over an annulus in R^2.
QuadResult integrate_radial_2d(const RadialFunction& f, double lo, double hi,
                               const QuadSpec& spec);

// Accepted panels (in p) of the adaptive partition used for \int |f| p dp.
std::vector<Panel> radial_panels(const RadialFunction& f, double lo, double hi,
                                 const QuadSpec& spec);

// K(p,q) = \int_0^{2pi} g(|p - q e^{i theta}|) d theta.
double angular_kernel(const RadialFunction& g, double p, double q,
                      const QuadSpec& spec);

struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;  // weights for \int h(p) dp
};

// Product-rule grid on [lo, hi] built from the adaptive partition of f.
RadialGrid radial_grid(const RadialFunction& f, double lo, double hi,
                       const QuadSpec& spec, int max_nodes);

// \int\int f(p) g(q) k(|p - q|) dp dq over R^2 x R^2 for radial f, g, k,
// evaluated as 2 pi \int\int f g K p q dp dq on a product grid.
struct PairingResult {
  double value = 0.0;
  int kernel_evaluations = 0;
};
PairingResult radial_pairing(const RadialFunction& f, const RadialFunction& g,
                             const RadialFunction& k, double lo, double hi,
                             const QuadSpec& spec, int budget = 100000);

}  // namespace dilute
