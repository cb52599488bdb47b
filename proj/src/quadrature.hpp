#pragma once

#include <functional>

namespace cointoss {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // Richardson estimate
  int evaluations = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tolerance = 1e-10;
  int min_level = 5;   // levels before convergence is tested
  int max_level = 20;
};

// Composite Simpson on [a, b] with successive panel doubling and one
// Richardson step. The error estimate is |S(2n) − S(n)| / 15.
QuadratureResult integrate_smooth(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options = {});

// Tripling levels are capped here (3^13 ≈ 1.6e6 panels).
inline constexpr int kMaxOpenLevel = 13;

// Open composite midpoint rule with panel tripling and Richardson steps;
// never evaluates f at a or b. Levels count triplings (min_level 5 = 243
// panels). Error estimate |R(3n) − R(n)| / 80.
QuadratureResult integrate_open(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& options = {});

// A point of [lo, hi] together with its distances to both ends, computed
// without cancellation near the ends.
struct IntervalPoint {
  double x;
  double from_lo;  // x − lo
  double to_hi;    // hi − x
};

// ∫_lo^hi f(x) dx for integrands with (x − lo)^(±1/2) or (hi − x)^(±1/2)
// behaviour at the ends. Substitutes x = mid − half·cos t, which makes both
// kinds of end behaviour smooth in t, then calls integrate_open on (0, π).
QuadratureResult integrate_endpoint_singular(const std::function<double(const IntervalPoint&)>& f,
                                             double lo, double hi,
                                             const QuadratureOptions& options = {});

}  // namespace cointoss
