#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cointoss {

QuadratureResult integrate_smooth(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  const double width = b - a;
  // Trapezoid sums T(n) reuse every earlier node; Simpson S(2n) = (4T(2n) − T(n)) / 3.
  double ends = f(a) + f(b);
  double interior = 0.0;
  result.evaluations = 2;
  long panels = 1;
  double trap_prev = 0.5 * width * ends;
  double simpson_prev = 0.0;
  bool have_simpson = false;

  for (int level = 1; level <= options.max_level; ++level) {
    const double h = width / static_cast<double>(2 * panels);
    double added = 0.0;
    for (long i = 0; i < panels; ++i) {
      added += f(a + h * static_cast<double>(2 * i + 1));
    }
    result.evaluations += static_cast<int>(panels);
    interior += added;
    panels *= 2;
    const double trap = h * (0.5 * ends + interior);
    const double simpson = (4.0 * trap - trap_prev) / 3.0;
    trap_prev = trap;

    if (have_simpson) {
      const double diff = simpson - simpson_prev;
      result.value = simpson + diff / 15.0;
      result.abs_error = std::abs(diff) / 15.0;
      if (level >= options.min_level && result.abs_error <= options.abs_tolerance) {
        result.converged = true;
        return result;
      }
    } else {
      result.value = simpson;
      result.abs_error = std::abs(simpson);
    }
    simpson_prev = simpson;
    have_simpson = true;
  }
  return result;
}

QuadratureResult integrate_open(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& options) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  const double width = b - a;
  const int max_level = std::min(options.max_level, kMaxOpenLevel);
  // Midpoint sums M(n) with n tripled per level keep every earlier node.
  // R(n) = (9M(3n) − M(n)) / 8 removes the h² term.
  long panels = 1;
  double sum = f(a + 0.5 * width);
  result.evaluations = 1;
  double mid_prev = width * sum;
  double rich_prev = 0.0;
  bool have_rich = false;

  for (int level = 1; level <= max_level; ++level) {
    const double h = width / static_cast<double>(3 * panels);
    for (long i = 0; i < panels; ++i) {
      const double base = a + 3.0 * h * static_cast<double>(i);
      sum += f(base + 0.5 * h) + f(base + 2.5 * h);
    }
    result.evaluations += static_cast<int>(2 * panels);
    panels *= 3;
    const double mid = h * sum;
    const double rich = (9.0 * mid - mid_prev) / 8.0;
    mid_prev = mid;

    if (have_rich) {
      const double diff = rich - rich_prev;
      result.value = rich + diff / 80.0;
      result.abs_error = std::abs(diff) / 80.0;
      if (level >= options.min_level && result.abs_error <= options.abs_tolerance) {
        result.converged = true;
        return result;
      }
    } else {
      result.value = rich;
      result.abs_error = std::abs(rich);
    }
    rich_prev = rich;
    have_rich = true;
  }
  return result;
}

QuadratureResult integrate_endpoint_singular(const std::function<double(const IntervalPoint&)>& f,
                                             double lo, double hi,
                                             const QuadratureOptions& options) {
  const double half = 0.5 * (hi - lo);
  auto mapped = [&](double t) {
    // 1 − cos t = 2 sin²(t/2) avoids cancellation near t = 0.
    const double sh = std::sin(0.5 * t);
    const double ch = std::cos(0.5 * t);
    IntervalPoint p;
    p.from_lo = 2.0 * half * sh * sh;
    p.to_hi = 2.0 * half * ch * ch;
    p.x = t < 0.5 * std::numbers::pi ? lo + p.from_lo : hi - p.to_hi;
    return f(p) * half * std::sin(t);
  };
  return integrate_open(mapped, 0.0, std::numbers::pi, options);
}

}  // namespace cointoss
