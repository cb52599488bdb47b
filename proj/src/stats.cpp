#include "stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "errors.hpp"
#include "geometry.hpp"

namespace cointoss {

double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw InvalidInput("KS statistic needs a non-empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double ks_uniform_angle(std::span<const double> angles) {
  return ks_statistic(angles, [](double x) { return std::clamp(x / kTwoPi, 0.0, 1.0); });
}

double chi_square_survival(double statistic, int degrees_of_freedom) {
  if (degrees_of_freedom <= 0) throw InvalidInput("degrees of freedom must be positive");
  if (!(statistic > 0.0)) return 1.0;
  return boost::math::gamma_q(0.5 * degrees_of_freedom, 0.5 * statistic);
}

ChiSquareResult chi_square_uniform_grid(std::span<const double> first,
                                        std::span<const double> second, int bins) {
  if (first.size() != second.size()) throw InvalidInput("paired samples differ in length");
  if (first.empty()) throw InvalidInput("chi-square needs a non-empty sample");
  if (bins < 2) throw InvalidInput("chi-square grid needs at least 2 bins per axis");

  const auto cell = [bins](double angle) {
    const int k = static_cast<int>(wrap_two_pi(angle) / kTwoPi * bins);
    return std::clamp(k, 0, bins - 1);
  };
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins * bins), 0);
  for (std::size_t i = 0; i < first.size(); ++i) {
    ++counts[static_cast<std::size_t>(cell(first[i]) * bins + cell(second[i]))];
  }

  const double expected = static_cast<double>(first.size()) / static_cast<double>(counts.size());
  ChiSquareResult r;
  for (std::size_t c : counts) {
    const double diff = static_cast<double>(c) - expected;
    r.statistic += diff * diff / expected;
  }
  r.degrees_of_freedom = bins * bins - 1;
  r.p_value = chi_square_survival(r.statistic, r.degrees_of_freedom);
  return r;
}

}  // namespace cointoss
