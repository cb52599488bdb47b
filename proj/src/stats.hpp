#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cointoss {

// sup |F_n(x) − F(x)| for the sample against a continuous CDF. Sorts a copy.
double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf);

// KS distance against U[0, 2π) for angles already reduced to [0, 2π).
double ks_uniform_angle(std::span<const double> angles);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int degrees_of_freedom = 0;
};

// Pearson χ² of joint angle pairs on a bins×bins grid over [0, 2π)², against
// equal cell probabilities. Degrees of freedom bins² − 1.
ChiSquareResult chi_square_uniform_grid(std::span<const double> first,
                                        std::span<const double> second, int bins);

// Upper tail of the χ² distribution.
double chi_square_survival(double statistic, int degrees_of_freedom);

}  // namespace cointoss
