#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "analysis.hpp"
#include "dynamics.hpp"

namespace cointoss {

enum class ProbabilityMethod {
  kQuadrature,
  kClosedFormUniform,  // θ is a point mass (axisymmetric coin or fixed point)
  kFairSymmetry,
};

std::string_view to_string(ProbabilityMethod m);

struct HeadsProbability {
  double p = 0.5;
  double abs_error_estimate = 0.0;
  ProbabilityMethod method = ProbabilityMethod::kFairSymmetry;
};

struct Theta0Sample {
  double theta0 = kPi / 2.0;
  double weight = 1.0;
};

// cot β cot θ clamped to [−1, 1], with the β or θ ∈ {0, π} limits taken
// explicitly instead of through infinite cotangents.
double heads_arcsin_argument(double beta, double theta);

// 1/2 + (1/π) arcsin(min{1, cot β cot θ0}).
double uniform_heads_probability(double beta, double theta0);

// ∫ arcsin(min{1, cot β cot y}) f(y) dy over the envelope (may be a
// supplementary envelope; the integral then vanishes by symmetry).
QuadratureResult heads_integral(const NutationBounds& bounds, double beta, ThetaLaw law);

// Limiting probability for an explicit envelope, skipping the fair-region
// and closed-form shortcuts unless the envelope is a point.
HeadsProbability heads_probability_for_envelope(const NutationBounds& bounds, double beta,
                                                ThetaLaw law = ThetaLaw::kDwellTime);

// Limiting probability of heads for fixed (β, φ0, θ0) as t → ∞.
HeadsProbability heads_probability(const InertiaTensor& inertia, double beta, double phi0,
                                   double theta0, ThetaLaw law = ThetaLaw::kDwellTime);

// β = θ0: heads facing straight up at release.
HeadsProbability heads_probability_straight(const InertiaTensor& inertia, double phi0,
                                            double theta0, ThetaLaw law = ThetaLaw::kDwellTime);

// Weighted mean of heads_probability_straight over θ0 samples and a midpoint
// grid of phi0_grid_size values of φ0 in [0, 2π). Summed in index order.
HeadsProbability aggregate_probability(const InertiaTensor& inertia,
                                       std::span<const Theta0Sample> samples,
                                       std::size_t phi0_grid_size,
                                       ThetaLaw law = ThetaLaw::kDwellTime);

}  // namespace cointoss
