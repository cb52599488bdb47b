#include "probability.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace cointoss {

std::string_view to_string(ProbabilityMethod m) {
  switch (m) {
    case ProbabilityMethod::kQuadrature: return "quadrature";
    case ProbabilityMethod::kClosedFormUniform: return "closed-form-uniform";
    case ProbabilityMethod::kFairSymmetry: return "fair-symmetry";
  }
  return "unknown";
}

double heads_arcsin_argument(double beta, double theta) {
  const double num = std::cos(beta) * std::cos(theta);
  const double den = std::sin(beta) * std::sin(theta);
  if (!(den > 0.0)) return num > 0.0 ? 1.0 : (num < 0.0 ? -1.0 : 0.0);
  return std::clamp(num / den, -1.0, 1.0);
}

double uniform_heads_probability(double beta, double theta0) {
  return 0.5 + std::asin(heads_arcsin_argument(beta, theta0)) / kPi;
}

QuadratureResult heads_integral(const NutationBounds& bounds, double beta, ThetaLaw law) {
  const ThetaDensity density(bounds, law);
  if (density.is_point_mass()) {
    QuadratureResult r;
    r.value = std::asin(heads_arcsin_argument(beta, density.point_mass_location()));
    r.converged = true;
    return r;
  }
  // Vertical L: the integrand is the constant ±π/2 unless θ crosses π/2.
  if ((beta == 0.0 || beta == kPi) && bounds.case_tag != EnvelopeCase::kSupplementary) {
    QuadratureResult r;
    r.value = std::asin(heads_arcsin_argument(beta, 0.5 * (bounds.theta_m + bounds.theta_M)));
    r.evaluations = 1;
    r.converged = true;
    return r;
  }
  // cot β cot y = ±1 where cos y = ±sin β.
  const double s = std::sin(beta);
  const double kinks[] = {std::acos(s), std::acos(-s)};
  return density.expectation(
      [beta](double y) { return std::asin(heads_arcsin_argument(beta, y)); }, kinks);
}

HeadsProbability heads_probability_for_envelope(const NutationBounds& bounds, double beta,
                                                ThetaLaw law) {
  if (!(beta >= 0.0 && beta <= kPi)) throw InvalidInput("beta must lie in [0, pi]");
  const QuadratureResult r = heads_integral(bounds, beta, law);
  HeadsProbability hp;
  hp.p = std::clamp(0.5 + r.value / kPi, 0.0, 1.0);
  hp.abs_error_estimate = r.abs_error / kPi;
  hp.method = r.evaluations == 0 ? ProbabilityMethod::kClosedFormUniform
                                 : ProbabilityMethod::kQuadrature;
  return hp;
}

HeadsProbability heads_probability(const InertiaTensor& inertia, double beta, double phi0,
                                   double theta0, ThetaLaw law) {
  if (!(beta >= 0.0 && beta <= kPi)) throw InvalidInput("beta must lie in [0, pi]");
  if (in_fair_region(inertia, phi0, theta0)) return {0.5, 0.0, ProbabilityMethod::kFairSymmetry};
  if (inertia.is_uniform()) {
    return {uniform_heads_probability(beta, theta0), 0.0, ProbabilityMethod::kClosedFormUniform};
  }
  return heads_probability_for_envelope(nutation_bounds(inertia, phi0, theta0), beta, law);
}

HeadsProbability heads_probability_straight(const InertiaTensor& inertia, double phi0,
                                            double theta0, ThetaLaw law) {
  return heads_probability(inertia, theta0, phi0, theta0, law);
}

HeadsProbability aggregate_probability(const InertiaTensor& inertia,
                                       std::span<const Theta0Sample> samples,
                                       std::size_t phi0_grid_size, ThetaLaw law) {
  if (samples.empty()) throw InvalidInput("theta0 sample list is empty");
  if (phi0_grid_size < 8) throw InvalidInput("phi0 grid size must be at least 8");
  double total_weight = 0.0;
  for (const auto& s : samples) {
    if (!(s.weight > 0.0) || !std::isfinite(s.weight)) {
      throw InvalidInput("theta0 sample weights must be positive and finite");
    }
    if (!(s.theta0 >= 0.0 && s.theta0 <= kPi)) throw InvalidInput("theta0 samples must lie in [0, pi]");
    total_weight += s.weight;
  }

  const double cell = kTwoPi / static_cast<double>(phi0_grid_size);
  HeadsProbability out{0.0, 0.0, ProbabilityMethod::kQuadrature};
  bool all_fair = true, any_quadrature = false;
  for (const auto& s : samples) {
    double p_sum = 0.0, err_sum = 0.0;
    for (std::size_t g = 0; g < phi0_grid_size; ++g) {
      const double phi0 = (static_cast<double>(g) + 0.5) * cell;
      const HeadsProbability hp = heads_probability_straight(inertia, phi0, s.theta0, law);
      p_sum += hp.p;
      err_sum += hp.abs_error_estimate;
      all_fair = all_fair && hp.method == ProbabilityMethod::kFairSymmetry;
      any_quadrature = any_quadrature || hp.method == ProbabilityMethod::kQuadrature;
    }
    const double w = s.weight / total_weight;
    out.p += w * p_sum / static_cast<double>(phi0_grid_size);
    out.abs_error_estimate += w * err_sum / static_cast<double>(phi0_grid_size);
  }
  if (all_fair) {
    out = {0.5, 0.0, ProbabilityMethod::kFairSymmetry};
  } else if (!any_quadrature) {
    out.method = ProbabilityMethod::kClosedFormUniform;
  }
  out.p = std::clamp(out.p, 0.0, 1.0);
  return out;
}

}  // namespace cointoss
