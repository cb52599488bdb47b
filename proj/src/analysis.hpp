#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "dynamics.hpp"
#include "quadrature.hpp"

namespace cointoss {

enum class EnvelopeCase { kSupplementary, kBothAcute, kBothObtuse, kUniformDegenerate };

std::string_view to_string(EnvelopeCase c);

// Envelope [theta_m, theta_M] of the nutation angle. c1 and c2 are the
// extreme values of (l^b_z)² on the body-frame momentum curve (c1 may be
// negative, meaning the curve crosses the equator).
struct NutationBounds {
  double c1 = 0.0;
  double c2 = 0.0;
  double theta_m = 0.0;
  double theta_M = 0.0;
  EnvelopeCase case_tag = EnvelopeCase::kUniformDegenerate;

  double z_lo() const;  // cos theta_M
  double z_hi() const;  // cos theta_m
  bool is_point() const { return case_tag == EnvelopeCase::kUniformDegenerate || !(theta_M > theta_m); }
};

NutationBounds nutation_bounds(const InertiaTensor& inertia, double phi0, double theta0);

// Builds acute or obtuse bounds directly from an envelope (both ends on the
// same side of π/2). Used to force the general quadrature path.
NutationBounds envelope_from_extremes(double theta_m, double theta_M);

// (φ0, θ0) for which the envelope is symmetric about the equator.
// Axisymmetric coins: only θ0 = π/2 (to 1e-12).
bool in_fair_region(const InertiaTensor& inertia, double phi0, double theta0);

// (dlz/dt)² = |L|² (A lz⁴ + B lz² + C) along the motion; a0 is the constant
// of the sin²θ relation, sin²θ (Ix⁻¹ − Iz⁻¹ − (Ix⁻¹ − Iy⁻¹) sin²φ) = a0.
struct QuarticCoefficients {
  double a0 = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;

  double operator()(double z) const { return (A * z * z + B) * z * z + C; }
  // Roots of A w² + B w + C in w = z², ascending.
  std::pair<double, double> roots_in_z_squared() const;
};

QuarticCoefficients quartic_coefficients(const InertiaTensor& inertia, double phi0, double theta0);

// csc²θ = k1 cos 2φ + k2 along the motion; lo/hi are the ordered extremes.
struct ArcsineParams {
  double k1 = 0.0;
  double k2 = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  double cdf(double x) const;  // Arcsine(lo, hi)
};

// Throws DegenerateInput for axisymmetric coins and UnsupportedCase inside the
// fair region.
ArcsineParams arcsine_params(const InertiaTensor& inertia, double phi0, double theta0);

// Law used for the long-time distribution of θ.
enum class ThetaLaw {
  // Fraction of time spent per dθ over one period of the momentum curve:
  // density ∝ 1/√((lz² − c1)(c2 − lz²)) in lz = cos θ.
  kDwellTime,
  // csc²θ ~ Arcsine(lo, hi), i.e. φ uniform in the sin²θ relation. Not
  // defined for supplementary envelopes.
  kArcsine,
};

std::string_view to_string(ThetaLaw law);
std::optional<ThetaLaw> parse_theta_law(std::string_view name);

// 2|cot y| / (π √|(1 − csc²θ_M sin²y)(csc²θ_m sin²y − 1)|) on (θ_m, θ_M), 0 outside.
double arcsine_law_pdf(double theta_m, double theta_M, double y);

// Long-time density of θ for an envelope. Envelopes of zero width are a
// point mass (is_point_mass()): cdf is then a unit step, pdf and expectation
// throw DegenerateInput.
class ThetaDensity {
 public:
  ThetaDensity(const NutationBounds& bounds, ThetaLaw law,
               const QuadratureOptions& options = {});

  bool is_point_mass() const { return point_mass_.has_value(); }
  double point_mass_location() const { return point_mass_.value_or(0.0); }
  ThetaLaw law() const { return law_; }
  const NutationBounds& bounds() const { return bounds_; }

  double pdf(double theta) const;
  double cdf(double theta) const;

  // E[g(θ)] with its quadrature error. g may have square-root kinks at the
  // listed θ values; the range is split there.
  QuadratureResult expectation(const std::function<double(double)>& g,
                               std::span<const double> kinks) const;

 private:
  // Smooth remaining factor of the dwell-time weight (other two roots).
  double dwell_remainder(double z) const;

  NutationBounds bounds_;
  ThetaLaw law_;
  QuadratureOptions options_;
  std::optional<double> point_mass_;
  double z_lo_ = 0.0;
  double z_hi_ = 0.0;
  double x_lo_ = 0.0;  // arcsine law, csc²θ range
  double x_hi_ = 0.0;
  double norm_ = 1.0;
};

ThetaDensity theta_pdf(const NutationBounds& bounds, ThetaLaw law = ThetaLaw::kDwellTime);

// ∫ [a0 (m1 z + m2)/(1 − z²) + m2/Iz] / √(A z⁴ + B z² + C) dz over one
// sweep of lz = z between its extremes. Equals |L|/2 · (m1 h + m2 g) over
// one lz period. Independent of |L|.
double winding_integral(const InertiaTensor& inertia, double phi0, double theta0, int m1, int m2);

// ∫ dz / √(A z⁴ + B z² + C) over one sweep (= |L|·T/2 for the lz period T).
double half_period_integral(const InertiaTensor& inertia, double phi0, double theta0);

}  // namespace cointoss
