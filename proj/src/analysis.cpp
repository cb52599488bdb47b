#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"

namespace cointoss {

namespace {

constexpr double kUniformFairTolerance = 1e-12;
constexpr double kMinEnvelopeWidth = 1e-14;

double sq(double v) { return v * v; }

void require_finite_angles(double phi0, double theta0) {
  if (!std::isfinite(phi0) || !std::isfinite(theta0)) {
    throw InvalidInput("initial angles must be finite");
  }
  if (theta0 < 0.0 || theta0 > kPi) throw InvalidInput("theta0 must lie in [0, pi]");
}

double safe_acos(double v) { return std::acos(std::clamp(v, -1.0, 1.0)); }
double safe_sqrt(double v) { return std::sqrt(std::max(v, 0.0)); }

// Remaining quadratic factor of (z² − w1)(z² − w2) once the two roots that
// bound the envelope are divided out; positive inside the envelope.
double other_roots_factor(EnvelopeCase c, double w1, double w2, double z) {
  if (c == EnvelopeCase::kSupplementary) return z * z - w1;
  if (c == EnvelopeCase::kBothAcute) return (z + safe_sqrt(w1)) * (z + safe_sqrt(w2));
  return (z - safe_sqrt(w1)) * (z - safe_sqrt(w2));
}

struct SweepSetup {
  NutationBounds bounds;
  QuarticCoefficients quartic;
  double w1;
  double w2;
};

SweepSetup sweep_setup(const InertiaTensor& inertia, double phi0, double theta0) {
  if (inertia.is_uniform()) {
    throw DegenerateInput("axisymmetric coin: theta is constant, no nutation sweep");
  }
  SweepSetup s{nutation_bounds(inertia, phi0, theta0), quartic_coefficients(inertia, phi0, theta0),
               0.0, 0.0};
  if (s.bounds.z_hi() - s.bounds.z_lo() <= kMinEnvelopeWidth) {
    throw DegenerateInput("initial state is a fixed point: nutation envelope has zero width");
  }
  std::tie(s.w1, s.w2) = s.quartic.roots_in_z_squared();
  return s;
}

// ∫ F(z)/√Q(z) dz over the envelope with the end singularities absorbed.
double sweep_integral(const SweepSetup& s, const std::function<double(double)>& numerator) {
  const double scale = std::sqrt(-s.quartic.A);
  const auto r = integrate_endpoint_singular(
      [&](const IntervalPoint& p) {
        const double rem = other_roots_factor(s.bounds.case_tag, s.w1, s.w2, p.x);
        return numerator(p.x) / std::sqrt(p.from_lo * p.to_hi * rem);
      },
      s.bounds.z_lo(), s.bounds.z_hi(), QuadratureOptions{1e-12, 5, 22});
  return r.value / scale;
}

}  // namespace

std::string_view to_string(EnvelopeCase c) {
  switch (c) {
    case EnvelopeCase::kSupplementary: return "supplementary";
    case EnvelopeCase::kBothAcute: return "both-acute";
    case EnvelopeCase::kBothObtuse: return "both-obtuse";
    case EnvelopeCase::kUniformDegenerate: return "uniform-degenerate";
  }
  return "unknown";
}

double NutationBounds::z_lo() const { return std::cos(theta_M); }
double NutationBounds::z_hi() const { return std::cos(theta_m); }

NutationBounds nutation_bounds(const InertiaTensor& inertia, double phi0, double theta0) {
  require_finite_angles(phi0, theta0);
  const double a = inertia.inv_x(), b = inertia.inv_y(), c = inertia.inv_z();
  const double cos2t = sq(std::cos(theta0));
  const double sin2t = sq(std::sin(theta0));
  NutationBounds nb;
  if (inertia.is_uniform()) {
    nb.c1 = nb.c2 = cos2t;
    nb.theta_m = nb.theta_M = theta0;
    nb.case_tag = EnvelopeCase::kUniformDegenerate;
    return nb;
  }
  nb.c1 = cos2t - (a - b) / (b - c) * sq(std::cos(phi0)) * sin2t;
  nb.c2 = cos2t + (a - b) / (a - c) * sq(std::sin(phi0)) * sin2t;
  // c1 < 0 first: the curve then straddles the equator whatever side θ0 is on.
  if (nb.c1 < 0.0) {
    nb.case_tag = EnvelopeCase::kSupplementary;
    nb.theta_m = safe_acos(std::sqrt(nb.c2));
    nb.theta_M = kPi - nb.theta_m;
  } else if (theta0 <= kPi / 2.0) {
    nb.case_tag = EnvelopeCase::kBothAcute;
    nb.theta_m = safe_acos(std::sqrt(nb.c2));
    nb.theta_M = safe_acos(std::sqrt(nb.c1));
  } else {
    nb.case_tag = EnvelopeCase::kBothObtuse;
    nb.theta_m = kPi - safe_acos(std::sqrt(nb.c1));
    nb.theta_M = kPi - safe_acos(std::sqrt(nb.c2));
  }
  return nb;
}

NutationBounds envelope_from_extremes(double theta_m, double theta_M) {
  if (!(theta_m <= theta_M) || theta_m < 0.0 || theta_M > kPi) {
    throw InvalidInput("envelope must satisfy 0 <= theta_m <= theta_M <= pi");
  }
  NutationBounds nb;
  nb.theta_m = theta_m;
  nb.theta_M = theta_M;
  if (theta_M <= kPi / 2.0) {
    nb.case_tag = EnvelopeCase::kBothAcute;
    nb.c1 = sq(std::cos(theta_M));
    nb.c2 = sq(std::cos(theta_m));
  } else if (theta_m >= kPi / 2.0) {
    nb.case_tag = EnvelopeCase::kBothObtuse;
    nb.c1 = sq(std::cos(theta_m));
    nb.c2 = sq(std::cos(theta_M));
  } else {
    throw InvalidInput("envelope_from_extremes needs both ends on one side of pi/2");
  }
  return nb;
}

bool in_fair_region(const InertiaTensor& inertia, double phi0, double theta0) {
  require_finite_angles(phi0, theta0);
  if (inertia.is_uniform()) return std::abs(theta0 - kPi / 2.0) <= kUniformFairTolerance;
  const double s = std::sin(theta0);
  if (s == 0.0) return false;
  const double a = inertia.inv_x(), b = inertia.inv_y(), c = inertia.inv_z();
  const double cot = std::cos(theta0) / s;
  return cot * cot < (a - b) / (b - c) * sq(std::cos(phi0));
}

std::pair<double, double> QuarticCoefficients::roots_in_z_squared() const {
  const double disc = std::max(B * B - 4.0 * A * C, 0.0);
  const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
  double r1 = q / A;
  double r2 = q != 0.0 ? C / q : r1;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

QuarticCoefficients quartic_coefficients(const InertiaTensor& inertia, double phi0, double theta0) {
  require_finite_angles(phi0, theta0);
  const double a = inertia.inv_x(), b = inertia.inv_y(), c = inertia.inv_z();
  QuarticCoefficients q;
  q.a0 = sq(std::sin(theta0)) * (a - c - (a - b) * sq(std::sin(phi0)));
  // 2E/|L|² = a0 + 1/Iz is what enters the lx², ly² relations.
  const double energy2 = q.a0 + c;
  const double ix = inertia.ix(), iy = inertia.iy(), iz = inertia.iz();
  q.A = -(a - c) * (b - c);
  q.B = (2.0 * iz - ix - iy) / (ix * iy * iz) - energy2 * (a + b - 2.0 * c);
  q.C = -(energy2 - a) * (energy2 - b);
  return q;
}

double ArcsineParams::cdf(double x) const {
  if (x <= lo) return 0.0;
  if (x >= hi) return 1.0;
  return 2.0 / kPi * std::asin(std::sqrt((x - lo) / (hi - lo)));
}

ArcsineParams arcsine_params(const InertiaTensor& inertia, double phi0, double theta0) {
  require_finite_angles(phi0, theta0);
  if (inertia.is_uniform()) throw DegenerateInput("axisymmetric coin: csc^2 theta is constant");
  if (in_fair_region(inertia, phi0, theta0)) {
    throw UnsupportedCase("fair region: theta crosses pi/2, csc^2 theta is not arcsine distributed");
  }
  const double a = inertia.inv_x(), b = inertia.inv_y(), c = inertia.inv_z();
  const double a0 = quartic_coefficients(inertia, phi0, theta0).a0;
  if (!(a0 > 0.0)) throw DegenerateInput("momentum along the normal: csc^2 theta undefined");
  ArcsineParams p;
  p.k1 = 0.5 * (a - b) / a0;
  p.k2 = (0.5 * (a + b) - c) / a0;
  p.lo = p.k2 - p.k1;
  p.hi = p.k2 + p.k1;
  return p;
}

std::string_view to_string(ThetaLaw law) {
  return law == ThetaLaw::kDwellTime ? "dwell" : "arcsine";
}

std::optional<ThetaLaw> parse_theta_law(std::string_view name) {
  if (name == "dwell") return ThetaLaw::kDwellTime;
  if (name == "arcsine") return ThetaLaw::kArcsine;
  return std::nullopt;
}

double arcsine_law_pdf(double theta_m, double theta_M, double y) {
  if (!(y > theta_m && y < theta_M)) return 0.0;
  const double s2 = sq(std::sin(y));
  const double u = 1.0 - s2 / sq(std::sin(theta_M));
  const double v = s2 / sq(std::sin(theta_m)) - 1.0;
  return 2.0 * std::abs(std::cos(y) / std::sin(y)) / (kPi * std::sqrt(std::abs(u * v)));
}

ThetaDensity::ThetaDensity(const NutationBounds& bounds, ThetaLaw law,
                           const QuadratureOptions& options)
    : bounds_(bounds), law_(law), options_(options) {
  if (bounds.is_point() || bounds.z_hi() - bounds.z_lo() <= kMinEnvelopeWidth) {
    point_mass_ = 0.5 * (bounds.theta_m + bounds.theta_M);
    return;
  }
  z_lo_ = bounds.z_lo();
  z_hi_ = bounds.z_hi();
  if (law == ThetaLaw::kArcsine) {
    if (bounds.case_tag == EnvelopeCase::kSupplementary) {
      throw UnsupportedCase("arcsine law is not defined for a supplementary envelope");
    }
    x_lo_ = 1.0 / sq(std::sin(bounds.theta_m));
    x_hi_ = 1.0 / sq(std::sin(bounds.theta_M));
    if (x_lo_ > x_hi_) std::swap(x_lo_, x_hi_);
    norm_ = kPi;
    return;
  }
  const auto r = integrate_endpoint_singular(
      [&](const IntervalPoint& p) {
        return 1.0 / std::sqrt(p.from_lo * p.to_hi * dwell_remainder(p.x));
      },
      z_lo_, z_hi_, options_);
  norm_ = r.value;
}

double ThetaDensity::dwell_remainder(double z) const {
  if (bounds_.case_tag == EnvelopeCase::kSupplementary) return z * z - bounds_.c1;
  return (z + z_lo_) * (z + z_hi_);
}

double ThetaDensity::pdf(double theta) const {
  if (point_mass_) throw DegenerateInput("theta density is a point mass");
  if (!(theta > bounds_.theta_m && theta < bounds_.theta_M)) return 0.0;
  if (law_ == ThetaLaw::kArcsine) return arcsine_law_pdf(bounds_.theta_m, bounds_.theta_M, theta);
  const double z = std::cos(theta);
  const double w = (z - z_lo_) * (z_hi_ - z) * dwell_remainder(z);
  if (!(w > 0.0)) return 0.0;
  return std::sin(theta) / (norm_ * std::sqrt(w));
}

double ThetaDensity::cdf(double theta) const {
  if (point_mass_) return theta >= *point_mass_ ? 1.0 : 0.0;
  if (theta <= bounds_.theta_m) return 0.0;
  if (theta >= bounds_.theta_M) return 1.0;
  if (law_ == ThetaLaw::kArcsine) {
    const double x = 1.0 / sq(std::sin(theta));
    const double f = x <= x_lo_ ? 0.0
                     : x >= x_hi_ ? 1.0
                                  : 2.0 / kPi * std::asin(std::sqrt((x - x_lo_) / (x_hi_ - x_lo_)));
    // csc²θ decreases with θ below π/2 and increases above.
    return bounds_.case_tag == EnvelopeCase::kBothAcute ? 1.0 - f : f;
  }
  // P(θ <= y) = P(z >= cos y); in z = mid + half cos u the weight is du/√rem.
  const double mid = 0.5 * (z_hi_ + z_lo_), half = 0.5 * (z_hi_ - z_lo_);
  const double u_end = std::acos(std::clamp((std::cos(theta) - mid) / half, -1.0, 1.0));
  const auto r = integrate_smooth(
      [&](double u) { return 1.0 / std::sqrt(dwell_remainder(mid + half * std::cos(u))); }, 0.0,
      u_end, options_);
  return std::clamp(r.value / norm_, 0.0, 1.0);
}

QuadratureResult ThetaDensity::expectation(const std::function<double(double)>& g,
                                           std::span<const double> kinks) const {
  if (point_mass_) throw DegenerateInput("theta density is a point mass");
  // Work in v = cos θ (dwell) or v = csc²θ (arcsine); both weights have
  // inverse-square-root ends at the envelope.
  const bool arcsine = law_ == ThetaLaw::kArcsine;
  const double v_lo = arcsine ? x_lo_ : z_lo_;
  const double v_hi = arcsine ? x_hi_ : z_hi_;
  const bool obtuse = bounds_.case_tag == EnvelopeCase::kBothObtuse;
  auto theta_of = [&](double v) {
    if (!arcsine) return std::acos(std::clamp(v, -1.0, 1.0));
    const double t = std::asin(std::min(1.0, 1.0 / std::sqrt(v)));
    return obtuse ? kPi - t : t;
  };

  std::vector<double> cuts{v_lo};
  for (double k : kinks) {
    if (!std::isfinite(k)) continue;
    const double v = arcsine ? 1.0 / sq(std::sin(k)) : std::cos(k);
    if (v > v_lo && v < v_hi) cuts.push_back(v);
  }
  cuts.push_back(v_hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadratureResult total;
  total.converged = true;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const bool first = i == 0, last = i + 2 == cuts.size();
    const auto r = integrate_endpoint_singular(
        [&](const IntervalPoint& p) {
          const double from_lo = first ? p.from_lo : p.x - v_lo;
          const double to_hi = last ? p.to_hi : v_hi - p.x;
          const double rem = arcsine ? 1.0 : dwell_remainder(p.x);
          return g(theta_of(p.x)) / std::sqrt(from_lo * to_hi * rem);
        },
        a, b, options_);
    total.value += r.value / norm_;
    total.abs_error += r.abs_error / norm_;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  return total;
}

ThetaDensity theta_pdf(const NutationBounds& bounds, ThetaLaw law) {
  return ThetaDensity(bounds, law);
}

double winding_integral(const InertiaTensor& inertia, double phi0, double theta0, int m1, int m2) {
  if (m1 == 0 && m2 == 0) throw InvalidInput("(m1, m2) must not both be zero");
  const SweepSetup s = sweep_setup(inertia, phi0, theta0);
  const double a0 = s.quartic.a0, c = inertia.inv_z();
  return sweep_integral(s, [&](double z) {
    return a0 * (m1 * z + m2) / (1.0 - z * z) + m2 * c;
  });
}

double half_period_integral(const InertiaTensor& inertia, double phi0, double theta0) {
  const SweepSetup s = sweep_setup(inertia, phi0, theta0);
  return sweep_integral(s, [](double) { return 1.0; });
}

}  // namespace cointoss
