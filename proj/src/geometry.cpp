#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace cointoss {

double wrap_two_pi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2π.
  return r >= kTwoPi ? 0.0 : r;
}

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

UnitVector3 UnitVector3::normalized(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidInput("cannot normalize a zero or non-finite vector");
  }
  return UnitVector3(Vec3{v.x / n, v.y / n, v.z / n});
}

UnitVector3 UnitVector3::spherical(double azimuth, double polar) {
  const double s = std::sin(polar);
  return UnitVector3(Vec3{std::cos(azimuth) * s, std::sin(azimuth) * s, std::cos(polar)});
}

RotationMatrix::RotationMatrix() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

RotationMatrix RotationMatrix::operator*(const RotationMatrix& rhs) const {
  std::array<double, 9> out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += (*this)(i, k) * rhs(k, j);
      out[3 * i + j] = acc;
    }
  }
  return RotationMatrix(out);
}

Vec3 RotationMatrix::operator*(const Vec3& v) const {
  return {m_[0] * v.x + m_[1] * v.y + m_[2] * v.z, m_[3] * v.x + m_[4] * v.y + m_[5] * v.z,
          m_[6] * v.x + m_[7] * v.y + m_[8] * v.z};
}

RotationMatrix RotationMatrix::transposed() const {
  return RotationMatrix({m_[0], m_[3], m_[6], m_[1], m_[4], m_[7], m_[2], m_[5], m_[8]});
}

double RotationMatrix::determinant() const {
  return m_[0] * (m_[4] * m_[8] - m_[5] * m_[7]) - m_[1] * (m_[3] * m_[8] - m_[5] * m_[6]) +
         m_[2] * (m_[3] * m_[7] - m_[4] * m_[6]);
}

double RotationMatrix::orthogonality_error() const {
  const RotationMatrix p = transposed() * (*this);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      worst = std::max(worst, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

MomentumDirection::MomentumDirection(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidInput("momentum direction angles must be finite");
  }
  if (beta < 0.0 || beta > kPi) {
    throw InvalidInput("beta must lie in [0, pi]");
  }
  alpha_ = wrap_two_pi(alpha);
  beta_ = beta;
}

RotationMatrix euler_to_matrix(const EulerAngles& a) {
  const double cp = std::cos(a.precession), sp = std::sin(a.precession);
  const double cn = std::cos(a.nutation), sn = std::sin(a.nutation);
  const double cr = std::cos(a.rotation), sr = std::sin(a.rotation);
  return RotationMatrix({cp * cr - sp * cn * sr, -cp * sr - sp * cn * cr, sp * sn,  //
                         sp * cr + cp * cn * sr, -sp * sr + cp * cn * cr, -cp * sn,  //
                         sn * sr, sn * cr, cn});
}

RotationMatrix matrix_a1(const MomentumDirection& dir) {
  const double ca = std::cos(dir.alpha()), sa = std::sin(dir.alpha());
  const double cb = std::cos(dir.beta()), sb = std::sin(dir.beta());
  return RotationMatrix({-ca * cb, sa, ca * sb,  //
                         -sa * cb, -ca, sa * sb,  //
                         sb, 0.0, cb});
}

RotationMatrix matrix_a2(double phi, double theta, double psi) {
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cs = std::cos(psi), ss = std::sin(psi);
  return RotationMatrix({-ss * sf - cs * ct * cf, ss * cf - cs * ct * sf, cs * st,  //
                         cs * sf - ss * ct * cf, -cs * cf - ss * ct * sf, ss * st,  //
                         st * cf, st * sf, ct});
}

UnitVector3 normal_in_reference(const MomentumDirection& dir, double /*phi*/, double theta,
                                double psi) {
  // n depends on the body angle phi only through the rotation about n itself.
  const double ca = std::cos(dir.alpha()), sa = std::sin(dir.alpha());
  const double cb = std::cos(dir.beta()), sb = std::sin(dir.beta());
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cs = std::cos(psi), ss = std::sin(psi);
  return UnitVector3::normalized({-ca * cb * cs * st + sa * ss * st + ca * sb * ct,
                                  -sa * cb * cs * st - ca * ss * st + sa * sb * ct,
                                  sb * cs * st + cb * ct});
}

double normal_vertical_component(double beta, double theta, double psi) {
  return std::cos(beta) * std::cos(theta) + std::sin(beta) * std::sin(theta) * std::cos(psi);
}

bool heads_indicator(const MomentumDirection& dir, double theta, double psi) {
  // Values at rounding level are the exact zero of the tie-break (tails).
  constexpr double kZero = 8.0 * std::numeric_limits<double>::epsilon();
  return normal_vertical_component(dir.beta(), theta, psi) > kZero;
}

}  // namespace cointoss
