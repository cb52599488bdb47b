#pragma once

#include <array>
#include <numbers>

namespace cointoss {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduces an angle to [0, 2π).
double wrap_two_pi(double angle);

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const;
};

// A direction in R^3. Construction normalizes; |v| = 1 to rounding.
class UnitVector3 {
 public:
  UnitVector3() = default;
  static UnitVector3 normalized(const Vec3& v);
  // (cos az sin polar, sin az sin polar, cos polar); already unit length.
  static UnitVector3 spherical(double azimuth, double polar);

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }
  const Vec3& vec() const { return v_; }

 private:
  explicit UnitVector3(const Vec3& v) : v_(v) {}
  Vec3 v_{0.0, 0.0, 1.0};
};

// 3x3 rotation, row-major, acting on column vectors by left multiplication.
class RotationMatrix {
 public:
  RotationMatrix();  // identity
  explicit RotationMatrix(const std::array<double, 9>& row_major) : m_(row_major) {}

  double operator()(int row, int col) const { return m_[3 * row + col]; }
  const std::array<double, 9>& data() const { return m_; }

  RotationMatrix operator*(const RotationMatrix& rhs) const;
  Vec3 operator*(const Vec3& v) const;
  RotationMatrix transposed() const;
  Vec3 column(int col) const { return {m_[col], m_[3 + col], m_[6 + col]}; }
  double determinant() const;
  // max |RᵀR − I| entry.
  double orthogonality_error() const;

 private:
  std::array<double, 9> m_;
};

struct EulerAngles {
  double precession = 0.0;
  double nutation = 0.0;  // [0, π]
  double rotation = 0.0;
};

// Direction (α, β) of the conserved angular momentum in the reference frame.
// Stored normalized: alpha in [0, 2π), beta in [0, π].
class MomentumDirection {
 public:
  MomentumDirection() = default;
  MomentumDirection(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  // l^r = (cos α sin β, sin α sin β, cos β)
  UnitVector3 unit() const { return UnitVector3::spherical(alpha_, beta_); }

 private:
  double alpha_ = 0.0;
  double beta_ = 0.0;
};

// Precession-nutation-rotation rotation matrix.
RotationMatrix euler_to_matrix(const EulerAngles& angles);

// Reference frame -> intermediate frame {E1, E2, l}. Equal to
// euler_to_matrix({α + π/2, β, π/2}).
RotationMatrix matrix_a1(const MomentumDirection& dir);

// Intermediate frame -> body frame, from the body spherical angle phi of l,
// nutation theta and precession psi. Equal to
// euler_to_matrix({ψ + π/2, θ, π/2 − φ}).
RotationMatrix matrix_a2(double phi, double theta, double psi);

// Coin normal n in the reference frame, A1·A2·(0,0,1)ᵀ in closed form.
UnitVector3 normal_in_reference(const MomentumDirection& dir, double phi, double theta,
                                double psi);

// n·k = cos β cos θ + sin β sin θ cos ψ.
double normal_vertical_component(double beta, double theta, double psi);

// Heads iff n·k > 0. Zero (to within 8 ulp of 1) counts as tails.
bool heads_indicator(const MomentumDirection& dir, double theta, double psi);

}  // namespace cointoss
