#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "geometry.hpp"

namespace cointoss {

// Principal moments of inertia (g·cm²) about e1, e2 and the normal n.
// 0 < ix <= iy < iz; ix == iy is an axisymmetric ("uniform") coin.
class InertiaTensor {
 public:
  InertiaTensor(double ix, double iy, double iz);

  // Half-dollar moments used throughout the examples and CLI defaults.
  static InertiaTensor half_dollar() { return {6.68, 7.35, 13.24}; }

  double ix() const { return ix_; }
  double iy() const { return iy_; }
  double iz() const { return iz_; }
  double inv_x() const { return 1.0 / ix_; }
  double inv_y() const { return 1.0 / iy_; }
  double inv_z() const { return 1.0 / iz_; }
  bool is_uniform() const { return ix_ == iy_; }

 private:
  double ix_;
  double iy_;
  double iz_;
};

struct InitialConditions {
  double l_mag = 1000.0;  // |L|, g·cm²/s
  MomentumDirection dir;
  double phi0 = 0.0;
  double theta0 = kPi / 2.0;
  double psi0 = 0.0;

  void validate() const;  // l_mag > 0, theta0 in [0, π], all finite
};

// Body-frame unit momentum l^b = (cos φ sin θ, sin φ sin θ, cos θ).
UnitVector3 body_momentum(double phi, double theta);

struct TossState {
  double t = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;
  UnitVector3 l_body;
};

struct Trajectory {
  InertiaTensor inertia;
  InitialConditions init;
  double dt = 0.0;
  std::vector<TossState> samples;
};

struct AngleRates {
  double psi_dot;
  double phi_dot;
  double theta_dot;
};

// Torque-free Euler equations for the unit vector l^b (rates of L^b / |L|).
Vec3 euler_rhs_momentum(const InertiaTensor& inertia, const UnitVector3& l_body, double l_mag);

// Euler-angle form of the same motion. theta_dot carries an explicit sin θ
// factor, so it vanishes at the poles.
AngleRates euler_rhs_angles(const InertiaTensor& inertia, double phi, double theta, double l_mag);

// Rotational kinetic energy |L|²/2 · Σ l_i² / I_i (erg).
double energy(const InertiaTensor& inertia, const UnitVector3& l_body, double l_mag);

// Largest allowed value of |L|·dt/Ix.
inline constexpr double kStepGuard = 0.1;

// Fixed-step RK4 on (ψ, φ, θ). Samples at t = 0, dt, 2dt, ..., with the last
// step shortened to land on t_end exactly.
// Throws InvalidInput on a step-guard violation and IntegrationFailure on a
// non-finite state.
Trajectory integrate(const InertiaTensor& inertia, const InitialConditions& init, double t_end,
                     double dt);

struct MomentumSample {
  double t;
  Vec3 l_body;  // not renormalized
  double psi;
};

// RK4 on the momentum form plus ψ' = |L|(lx²/Ix + ly²/Iy)/(lx² + ly²).
// Independent second route for the same motion; used to cross-check integrate.
std::vector<MomentumSample> integrate_momentum(const InertiaTensor& inertia,
                                               const InitialConditions& init, double t_end,
                                               double dt);

// Time between successive maxima of θ(t), from the closed-form envelope and
// the quartic for dlz/dt. Throws DegenerateInput for uniform coins and for
// fixed points of the motion.
double period_lz(const InertiaTensor& inertia, const InitialConditions& init);

struct TerminalState {
  double phi;
  double theta;
  double psi;
};

// Terminal (φ, θ, ψ) of many tosses sharing inertia and initial angles but
// with different |L|, at every checkpoint time (ascending, > 0). The motion
// with |L| at time t is the unit-|L| motion at τ = |L|·t, so one momentum-form
// RK4 run in τ visits all |L|·t in ascending order, landing on each exactly,
// with steps bounded by |L|·dt/Ix <= step_fraction (< kStepGuard).
// Result is indexed [checkpoint][toss].
// Throws IntegrationFailure naming the toss index on a non-finite state.
std::vector<std::vector<TerminalState>> propagate_terminal(const InertiaTensor& inertia,
                                                           double phi0, double theta0,
                                                           double psi0,
                                                           std::span<const double> l_mags,
                                                           std::span<const double> checkpoints,
                                                           double step_fraction = 0.09);

}  // namespace cointoss
