#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "analysis.hpp"
#include "errors.hpp"

namespace cointoss {

namespace {

struct AngleState {
  double psi;
  double phi;
  double theta;
};

AngleState rk4_angles(const InertiaTensor& inertia, const AngleState& s, double l_mag, double h) {
  auto rate = [&](const AngleState& x) {
    const AngleRates r = euler_rhs_angles(inertia, x.phi, x.theta, l_mag);
    return AngleState{r.psi_dot, r.phi_dot, r.theta_dot};
  };
  auto axpy = [](const AngleState& x, const AngleState& k, double f) {
    return AngleState{x.psi + f * k.psi, x.phi + f * k.phi, x.theta + f * k.theta};
  };
  const AngleState k1 = rate(s);
  const AngleState k2 = rate(axpy(s, k1, 0.5 * h));
  const AngleState k3 = rate(axpy(s, k2, 0.5 * h));
  const AngleState k4 = rate(axpy(s, k3, h));
  return {s.psi + h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi),
          s.phi + h / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi),
          s.theta + h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta)};
}

void check_step(const InertiaTensor& inertia, double l_mag, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("dt must be positive and finite");
  if (l_mag * dt / inertia.ix() >= kStepGuard) {
    std::ostringstream msg;
    msg << "step guard violated: |L|*dt/Ix = " << l_mag * dt / inertia.ix() << " >= "
        << kStepGuard << "; reduce dt below " << kStepGuard * inertia.ix() / l_mag;
    throw InvalidInput(msg.str());
  }
}

// Number of steps of size dt covering [0, t_end]; a remainder below 1e-9 dt
// is treated as rounding.
long step_count(double t_end, double dt) {
  const double ratio = t_end / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) return static_cast<long>(nearest);
  return static_cast<long>(std::ceil(ratio));
}

// Momentum form with ψ, one step for a batch of lanes.
struct UnitState {
  double lx, ly, lz, psi;
};

}  // namespace

InertiaTensor::InertiaTensor(double ix, double iy, double iz) : ix_(ix), iy_(iy), iz_(iz) {
  if (!std::isfinite(ix) || !std::isfinite(iy) || !std::isfinite(iz)) {
    throw InvalidInput("inertia moments must be finite");
  }
  if (!(ix > 0.0 && ix <= iy && iy < iz)) {
    throw InvalidInput("inertia must satisfy 0 < Ix <= Iy < Iz");
  }
}

void InitialConditions::validate() const {
  if (!(l_mag > 0.0) || !std::isfinite(l_mag)) throw InvalidInput("|L| must be positive and finite");
  if (!std::isfinite(phi0) || !std::isfinite(theta0) || !std::isfinite(psi0)) {
    throw InvalidInput("initial angles must be finite");
  }
  if (theta0 < 0.0 || theta0 > kPi) throw InvalidInput("theta0 must lie in [0, pi]");
}

UnitVector3 body_momentum(double phi, double theta) { return UnitVector3::spherical(phi, theta); }

Vec3 euler_rhs_momentum(const InertiaTensor& inertia, const UnitVector3& l, double l_mag) {
  const double a = inertia.inv_x(), b = inertia.inv_y(), c = inertia.inv_z();
  return {l_mag * (c - b) * l.y() * l.z(), l_mag * (a - c) * l.z() * l.x(),
          l_mag * (b - a) * l.x() * l.y()};
}

AngleRates euler_rhs_angles(const InertiaTensor& inertia, double phi, double theta, double l_mag) {
  const double a = inertia.inv_x(), b = inertia.inv_y(), c = inertia.inv_z();
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double precession = a * cf * cf + b * sf * sf;
  return {l_mag * precession, l_mag * std::cos(theta) * (precession - c),
          l_mag * (a - b) * std::sin(theta) * sf * cf};
}

double energy(const InertiaTensor& inertia, const UnitVector3& l, double l_mag) {
  return 0.5 * l_mag * l_mag *
         (l.x() * l.x() * inertia.inv_x() + l.y() * l.y() * inertia.inv_y() +
          l.z() * l.z() * inertia.inv_z());
}

Trajectory integrate(const InertiaTensor& inertia, const InitialConditions& init, double t_end,
                     double dt) {
  init.validate();
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidInput("t_end must be finite and >= 0");
  check_step(inertia, init.l_mag, dt);

  Trajectory traj{inertia, init, dt, {}};
  const long steps = t_end > 0.0 ? step_count(t_end, dt) : 0;
  traj.samples.reserve(static_cast<std::size_t>(steps) + 1);

  AngleState s{init.psi0, init.phi0, init.theta0};
  traj.samples.push_back({0.0, s.phi, s.theta, s.psi, body_momentum(s.phi, s.theta)});
  double t = 0.0;
  for (long i = 1; i <= steps; ++i) {
    const double t_next = i == steps ? t_end : static_cast<double>(i) * dt;
    s = rk4_angles(inertia, s, init.l_mag, t_next - t);
    if (!std::isfinite(s.psi) || !std::isfinite(s.phi) || !std::isfinite(s.theta)) {
      throw IntegrationFailure("non-finite state during integration", t_next);
    }
    t = t_next;
    traj.samples.push_back({t, s.phi, s.theta, s.psi, body_momentum(s.phi, s.theta)});
  }
  return traj;
}

std::vector<MomentumSample> integrate_momentum(const InertiaTensor& inertia,
                                               const InitialConditions& init, double t_end,
                                               double dt) {
  init.validate();
  check_step(inertia, init.l_mag, dt);
  const double a = inertia.inv_x(), b = inertia.inv_y();
  const double L = init.l_mag;
  struct S {
    Vec3 l;
    double psi;
  };
  const double cf0 = std::cos(init.phi0), sf0 = std::sin(init.phi0);
  auto rate = [&](const S& s) {
    const double c = inertia.inv_z();
    const Vec3 dl{L * (c - b) * s.l.y * s.l.z, L * (a - c) * s.l.z * s.l.x,
                  L * (b - a) * s.l.x * s.l.y};
    const double s2 = s.l.x * s.l.x + s.l.y * s.l.y;
    const double dpsi = s2 > 0.0 ? L * (a * s.l.x * s.l.x + b * s.l.y * s.l.y) / s2
                                 : L * (a * cf0 * cf0 + b * sf0 * sf0);
    return S{dl, dpsi};
  };
  auto axpy = [](const S& x, const S& k, double f) {
    return S{{x.l.x + f * k.l.x, x.l.y + f * k.l.y, x.l.z + f * k.l.z}, x.psi + f * k.psi};
  };

  const UnitVector3 l0 = body_momentum(init.phi0, init.theta0);
  S s{l0.vec(), init.psi0};
  std::vector<MomentumSample> out;
  const long steps = t_end > 0.0 ? step_count(t_end, dt) : 0;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back({0.0, s.l, s.psi});
  double t = 0.0;
  for (long i = 1; i <= steps; ++i) {
    const double t_next = i == steps ? t_end : static_cast<double>(i) * dt;
    const double h = t_next - t;
    const S k1 = rate(s);
    const S k2 = rate(axpy(s, k1, 0.5 * h));
    const S k3 = rate(axpy(s, k2, 0.5 * h));
    const S k4 = rate(axpy(s, k3, h));
    s.l.x += h / 6.0 * (k1.l.x + 2.0 * k2.l.x + 2.0 * k3.l.x + k4.l.x);
    s.l.y += h / 6.0 * (k1.l.y + 2.0 * k2.l.y + 2.0 * k3.l.y + k4.l.y);
    s.l.z += h / 6.0 * (k1.l.z + 2.0 * k2.l.z + 2.0 * k3.l.z + k4.l.z);
    s.psi += h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
    if (!std::isfinite(s.l.x + s.l.y + s.l.z + s.psi)) {
      throw IntegrationFailure("non-finite state during momentum integration", t_next);
    }
    t = t_next;
    out.push_back({t, s.l, s.psi});
  }
  return out;
}

double period_lz(const InertiaTensor& inertia, const InitialConditions& init) {
  init.validate();
  return 2.0 / init.l_mag * half_period_integral(inertia, init.phi0, init.theta0);
}

std::vector<std::vector<TerminalState>> propagate_terminal(const InertiaTensor& inertia,
                                                           double phi0, double theta0,
                                                           double psi0,
                                                           std::span<const double> l_mags,
                                                           std::span<const double> checkpoints,
                                                           double step_fraction) {
  if (!(step_fraction > 0.0 && step_fraction < kStepGuard)) {
    throw InvalidInput("step_fraction must lie in (0, step guard)");
  }
  if (checkpoints.empty()) throw InvalidInput("at least one checkpoint time is required");
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    const double prev = k == 0 ? 0.0 : checkpoints[k - 1];
    if (!(checkpoints[k] > prev) || !std::isfinite(checkpoints[k])) {
      throw InvalidInput("checkpoint times must be finite, positive and increasing");
    }
  }
  for (double L : l_mags) {
    if (!(L > 0.0) || !std::isfinite(L)) throw InvalidInput("|L| draws must be positive and finite");
  }

  const double a = inertia.inv_x(), b = inertia.inv_y(), c = inertia.inv_z();
  const double kx = c - b, ky = a - c, kz = b - a;
  const double cf0 = std::cos(phi0), sf0 = std::sin(phi0);
  const double pole_rate = a * cf0 * cf0 + b * sf0 * sf0;
  const UnitVector3 l0 = body_momentum(phi0, theta0);

  // Unit-|L| time of every (checkpoint, toss) pair, visited in ascending order.
  const std::size_t n = l_mags.size();
  std::vector<std::pair<double, std::size_t>> targets;
  targets.reserve(n * checkpoints.size());
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) targets.emplace_back(l_mags[i] * checkpoints[k], k * n + i);
  }
  std::sort(targets.begin(), targets.end());

  auto rate = [&](const UnitState& x) {
    const double s2 = x.lx * x.lx + x.ly * x.ly;
    const double num = a * x.lx * x.lx + b * x.ly * x.ly;
    return UnitState{kx * x.ly * x.lz, ky * x.lz * x.lx, kz * x.lx * x.ly,
                     s2 > 0.0 ? num / s2 : pole_rate};
  };
  auto axpy = [](const UnitState& x, double h, const UnitState& k) {
    return UnitState{x.lx + h * k.lx, x.ly + h * k.ly, x.lz + h * k.lz, x.psi + h * k.psi};
  };
  auto rk4 = [&](const UnitState& x, double h) {
    const UnitState k1 = rate(x);
    const UnitState k2 = rate(axpy(x, 0.5 * h, k1));
    const UnitState k3 = rate(axpy(x, 0.5 * h, k2));
    const UnitState k4 = rate(axpy(x, h, k3));
    return UnitState{x.lx + h / 6.0 * (k1.lx + 2.0 * k2.lx + 2.0 * k3.lx + k4.lx),
                     x.ly + h / 6.0 * (k1.ly + 2.0 * k2.ly + 2.0 * k3.ly + k4.ly),
                     x.lz + h / 6.0 * (k1.lz + 2.0 * k2.lz + 2.0 * k3.lz + k4.lz),
                     x.psi + h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi)};
  };

  // |L|·dt/Ix <= step_fraction for the scaled time τ = |L|·t.
  const double h_max = step_fraction * inertia.ix();
  std::vector<std::vector<TerminalState>> out(checkpoints.size(), std::vector<TerminalState>(n));
  UnitState s{l0.x(), l0.y(), l0.z(), psi0};
  double tau = 0.0;
  for (const auto& [target, slot] : targets) {
    const std::size_t k = slot / n, i = slot % n;
    while (tau < target) {
      const double h = std::min(h_max, target - tau);
      s = rk4(s, h);
      tau = target - tau <= h_max ? target : tau + h;
    }
    const double rho = std::hypot(s.lx, s.ly);
    if (!std::isfinite(rho + s.lz + s.psi)) {
      std::ostringstream msg;
      msg << "non-finite state for draw " << i << " (|L| = " << l_mags[i] << ")";
      throw IntegrationFailure(msg.str(), checkpoints[k]);
    }
    out[k][i] = TerminalState{rho > 0.0 ? std::atan2(s.ly, s.lx) : phi0, std::atan2(rho, s.lz),
                              s.psi};
  }
  return out;
}

}  // namespace cointoss
