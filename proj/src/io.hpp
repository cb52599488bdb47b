#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include "dynamics.hpp"
#include "probability.hpp"

namespace cointoss {

// Header t,phi,theta,psi,lx,ly,lz,nz,heads; 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

// Header phi0,theta0,fair. φ0 = 2πi/n_phi for i < n_phi and
// θ0 = πj/(n_theta − 1) for j < n_theta, both ends of [0, π] included.
void write_fair_region_csv(std::ostream& out, const InertiaTensor& inertia, int n_phi,
                           int n_theta);

// CSV with header theta0_radians[,weight]. Missing or empty weights count
// as 1. Blank lines are skipped. Errors name the offending line.
std::vector<Theta0Sample> read_theta0_samples(std::istream& in);

}  // namespace cointoss
