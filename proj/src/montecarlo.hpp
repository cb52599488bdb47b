#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "dynamics.hpp"

namespace cointoss {

// Name recorded in every report for the generator and the normal sampler.
inline constexpr const char* kRngAlgorithm = "mt19937_64/std::normal_distribution";

// Gaussian density of |L| truncated to (0, ∞).
struct MagnitudeDensity {
  double mean = 1000.0;
  double stddev = 100.0;

  void validate() const;  // stddev > 0, mean > 4·stddev
};

// n draws, deterministic for a fixed seed. Non-positive draws are rejected
// and redrawn.
std::vector<double> sample_magnitude(const MagnitudeDensity& density, std::uint64_t seed,
                                     std::size_t n);

// Shared inputs of a batch of tosses that differ only in |L|.
struct TossSetup {
  InertiaTensor inertia = InertiaTensor::half_dollar();
  MomentumDirection dir;
  double phi0 = 0.0;
  double theta0 = kPi / 2.0;
  double psi0 = 0.0;
};

struct McEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;  // √(p̂(1 − p̂)/n)
  std::size_t n = 0;
  double t_eval = 0.0;
  std::uint64_t seed = 0;
  std::string rng = kRngAlgorithm;
};

// Heads fraction at each time in t_evals (ascending) from one set of draws.
// Requires n >= 1000 and mean·t/Iy > 1000 rad for every t.
std::vector<McEstimate> estimate_heads_at(const TossSetup& setup, const MagnitudeDensity& density,
                                          std::size_t n, std::span<const double> t_evals,
                                          std::uint64_t seed);

McEstimate estimate_heads(const TossSetup& setup, const MagnitudeDensity& density, std::size_t n,
                          double t_eval, std::uint64_t seed);

struct EquidistributionOptions {
  int bins = 16;
  double ks_threshold = 0.02;
  double chi2_pvalue_threshold = 0.001;
};

struct EquidistributionReport {
  McEstimate heads;
  // Axisymmetric coins: φ runs on a circle at constant speed and θ is fixed,
  // so the statistics below are not computed.
  bool skipped = false;
  std::string skip_reason;

  double ks_psi = 0.0;  // ψ mod 2π vs U[0, 2π)
  double ks_phi = 0.0;  // φ mod 2π vs U[0, 2π)
  double chi2 = 0.0;    // joint (ψ, φ) on bins × bins
  int chi2_dof = 0;
  double chi2_pvalue = 1.0;
  std::optional<double> ks_arcsine;      // csc²θ vs Arcsine(lo, hi); absent in the fair region
  std::optional<double> ks_theta_dwell;  // θ vs the dwell-time law

  EquidistributionOptions options;

  bool psi_passes() const { return !skipped && ks_psi < options.ks_threshold; }
  bool phi_passes() const { return !skipped && ks_phi < options.ks_threshold; }
  bool joint_passes() const { return !skipped && chi2_pvalue > options.chi2_pvalue_threshold; }
  bool arcsine_passes() const { return ks_arcsine && *ks_arcsine < options.ks_threshold; }
  bool dwell_passes() const { return ks_theta_dwell && *ks_theta_dwell < options.ks_threshold; }
};

EquidistributionReport equidistribution_test(const TossSetup& setup,
                                             const MagnitudeDensity& density, std::size_t n,
                                             double t_eval, std::uint64_t seed,
                                             const EquidistributionOptions& options = {});

}  // namespace cointoss
