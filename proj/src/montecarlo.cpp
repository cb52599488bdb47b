#include "montecarlo.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "errors.hpp"
#include "stats.hpp"

namespace cointoss {

void MagnitudeDensity::validate() const {
  if (!(stddev > 0.0) || !std::isfinite(stddev)) throw InvalidInput("|L| stddev must be positive");
  if (!(mean > 4.0 * stddev) || !std::isfinite(mean)) {
    throw InvalidInput("|L| mean must exceed 4 standard deviations");
  }
}

std::vector<double> sample_magnitude(const MagnitudeDensity& density, std::uint64_t seed,
                                     std::size_t n) {
  density.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(density.mean, density.stddev);
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    const double x = normal(rng);
    if (x > 0.0) out.push_back(x);
  }
  return out;
}

namespace {

void check_run(const TossSetup& setup, const MagnitudeDensity& density, std::size_t n,
               std::span<const double> t_evals) {
  density.validate();
  if (n < 1000) throw InvalidInput("Monte Carlo needs at least 1000 draws");
  if (t_evals.empty()) throw InvalidInput("at least one evaluation time is required");
  if (!(setup.theta0 >= 0.0 && setup.theta0 <= kPi)) throw InvalidInput("theta0 must lie in [0, pi]");
  for (double t : t_evals) {
    if (!(density.mean * t / setup.inertia.iy() > 1000.0)) {
      std::ostringstream msg;
      msg << "t_eval = " << t << " s is too short: mean |L| * t_eval / Iy must exceed 1000 rad";
      throw InvalidInput(msg.str());
    }
  }
}

McEstimate summarize(const std::vector<TerminalState>& terminal, const TossSetup& setup,
                     double t_eval, std::uint64_t seed) {
  std::size_t heads = 0;
  for (const auto& s : terminal) heads += heads_indicator(setup.dir, s.theta, s.psi) ? 1 : 0;
  McEstimate e;
  e.n = terminal.size();
  e.p_hat = static_cast<double>(heads) / static_cast<double>(e.n);
  e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(e.n));
  e.t_eval = t_eval;
  e.seed = seed;
  return e;
}

}  // namespace

std::vector<McEstimate> estimate_heads_at(const TossSetup& setup, const MagnitudeDensity& density,
                                          std::size_t n, std::span<const double> t_evals,
                                          std::uint64_t seed) {
  check_run(setup, density, n, t_evals);
  const std::vector<double> mags = sample_magnitude(density, seed, n);
  const auto terminal =
      propagate_terminal(setup.inertia, setup.phi0, setup.theta0, setup.psi0, mags, t_evals);
  std::vector<McEstimate> out;
  for (std::size_t k = 0; k < t_evals.size(); ++k) {
    out.push_back(summarize(terminal[k], setup, t_evals[k], seed));
  }
  return out;
}

McEstimate estimate_heads(const TossSetup& setup, const MagnitudeDensity& density, std::size_t n,
                          double t_eval, std::uint64_t seed) {
  const double t[] = {t_eval};
  return estimate_heads_at(setup, density, n, t, seed).front();
}

EquidistributionReport equidistribution_test(const TossSetup& setup,
                                             const MagnitudeDensity& density, std::size_t n,
                                             double t_eval, std::uint64_t seed,
                                             const EquidistributionOptions& options) {
  const double t[] = {t_eval};
  check_run(setup, density, n, t);
  if (options.bins < 2) throw InvalidInput("chi-square grid needs at least 2 bins per axis");

  const std::vector<double> mags = sample_magnitude(density, seed, n);
  const auto terminal =
      propagate_terminal(setup.inertia, setup.phi0, setup.theta0, setup.psi0, mags, t).front();

  EquidistributionReport r;
  r.options = options;
  r.heads = summarize(terminal, setup, t_eval, seed);
  if (setup.inertia.is_uniform()) {
    r.skipped = true;
    r.skip_reason = "axisymmetric coin: phi moves at constant speed and theta is constant";
    return r;
  }
  const NutationBounds bounds = nutation_bounds(setup.inertia, setup.phi0, setup.theta0);
  if (bounds.is_point()) {
    r.skipped = true;
    r.skip_reason = "initial state is a fixed point of the body-frame motion";
    return r;
  }

  std::vector<double> psi(n), phi(n), theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    psi[i] = wrap_two_pi(terminal[i].psi);
    phi[i] = wrap_two_pi(terminal[i].phi);
    theta[i] = terminal[i].theta;
  }
  r.ks_psi = ks_uniform_angle(psi);
  r.ks_phi = ks_uniform_angle(phi);
  const ChiSquareResult chi = chi_square_uniform_grid(psi, phi, options.bins);
  r.chi2 = chi.statistic;
  r.chi2_dof = chi.degrees_of_freedom;
  r.chi2_pvalue = chi.p_value;

  if (!in_fair_region(setup.inertia, setup.phi0, setup.theta0)) {
    const ArcsineParams arc = arcsine_params(setup.inertia, setup.phi0, setup.theta0);
    std::vector<double> csc2(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = std::sin(theta[i]);
      csc2[i] = 1.0 / (s * s);
    }
    r.ks_arcsine = ks_statistic(csc2, [&arc](double x) { return arc.cdf(x); });
  }
  const ThetaDensity dwell(bounds, ThetaLaw::kDwellTime);
  r.ks_theta_dwell = ks_statistic(theta, [&dwell](double y) { return dwell.cdf(y); });
  return r;
}

}  // namespace cointoss
