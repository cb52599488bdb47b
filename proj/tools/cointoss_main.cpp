// cointoss: simulate a tossed coin with triaxial inertia and compute the
// limiting probability of heads.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cointoss/cointoss.h"
#include "run_config.hpp"

using nlohmann::json;
using cointoss::cli::RunConfig;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct CommandError {
  int code;
  std::string message;
};

int exit_code_for(ct_status status) {
  switch (status) {
    case CT_OK: return 0;
    case CT_INVALID_INPUT:
    case CT_DEGENERATE_INPUT:
    case CT_UNSUPPORTED_CASE:
    case CT_IO_ERROR: return kExitInvalid;
    case CT_INTEGRATION_FAILURE:
    case CT_INTERNAL_ERROR: return kExitNumerical;
  }
  return kExitNumerical;
}

void check(ct_status status, const std::string& what) {
  if (status != CT_OK) {
    throw CommandError{exit_code_for(status), what + ": " + ct_last_error_message()};
  }
}

// Command-line values; each set one replaces the config field.
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  bool degrees = false;
  bool print_config = false;

  std::optional<double> ix, iy, iz;
  std::optional<double> l_mag, alpha, beta, phi0, theta0, psi0;
  std::optional<double> dt, t_end;
  std::optional<double> quadrature_target;
  std::optional<std::string> theta_law;
  std::optional<std::uint64_t> mc_n;
  std::optional<double> t_eval, l_mean, l_stddev;
  std::optional<int> n_phi, n_theta;
  std::optional<std::size_t> phi0_grid, pdf_samples;
  std::optional<std::string> theta0_file;
};

void add_common_options(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config_path, "JSON run configuration");
  app.add_option("--out", o.out, "Output file (default: standard output)");
  app.add_option("--seed", o.seed, "Monte Carlo seed");
  app.add_flag("--degrees", o.degrees, "Angle options on the command line are in degrees");
  app.add_flag("--print-config", o.print_config, "Print the resolved configuration and exit");

  app.add_option("--ix", o.ix, "Moment of inertia about e1 (g*cm^2)");
  app.add_option("--iy", o.iy, "Moment of inertia about e2 (g*cm^2)");
  app.add_option("--iz", o.iz, "Moment of inertia about the normal (g*cm^2)");
  app.add_option("--l-mag", o.l_mag, "|L| (g*cm^2/s)");
  app.add_option("--alpha", o.alpha, "Azimuth of L");
  app.add_option("--beta", o.beta, "Polar angle of L (default: theta0)");
  app.add_option("--phi0", o.phi0, "Initial phi");
  app.add_option("--theta0", o.theta0, "Initial theta");
  app.add_option("--psi0", o.psi0, "Initial psi");
  app.add_option("--dt", o.dt, "Integration step (s)");
  app.add_option("--t-end", o.t_end, "Simulated time span (s)");
  app.add_option("--quadrature-target", o.quadrature_target,
                 "Largest accepted quadrature error estimate");
  app.add_option("--theta-law", o.theta_law, "Long-time law of theta: dwell or arcsine");
  app.add_option("--n", o.mc_n, "Monte Carlo draws");
  app.add_option("--t-eval", o.t_eval, "Monte Carlo evaluation time (s)");
  app.add_option("--l-mean", o.l_mean, "Mean of |L| (g*cm^2/s)");
  app.add_option("--l-stddev", o.l_stddev, "Standard deviation of |L| (g*cm^2/s)");
  app.add_option("--n-phi", o.n_phi, "Fair-region grid points in phi0");
  app.add_option("--n-theta", o.n_theta, "Fair-region grid points in theta0");
  app.add_option("--phi0-grid", o.phi0_grid, "Midpoint grid size for averaging over phi0");
  app.add_option("--samples", o.pdf_samples, "Number of theta values for pdf-theta");
  app.add_option("--theta0-file", o.theta0_file, "CSV of theta0 samples (theta0_radians,weight)");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c;
  if (o.config_path) c = cointoss::cli::load_config(*o.config_path);
  const double angle = o.degrees ? std::numbers::pi / 180.0 : 1.0;
  auto set = [](auto& field, const auto& value, double scale = 1.0) {
    if (value) field = *value * scale;
  };
  set(c.ix, o.ix);
  set(c.iy, o.iy);
  set(c.iz, o.iz);
  set(c.l_mag, o.l_mag);
  set(c.alpha, o.alpha, angle);
  if (o.beta) c.beta = *o.beta * angle;
  set(c.phi0, o.phi0, angle);
  set(c.theta0, o.theta0, angle);
  set(c.psi0, o.psi0, angle);
  set(c.dt, o.dt);
  set(c.t_end, o.t_end);
  set(c.quadrature_target, o.quadrature_target);
  if (o.theta_law) c.theta_law = *o.theta_law;
  if (o.mc_n) c.mc_n = *o.mc_n;
  if (o.seed) c.seed = *o.seed;
  set(c.t_eval, o.t_eval);
  set(c.l_mean, o.l_mean);
  set(c.l_stddev, o.l_stddev);
  if (o.n_phi) c.n_phi = *o.n_phi;
  if (o.n_theta) c.n_theta = *o.n_theta;
  if (o.phi0_grid) c.phi0_grid = *o.phi0_grid;
  if (o.pdf_samples) c.pdf_samples = *o.pdf_samples;
  if (o.out) c.output = *o.out;
  return c;
}

ct_inertia inertia_of(const RunConfig& c) {
  const ct_inertia in{c.ix, c.iy, c.iz};
  check(ct_validate_inertia(&in), "inertia");
  return in;
}

ct_initial_conditions initial_of(const RunConfig& c) {
  const ct_initial_conditions ic{c.l_mag, c.alpha, c.effective_beta(), c.phi0, c.theta0, c.psi0};
  check(ct_validate_initial_conditions(&ic), "initial conditions");
  return ic;
}

ct_theta_law law_of(const RunConfig& c) {
  ct_theta_law law{};
  check(ct_parse_theta_law(c.theta_law.c_str(), &law), "quadrature.theta_law");
  return law;
}

ct_magnitude_density density_of(const RunConfig& c) { return {c.l_mean, c.l_stddev}; }

// Standard output or the configured file.
class Output {
 public:
  explicit Output(const std::optional<std::string>& path) {
    if (!path || *path == "-") return;
    file_ = std::fopen(path->c_str(), "w");
    if (file_ == nullptr) throw CommandError{kExitInvalid, "cannot open output '" + *path + "'"};
  }
  ~Output() {
    if (file_ != nullptr) std::fclose(file_);
  }
  Output(const Output&) = delete;
  Output& operator=(const Output&) = delete;

  FILE* stream() const { return file_ != nullptr ? file_ : stdout; }
  void write(const std::string& text) const {
    if (std::fwrite(text.data(), 1, text.size(), stream()) != text.size() ||
        std::fflush(stream()) != 0) {
      throw CommandError{kExitInvalid, "write to output failed"};
    }
  }
  void write_json(const json& doc) const { write(doc.dump(2) + "\n"); }

 private:
  FILE* file_ = nullptr;
};

json parameters(const RunConfig& c) {
  return {{"ix", c.ix},         {"iy", c.iy},         {"iz", c.iz},
          {"l_mag", c.l_mag},   {"alpha", c.alpha},   {"beta", c.effective_beta()},
          {"phi0", c.phi0},     {"theta0", c.theta0}, {"psi0", c.psi0}};
}

void cmd_simulate(const RunConfig& c) {
  const ct_inertia in = inertia_of(c);
  const ct_initial_conditions ic = initial_of(c);
  ct_trajectory* traj = nullptr;
  check(ct_simulate(&in, &ic, c.t_end, c.dt, &traj), "simulate");
  Output out(c.output);
  const ct_status st = ct_trajectory_write_csv(traj, out.stream());
  ct_trajectory_free(traj);
  check(st, "simulate");
}

void cmd_bounds(const RunConfig& c) {
  const ct_inertia in = inertia_of(c);
  ct_envelope b{};
  int fair = 0;
  check(ct_nutation_bounds(&in, c.phi0, c.theta0, &b), "bounds");
  check(ct_in_fair_region(&in, c.phi0, c.theta0, &fair), "bounds");
  Output(c.output).write_json({{"c1", b.c1},
                               {"c2", b.c2},
                               {"theta_m", b.theta_m},
                               {"theta_M", b.theta_M},
                               {"case_tag", ct_envelope_case_name(b.case_tag)},
                               {"fair", fair != 0},
                               {"parameters", parameters(c)}});
}

json probability_report(const ct_probability& p, ct_theta_law law) {
  return {{"p", p.p},
          {"abs_error_estimate", p.abs_error_estimate},
          {"method_tag", ct_method_name(p.method)},
          {"theta_law", ct_theta_law_name(law)}};
}

void check_target(const ct_probability& p, const RunConfig& c) {
  if (!(p.abs_error_estimate <= c.quadrature_target)) {
    throw CommandError{kExitNumerical, "quadrature error estimate " +
                                           std::to_string(p.abs_error_estimate) +
                                           " exceeds the target " +
                                           std::to_string(c.quadrature_target)};
  }
}

void cmd_prob(const RunConfig& c) {
  const ct_inertia in = inertia_of(c);
  const ct_theta_law law = law_of(c);
  ct_probability p{};
  check(ct_heads_probability(&in, c.effective_beta(), c.phi0, c.theta0, law, &p), "prob");
  check_target(p, c);
  json doc = probability_report(p, law);
  doc["parameters"] = parameters(c);
  Output(c.output).write_json(doc);
}

void cmd_prob_aggregate(const RunConfig& c, const std::optional<std::string>& theta0_file) {
  if (!theta0_file) throw CommandError{kExitInvalid, "prob-aggregate needs --theta0-file"};
  const ct_inertia in = inertia_of(c);
  const ct_theta_law law = law_of(c);
  ct_theta0_samples* samples = nullptr;
  check(ct_theta0_samples_load_csv(theta0_file->c_str(), &samples), "prob-aggregate");
  ct_probability p{};
  const ct_status st = ct_aggregate_probability(&in, samples, c.phi0_grid, law, &p);
  const std::size_t count = ct_theta0_samples_size(samples);
  ct_theta0_samples_free(samples);
  check(st, "prob-aggregate");
  check_target(p, c);
  json doc = probability_report(p, law);
  doc["parameters"] = {{"ix", c.ix},
                       {"iy", c.iy},
                       {"iz", c.iz},
                       {"theta0_file", *theta0_file},
                       {"theta0_samples", count},
                       {"phi0_grid_size", c.phi0_grid}};
  Output(c.output).write_json(doc);
}

json estimate_json(const ct_mc_estimate& e) {
  return {{"p_hat", e.p_hat}, {"std_error", e.std_error}, {"n", e.n}, {"t_eval", e.t_eval}};
}

void cmd_montecarlo(const RunConfig& c) {
  const ct_inertia in = inertia_of(c);
  const ct_initial_conditions ic = initial_of(c);
  const ct_magnitude_density density = density_of(c);
  const double times[2] = {c.t_eval, 2.0 * c.t_eval};
  ct_mc_estimate est[2]{};
  check(ct_estimate_heads_at(&in, &ic, &density, c.mc_n, times, 2, c.seed, est), "montecarlo");
  const ct_equidistribution_options opts = ct_default_equidistribution_options();
  ct_equidistribution_report rep{};
  check(ct_equidistribution_test(&in, &ic, &density, c.mc_n, c.t_eval, c.seed, &opts, &rep),
        "montecarlo");

  json doc = {{"p_hat", est[0].p_hat},
              {"std_error", est[0].std_error},
              {"n", est[0].n},
              {"t_eval", est[0].t_eval},
              {"seed", est[0].seed},
              {"rng", ct_rng_algorithm()},
              {"doubled_t_eval", estimate_json(est[1])},
              {"equidistribution_skipped", rep.skipped != 0}};
  const json none(nullptr);
  const bool stats = rep.skipped == 0;
  doc["ks_psi"] = stats ? json(rep.ks_psi) : none;
  doc["ks_phi"] = stats ? json(rep.ks_phi) : none;
  doc["chi2"] = stats ? json(rep.chi2) : none;
  doc["chi2_dof"] = stats ? json(rep.chi2_dof) : none;
  doc["chi2_pvalue"] = stats ? json(rep.chi2_pvalue) : none;
  doc["ks_arcsine"] = rep.has_ks_arcsine ? json(rep.ks_arcsine) : none;
  doc["ks_theta_dwell"] = rep.has_ks_theta_dwell ? json(rep.ks_theta_dwell) : none;
  doc["thresholds"] = {{"ks", opts.ks_threshold},
                       {"chi2_pvalue", opts.chi2_pvalue_threshold},
                       {"chi2_bins", opts.bins}};
  doc["density"] = {{"kind", "gaussian-truncated"}, {"mean", c.l_mean}, {"stddev", c.l_stddev}};
  doc["parameters"] = parameters(c);
  Output(c.output).write_json(doc);
}

void cmd_fair_region(const RunConfig& c) {
  const ct_inertia in = inertia_of(c);
  Output out(c.output);
  check(ct_fair_region_write_csv(&in, c.n_phi, c.n_theta, out.stream()), "fair-region");
}

void cmd_pdf_theta(const RunConfig& c) {
  const ct_inertia in = inertia_of(c);
  const ct_theta_law law = law_of(c);
  if (c.pdf_samples < 2) throw CommandError{kExitInvalid, "pdf-theta needs at least 2 samples"};
  ct_envelope b{};
  check(ct_nutation_bounds(&in, c.phi0, c.theta0, &b), "pdf-theta");
  ct_theta_density* density = nullptr;
  check(ct_theta_density_create(&b, law, &density), "pdf-theta");

  std::string text = "theta,pdf\n";
  char row[64];
  ct_status st = CT_OK;
  if (ct_theta_density_is_point_mass(density)) {
    std::snprintf(row, sizeof row, "%.17g,inf\n", ct_theta_density_point_mass_location(density));
    text += row;
  } else {
    // Chebyshev points cluster toward the integrable end singularities.
    const double mid = 0.5 * (b.theta_m + b.theta_M), half = 0.5 * (b.theta_M - b.theta_m);
    const std::size_t n = c.pdf_samples;
    for (std::size_t k = 0; k < n && st == CT_OK; ++k) {
      const double y = mid - half * std::cos(std::numbers::pi * (k + 0.5) / n);
      double f = 0.0;
      st = ct_theta_density_pdf(density, y, &f);
      std::snprintf(row, sizeof row, "%.17g,%.17g\n", y, f);
      text += row;
    }
  }
  ct_theta_density_free(density);
  check(st, "pdf-theta");
  Output(c.output).write(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coin toss with triaxial inertia: simulation, envelope, probability of heads"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides o;
  add_common_options(app, o);

  CLI::App* simulate = app.add_subcommand("simulate", "Integrate the motion, write a CSV trajectory");
  CLI::App* bounds = app.add_subcommand("bounds", "Nutation envelope and fair-region test (JSON)");
  CLI::App* prob = app.add_subcommand("prob", "Limiting probability of heads (JSON)");
  CLI::App* aggregate =
      app.add_subcommand("prob-aggregate", "Probability averaged over theta0 samples and phi0");
  CLI::App* montecarlo = app.add_subcommand("montecarlo", "Monte Carlo estimate and statistics");
  CLI::App* fair = app.add_subcommand("fair-region", "Fair-region grid (CSV)");
  CLI::App* pdf = app.add_subcommand("pdf-theta", "Density of the nutation angle (CSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    const RunConfig config = resolve(o);
    if (o.print_config) {
      std::cout << cointoss::cli::to_json(config).dump(2) << '\n';
      return 0;
    }
    if (*simulate) cmd_simulate(config);
    if (*bounds) cmd_bounds(config);
    if (*prob) cmd_prob(config);
    if (*aggregate) cmd_prob_aggregate(config, o.theta0_file);
    if (*montecarlo) cmd_montecarlo(config);
    if (*fair) cmd_fair_region(config);
    if (*pdf) cmd_pdf_theta(config);
  } catch (const cointoss::cli::ConfigError& e) {
    std::cerr << "cointoss: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const CommandError& e) {
    std::cerr << "cointoss: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "cointoss: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
