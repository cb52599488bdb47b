#include "cointoss/cointoss.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "montecarlo.hpp"
#include "probability.hpp"

struct ct_trajectory {
  cointoss::Trajectory value;
};

struct ct_theta_density {
  cointoss::ThetaDensity value;
};

struct ct_theta0_samples {
  std::vector<cointoss::Theta0Sample> value;
};

namespace {

thread_local std::string last_error;

ct_status fail(ct_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs body and maps library exceptions to status codes.
template <class F>
ct_status guarded(F&& body) {
  try {
    body();
    return CT_OK;
  } catch (const cointoss::InvalidInput& e) {
    return fail(CT_INVALID_INPUT, e.what());
  } catch (const cointoss::DegenerateInput& e) {
    return fail(CT_DEGENERATE_INPUT, e.what());
  } catch (const cointoss::UnsupportedCase& e) {
    return fail(CT_UNSUPPORTED_CASE, e.what());
  } catch (const cointoss::IntegrationFailure& e) {
    return fail(CT_INTEGRATION_FAILURE, e.what());
  } catch (const cointoss::IoError& e) {
    return fail(CT_IO_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CT_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(CT_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(CT_INTERNAL_ERROR, "unknown error");
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw cointoss::InvalidInput(std::string(name) + " must not be null");
}

cointoss::InertiaTensor to_core(const ct_inertia* in) {
  require(in, "inertia");
  return {in->ix, in->iy, in->iz};
}

cointoss::InitialConditions to_core(const ct_initial_conditions* in) {
  require(in, "initial conditions");
  cointoss::InitialConditions ic;
  ic.l_mag = in->l_mag;
  ic.dir = cointoss::MomentumDirection(in->alpha, in->beta);
  ic.phi0 = in->phi0;
  ic.theta0 = in->theta0;
  ic.psi0 = in->psi0;
  ic.validate();
  return ic;
}

cointoss::TossSetup toss_setup(const ct_inertia* inertia, const ct_initial_conditions* init) {
  require(init, "initial conditions");
  cointoss::TossSetup s;
  s.inertia = to_core(inertia);
  s.dir = cointoss::MomentumDirection(init->alpha, init->beta);
  s.phi0 = init->phi0;
  s.theta0 = init->theta0;
  s.psi0 = init->psi0;
  return s;
}

cointoss::MagnitudeDensity to_core(const ct_magnitude_density* in) {
  require(in, "magnitude density");
  return {in->mean, in->stddev};
}

cointoss::ThetaLaw to_core(ct_theta_law law) {
  switch (law) {
    case CT_THETA_LAW_DWELL: return cointoss::ThetaLaw::kDwellTime;
    case CT_THETA_LAW_ARCSINE: return cointoss::ThetaLaw::kArcsine;
  }
  throw cointoss::InvalidInput("unknown theta law");
}

ct_envelope_case to_c(cointoss::EnvelopeCase c) {
  switch (c) {
    case cointoss::EnvelopeCase::kSupplementary: return CT_ENVELOPE_SUPPLEMENTARY;
    case cointoss::EnvelopeCase::kBothAcute: return CT_ENVELOPE_BOTH_ACUTE;
    case cointoss::EnvelopeCase::kBothObtuse: return CT_ENVELOPE_BOTH_OBTUSE;
    case cointoss::EnvelopeCase::kUniformDegenerate: return CT_ENVELOPE_UNIFORM_DEGENERATE;
  }
  return CT_ENVELOPE_UNIFORM_DEGENERATE;
}

cointoss::EnvelopeCase to_core(ct_envelope_case c) {
  switch (c) {
    case CT_ENVELOPE_SUPPLEMENTARY: return cointoss::EnvelopeCase::kSupplementary;
    case CT_ENVELOPE_BOTH_ACUTE: return cointoss::EnvelopeCase::kBothAcute;
    case CT_ENVELOPE_BOTH_OBTUSE: return cointoss::EnvelopeCase::kBothObtuse;
    case CT_ENVELOPE_UNIFORM_DEGENERATE: return cointoss::EnvelopeCase::kUniformDegenerate;
  }
  throw cointoss::InvalidInput("unknown envelope case");
}

ct_probability to_c(const cointoss::HeadsProbability& hp) {
  ct_probability out{hp.p, hp.abs_error_estimate, CT_METHOD_QUADRATURE};
  switch (hp.method) {
    case cointoss::ProbabilityMethod::kQuadrature: out.method = CT_METHOD_QUADRATURE; break;
    case cointoss::ProbabilityMethod::kClosedFormUniform:
      out.method = CT_METHOD_CLOSED_FORM_UNIFORM;
      break;
    case cointoss::ProbabilityMethod::kFairSymmetry: out.method = CT_METHOD_FAIR_SYMMETRY; break;
  }
  return out;
}

ct_mc_estimate to_c(const cointoss::McEstimate& e) {
  return {e.p_hat, e.std_error, static_cast<uint64_t>(e.n), e.t_eval, e.seed};
}

void check_stream(FILE* stream, const std::string& text) {
  require(stream, "stream");
  if (std::fwrite(text.data(), 1, text.size(), stream) != text.size() || std::fflush(stream) != 0) {
    throw cointoss::IoError("write to output stream failed");
  }
}

}  // namespace

extern "C" {

const char* ct_status_name(ct_status status) {
  switch (status) {
    case CT_OK: return "ok";
    case CT_INVALID_INPUT: return "invalid-input";
    case CT_DEGENERATE_INPUT: return "degenerate-input";
    case CT_UNSUPPORTED_CASE: return "unsupported-case";
    case CT_INTEGRATION_FAILURE: return "integration-failure";
    case CT_IO_ERROR: return "io-error";
    case CT_INTERNAL_ERROR: return "internal-error";
  }
  return "unknown";
}

const char* ct_last_error_message(void) { return last_error.c_str(); }
const char* ct_version(void) { return "0.1.0"; }
const char* ct_rng_algorithm(void) { return cointoss::kRngAlgorithm; }

const char* ct_envelope_case_name(ct_envelope_case c) {
  switch (c) {
    case CT_ENVELOPE_SUPPLEMENTARY: return "supplementary";
    case CT_ENVELOPE_BOTH_ACUTE: return "both-acute";
    case CT_ENVELOPE_BOTH_OBTUSE: return "both-obtuse";
    case CT_ENVELOPE_UNIFORM_DEGENERATE: return "uniform-degenerate";
  }
  return "unknown";
}

const char* ct_method_name(ct_method m) {
  switch (m) {
    case CT_METHOD_QUADRATURE: return "quadrature";
    case CT_METHOD_CLOSED_FORM_UNIFORM: return "closed-form-uniform";
    case CT_METHOD_FAIR_SYMMETRY: return "fair-symmetry";
  }
  return "unknown";
}

const char* ct_theta_law_name(ct_theta_law law) {
  return law == CT_THETA_LAW_ARCSINE ? "arcsine" : "dwell";
}

ct_status ct_parse_theta_law(const char* name, ct_theta_law* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    const auto law = cointoss::parse_theta_law(name);
    if (!law) throw cointoss::InvalidInput(std::string("unknown theta law '") + name + "'");
    *out = *law == cointoss::ThetaLaw::kArcsine ? CT_THETA_LAW_ARCSINE : CT_THETA_LAW_DWELL;
  });
}

ct_inertia ct_half_dollar_inertia(void) {
  const auto h = cointoss::InertiaTensor::half_dollar();
  return {h.ix(), h.iy(), h.iz()};
}

ct_status ct_validate_inertia(const ct_inertia* inertia) {
  return guarded([&] { to_core(inertia); });
}

ct_status ct_validate_initial_conditions(const ct_initial_conditions* init) {
  return guarded([&] { to_core(init); });
}

ct_equidistribution_options ct_default_equidistribution_options(void) {
  const cointoss::EquidistributionOptions o;
  return {o.bins, o.ks_threshold, o.chi2_pvalue_threshold};
}

ct_status ct_normal_in_reference(double alpha, double beta, double phi, double theta, double psi,
                                 double out_xyz[3]) {
  return guarded([&] {
    require(out_xyz, "out");
    const auto n =
        cointoss::normal_in_reference(cointoss::MomentumDirection(alpha, beta), phi, theta, psi);
    out_xyz[0] = n.x();
    out_xyz[1] = n.y();
    out_xyz[2] = n.z();
  });
}

ct_status ct_heads_indicator(double alpha, double beta, double theta, double psi, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = cointoss::heads_indicator(cointoss::MomentumDirection(alpha, beta), theta, psi) ? 1 : 0;
  });
}

ct_status ct_nutation_bounds(const ct_inertia* inertia, double phi0, double theta0,
                             ct_envelope* out) {
  return guarded([&] {
    require(out, "out");
    const auto b = cointoss::nutation_bounds(to_core(inertia), phi0, theta0);
    *out = {b.c1, b.c2, b.theta_m, b.theta_M, to_c(b.case_tag)};
  });
}

ct_status ct_in_fair_region(const ct_inertia* inertia, double phi0, double theta0, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = cointoss::in_fair_region(to_core(inertia), phi0, theta0) ? 1 : 0;
  });
}

ct_status ct_quartic_coefficients(const ct_inertia* inertia, double phi0, double theta0,
                                  ct_quartic* out) {
  return guarded([&] {
    require(out, "out");
    const auto q = cointoss::quartic_coefficients(to_core(inertia), phi0, theta0);
    *out = {q.a0, q.A, q.B, q.C};
  });
}

ct_status ct_arcsine_params(const ct_inertia* inertia, double phi0, double theta0,
                            ct_arcsine* out) {
  return guarded([&] {
    require(out, "out");
    const auto p = cointoss::arcsine_params(to_core(inertia), phi0, theta0);
    *out = {p.k1, p.k2, p.lo, p.hi};
  });
}

ct_status ct_winding_integral(const ct_inertia* inertia, double phi0, double theta0, int m1,
                              int m2, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = cointoss::winding_integral(to_core(inertia), phi0, theta0, m1, m2);
  });
}

ct_status ct_period_lz(const ct_inertia* inertia, const ct_initial_conditions* init, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = cointoss::period_lz(to_core(inertia), to_core(init));
  });
}

ct_status ct_theta_density_create(const ct_envelope* bounds, ct_theta_law law,
                                  ct_theta_density** out) {
  return guarded([&] {
    require(bounds, "bounds");
    require(out, "out");
    *out = nullptr;
    cointoss::NutationBounds nb;
    nb.c1 = bounds->c1;
    nb.c2 = bounds->c2;
    nb.theta_m = bounds->theta_m;
    nb.theta_M = bounds->theta_M;
    nb.case_tag = to_core(bounds->case_tag);
    if (!(nb.theta_m <= nb.theta_M) || nb.theta_m < 0.0 || nb.theta_M > cointoss::kPi) {
      throw cointoss::InvalidInput("bounds must satisfy 0 <= theta_m <= theta_M <= pi");
    }
    *out = new ct_theta_density{cointoss::ThetaDensity(nb, to_core(law))};
  });
}

void ct_theta_density_free(ct_theta_density* density) { delete density; }

int ct_theta_density_is_point_mass(const ct_theta_density* density) {
  return density != nullptr && density->value.is_point_mass() ? 1 : 0;
}

double ct_theta_density_point_mass_location(const ct_theta_density* density) {
  return density != nullptr ? density->value.point_mass_location() : NAN;
}

ct_status ct_theta_density_pdf(const ct_theta_density* density, double theta, double* out) {
  return guarded([&] {
    require(density, "density");
    require(out, "out");
    *out = density->value.pdf(theta);
  });
}

ct_status ct_theta_density_cdf(const ct_theta_density* density, double theta, double* out) {
  return guarded([&] {
    require(density, "density");
    require(out, "out");
    *out = density->value.cdf(theta);
  });
}

ct_status ct_simulate(const ct_inertia* inertia, const ct_initial_conditions* init, double t_end,
                      double dt, ct_trajectory** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto traj = cointoss::integrate(to_core(inertia), to_core(init), t_end, dt);
    *out = new ct_trajectory{std::move(traj)};
  });
}

void ct_trajectory_free(ct_trajectory* trajectory) { delete trajectory; }

size_t ct_trajectory_size(const ct_trajectory* trajectory) {
  return trajectory != nullptr ? trajectory->value.samples.size() : 0;
}

ct_status ct_trajectory_sample(const ct_trajectory* trajectory, size_t index, ct_toss_state* out) {
  return guarded([&] {
    require(trajectory, "trajectory");
    require(out, "out");
    if (index >= trajectory->value.samples.size()) {
      throw cointoss::InvalidInput("sample index out of range");
    }
    const auto& s = trajectory->value.samples[index];
    *out = {s.t, s.phi, s.theta, s.psi, s.l_body.x(), s.l_body.y(), s.l_body.z()};
  });
}

ct_status ct_trajectory_write_csv(const ct_trajectory* trajectory, FILE* stream) {
  return guarded([&] {
    require(trajectory, "trajectory");
    std::ostringstream text;
    cointoss::write_trajectory_csv(text, trajectory->value);
    check_stream(stream, text.str());
  });
}

ct_status ct_heads_probability(const ct_inertia* inertia, double beta, double phi0, double theta0,
                               ct_theta_law law, ct_probability* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(cointoss::heads_probability(to_core(inertia), beta, phi0, theta0, to_core(law)));
  });
}

ct_status ct_heads_probability_straight(const ct_inertia* inertia, double phi0, double theta0,
                                        ct_theta_law law, ct_probability* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(cointoss::heads_probability_straight(to_core(inertia), phi0, theta0, to_core(law)));
  });
}

ct_status ct_theta0_samples_create(ct_theta0_samples** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ct_theta0_samples{};
  });
}

ct_status ct_theta0_samples_load_csv(const char* path, ct_theta0_samples** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    std::ifstream in(path);
    if (!in) throw cointoss::IoError(std::string("cannot open theta0 file '") + path + "'");
    auto samples = cointoss::read_theta0_samples(in);
    *out = new ct_theta0_samples{std::move(samples)};
  });
}

void ct_theta0_samples_free(ct_theta0_samples* samples) { delete samples; }

ct_status ct_theta0_samples_add(ct_theta0_samples* samples, double theta0, double weight) {
  return guarded([&] {
    require(samples, "samples");
    if (!(theta0 >= 0.0 && theta0 <= cointoss::kPi)) {
      throw cointoss::InvalidInput("theta0 must lie in [0, pi]");
    }
    if (!(weight > 0.0) || !std::isfinite(weight)) {
      throw cointoss::InvalidInput("weight must be positive and finite");
    }
    samples->value.push_back({theta0, weight});
  });
}

size_t ct_theta0_samples_size(const ct_theta0_samples* samples) {
  return samples != nullptr ? samples->value.size() : 0;
}

ct_status ct_aggregate_probability(const ct_inertia* inertia, const ct_theta0_samples* samples,
                                   size_t phi0_grid_size, ct_theta_law law,
                                   ct_probability* out) {
  return guarded([&] {
    require(samples, "samples");
    require(out, "out");
    *out = to_c(cointoss::aggregate_probability(to_core(inertia), samples->value, phi0_grid_size,
                                                to_core(law)));
  });
}

ct_status ct_fair_region_write_csv(const ct_inertia* inertia, int n_phi, int n_theta,
                                   FILE* stream) {
  return guarded([&] {
    std::ostringstream text;
    cointoss::write_fair_region_csv(text, to_core(inertia), n_phi, n_theta);
    check_stream(stream, text.str());
  });
}

ct_status ct_sample_magnitude(const ct_magnitude_density* density, uint64_t seed, size_t n,
                              double* out) {
  return guarded([&] {
    if (n > 0) require(out, "out");
    const auto draws = cointoss::sample_magnitude(to_core(density), seed, n);
    std::copy(draws.begin(), draws.end(), out);
  });
}

ct_status ct_estimate_heads(const ct_inertia* inertia, const ct_initial_conditions* init,
                            const ct_magnitude_density* density, size_t n, double t_eval,
                            uint64_t seed, ct_mc_estimate* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(cointoss::estimate_heads(toss_setup(inertia, init), to_core(density), n, t_eval,
                                         seed));
  });
}

ct_status ct_estimate_heads_at(const ct_inertia* inertia, const ct_initial_conditions* init,
                               const ct_magnitude_density* density, size_t n,
                               const double* t_evals, size_t count, uint64_t seed,
                               ct_mc_estimate* out) {
  return guarded([&] {
    require(t_evals, "t_evals");
    require(out, "out");
    const auto est = cointoss::estimate_heads_at(toss_setup(inertia, init), to_core(density), n,
                                                 std::span<const double>(t_evals, count), seed);
    for (size_t k = 0; k < est.size(); ++k) out[k] = to_c(est[k]);
  });
}

ct_status ct_equidistribution_test(const ct_inertia* inertia, const ct_initial_conditions* init,
                                   const ct_magnitude_density* density, size_t n, double t_eval,
                                   uint64_t seed, const ct_equidistribution_options* options,
                                   ct_equidistribution_report* out) {
  return guarded([&] {
    require(out, "out");
    cointoss::EquidistributionOptions opts;
    if (options != nullptr) {
      opts.bins = options->bins;
      opts.ks_threshold = options->ks_threshold;
      opts.chi2_pvalue_threshold = options->chi2_pvalue_threshold;
    }
    const auto r = cointoss::equidistribution_test(toss_setup(inertia, init), to_core(density), n,
                                                   t_eval, seed, opts);
    ct_equidistribution_report c{};
    c.heads = to_c(r.heads);
    c.skipped = r.skipped ? 1 : 0;
    c.ks_psi = r.ks_psi;
    c.ks_phi = r.ks_phi;
    c.chi2 = r.chi2;
    c.chi2_dof = r.chi2_dof;
    c.chi2_pvalue = r.chi2_pvalue;
    c.has_ks_arcsine = r.ks_arcsine ? 1 : 0;
    c.ks_arcsine = r.ks_arcsine.value_or(NAN);
    c.has_ks_theta_dwell = r.ks_theta_dwell ? 1 : 0;
    c.ks_theta_dwell = r.ks_theta_dwell.value_or(NAN);
    c.options = {opts.bins, opts.ks_threshold, opts.chi2_pvalue_threshold};
    *out = c;
  });
}

}  // extern "C"
