// Acceptance checks. `acceptance --criterion NAME` runs one; no argument runs
// all. Each prints one PASS/FAIL line; the exit code is nonzero on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analysis.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "montecarlo.hpp"
#include "probability.hpp"
#include "quadrature.hpp"

namespace {

using namespace cointoss;

const InertiaTensor kHalfDollar = InertiaTensor::half_dollar();
const InertiaTensor kUniform(7.0, 7.0, 13.24);
const MagnitudeDensity kDensity{1000.0, 100.0};
constexpr double kTEval = 30.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

InitialConditions straight_init(double phi0, double theta0) {
  InitialConditions ic;
  ic.l_mag = 1000.0;
  ic.dir = MomentumDirection(0.0, theta0);
  ic.phi0 = phi0;
  ic.theta0 = theta0;
  return ic;
}

Outcome conservation() {
  const auto start = std::chrono::steady_clock::now();
  const InitialConditions ic = straight_init(kPi / 4.0, kPi / 3.0);
  const double dt = 1e-5;
  const auto samples = integrate_momentum(kHalfDollar, ic, 1e5 * dt, dt);
  const double elapsed = seconds_since(start);

  auto energy_of = [](const Vec3& l) {
    return 0.5 * 1e6 *
           (l.x * l.x * kHalfDollar.inv_x() + l.y * l.y * kHalfDollar.inv_y() +
            l.z * l.z * kHalfDollar.inv_z());
  };
  const double e0 = energy_of(samples.front().l_body);
  double max_de = 0.0, max_dn = 0.0;
  for (const auto& s : samples) {
    max_de = std::max(max_de, std::abs(energy_of(s.l_body) - e0) / e0);
    max_dn = std::max(max_dn, std::abs(std::sqrt(s.l_body.dot(s.l_body)) - 1.0));
  }
  return {samples.size() == 100001 && max_de < 1e-9 && max_dn < 1e-9 && elapsed < 5.0,
          fmt("steps=%zu max|dE|/E=%.2e max|norm-1|=%.2e time=%.2fs", samples.size() - 1, max_de,
              max_dn, elapsed)};
}

Outcome envelope() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> phi(0.0, kTwoPi), theta(0.05, kPi - 0.05);
  double worst = 0.0;
  int points = 0, min_periods = 1 << 30;
  while (points < 20) {
    const InitialConditions ic = straight_init(phi(rng), theta(rng));
    double period = 0.0;
    try {
      period = period_lz(kHalfDollar, ic);
    } catch (const DegenerateInput&) {
      continue;
    }
    const NutationBounds b = nutation_bounds(kHalfDollar, ic.phi0, ic.theta0);
    const double dt = 1e-5;
    const Trajectory tr = integrate(kHalfDollar, ic, 20.5 * period, dt);
    double lo = kPi, hi = 0.0;
    for (const auto& s : tr.samples) {
      lo = std::min(lo, s.theta);
      hi = std::max(hi, s.theta);
    }
    worst = std::max({worst, std::abs(lo - b.theta_m), std::abs(hi - b.theta_M)});
    min_periods = std::min(min_periods, static_cast<int>(tr.samples.back().t / period));
    ++points;
  }
  return {worst < 1e-6,
          fmt("points=%d periods>=%d max|theta_ext - bound|=%.2e rad", points, min_periods, worst)};
}

Outcome fair_region() {
  const int n = 256;
  int mismatches = 0, fair = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double phi0 = kTwoPi * i / n, theta0 = kPi * j / (n - 1);
      const bool f = in_fair_region(kHalfDollar, phi0, theta0);
      const bool c1_negative = nutation_bounds(kHalfDollar, phi0, theta0).c1 < 0.0;
      mismatches += f != c1_negative;
      fair += f;
    }
  }
  return {mismatches == 0, fmt("grid=256x256 fair=%d mismatches=%d", fair, mismatches)};
}

Outcome uniform_closed_forms() {
  const HeadsProbability keller = heads_probability(kUniform, kPi / 2.0, 0.3, kPi / 2.0);
  bool all_heads = true;
  for (double t0 : {0.05, 0.3, 0.6, kPi / 4.0}) {
    all_heads = all_heads && heads_probability_straight(kUniform, 0.3, t0).p == 1.0;
  }
  const double third = kPi / 3.0;
  const double expected = 0.5 + std::asin(1.0 / 3.0) / kPi;
  const double closed = heads_probability_straight(kUniform, 0.3, third).p;
  // Narrow envelope around θ0 forces the general quadrature path.
  const HeadsProbability quad =
      heads_probability_for_envelope(envelope_from_extremes(third - 1e-6, third + 1e-6), third,
                                     ThetaLaw::kDwellTime);
  const bool pass = keller.p == 0.5 && all_heads && std::abs(closed - expected) < 1e-15 &&
                    quad.method == ProbabilityMethod::kQuadrature &&
                    std::abs(quad.p - expected) < 1e-4;
  return {pass, fmt("keller=%.17g p(theta0<=pi/4)=1:%s p(pi/3)=%.15f quadrature=%.15f", keller.p,
                    all_heads ? "yes" : "no", closed, quad.p)};
}

Outcome density_sanity() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> phi(0.0, kTwoPi), theta(0.05, kPi - 0.05);
  double worst_norm = 0.0, worst_integral = 0.0, worst_p = 0.0;
  int sets = 0, supplementary = 0;
  while (sets < 20 || supplementary < 5) {
    const NutationBounds b = nutation_bounds(kHalfDollar, phi(rng), theta(rng));
    if (b.is_point() || b.theta_M - b.theta_m < 1e-6) continue;
    if (b.case_tag == EnvelopeCase::kSupplementary) {
      if (supplementary >= 5 && sets >= 20) continue;
      for (double beta : {0.4, 1.2, 2.5}) {
        worst_integral =
            std::max(worst_integral, std::abs(heads_integral(b, beta, ThetaLaw::kDwellTime).value));
        worst_p = std::max(
            worst_p, std::abs(heads_probability_for_envelope(b, beta, ThetaLaw::kDwellTime).p - 0.5));
      }
      ++supplementary;
    }
    if (sets >= 20) continue;
    std::vector<ThetaLaw> laws{ThetaLaw::kDwellTime};
    if (b.case_tag != EnvelopeCase::kSupplementary) laws.push_back(ThetaLaw::kArcsine);
    for (ThetaLaw law : laws) {
      const ThetaDensity f(b, law);
      const double total =
          integrate_endpoint_singular([&](const IntervalPoint& p) { return f.pdf(p.x); },
                                      b.theta_m, b.theta_M)
              .value;
      worst_norm = std::max(worst_norm, std::abs(total - 1.0));
    }
    ++sets;
  }
  return {worst_norm < 1e-8 && worst_integral < 1e-10 && worst_p < 1e-10,
          fmt("sets=%d max|int f - 1|=%.2e supplementary=%d max|integral|=%.2e max|p-1/2|=%.2e",
              sets, worst_norm, supplementary, worst_integral, worst_p)};
}

struct OraclePoint {
  double beta, phi0, theta0;
};

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  // Acute and obtuse envelopes outside the fair region, all with 0 < p < 1.
  const std::vector<OraclePoint> points{
      {kPi / 3, kPi / 4, kPi / 3}, {0.7, 1.0, 0.9},  {2.2, 2.2, 1.9},  {1.2, 2.0, 1.2},
      {2.0, 0.8, 2.0},             {1.5, 0.9, 1.0},  {1.0, 1.57, 1.3}, {0.9, 0.4, 1.1},
      {1.6, 4.0, 0.6},             {1.4, 1.2, 0.7},  {0.9, 2.8, 0.75}, {1.1, 5.0, 1.0},
      {1.9, 1.0, 0.8}};
  const double times[2] = {kTEval, 2.0 * kTEval};
  int within = 0, stable = 0, evaluated = 0;
  double worst_z = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const OraclePoint& pt = points[k];
    if (in_fair_region(kHalfDollar, pt.phi0, pt.theta0)) continue;
    ++evaluated;
    TossSetup s;
    s.dir = MomentumDirection(0.0, pt.beta);
    s.phi0 = pt.phi0;
    s.theta0 = pt.theta0;
    const double p = heads_probability(kHalfDollar, pt.beta, pt.phi0, pt.theta0).p;
    const auto est = estimate_heads_at(s, kDensity, 100000, times, 1000 + k);
    bool ok = true;
    for (const McEstimate& e : est) {
      worst_z = std::max(worst_z, std::abs(e.p_hat - p) / e.std_error);
      ok = ok && std::abs(e.p_hat - p) <= 3.0 * e.std_error;
    }
    within += ok;
    stable += std::abs(est[0].p_hat - est[1].p_hat) <=
              3.0 * std::hypot(est[0].std_error, est[1].std_error);
  }
  const double elapsed = seconds_since(start);
  return {evaluated >= 10 && within == evaluated && stable == evaluated && elapsed < 600.0,
          fmt("points=%d within3SE=%d doubling-stable=%d max z=%.2f n=100000 t=%g/%g s time=%.1fs",
              evaluated, within, stable, worst_z, times[0], times[1], elapsed)};
}

Outcome equidistribution() {
  TossSetup s;
  s.dir = MomentumDirection(0.0, kPi / 3.0);
  s.phi0 = kPi / 4.0;
  s.theta0 = kPi / 3.0;
  const EquidistributionReport r = equidistribution_test(s, kDensity, 10000, kTEval, 7);
  const double arcsine = r.ks_arcsine.value_or(NAN);
  return {r.psi_passes() && r.phi_passes() && r.arcsine_passes(),
          fmt("n=10000 ks_psi=%.4f ks_phi=%.4f ks_arcsine=%.4f (threshold %.2f); "
              "ks_theta_dwell=%.4f chi2_p=%.2e",
              r.ks_psi, r.ks_phi, arcsine, r.options.ks_threshold,
              r.ks_theta_dwell.value_or(NAN), r.chi2_pvalue)};
}

Outcome aggregate_fairness() {
  // Synthetic straight tosses: θ0 normal about π/2 with a 0.1 rad spread.
  std::mt19937_64 rng(27);
  std::normal_distribution<double> theta(kPi / 2.0, 0.1);
  std::vector<Theta0Sample> samples;
  for (int k = 0; k < 27; ++k) samples.push_back({std::clamp(theta(rng), 0.0, kPi), 1.0});
  const double p_non = aggregate_probability(kHalfDollar, samples, 64).p;
  const double p_uni = aggregate_probability(kUniform, samples, 64).p;
  const bool pass = p_non > 0.5 && p_non < 0.51 && p_uni > 0.5 && p_uni < 0.51 &&
                    std::abs(p_non - 0.5) < std::abs(p_uni - 0.5);
  return {pass, fmt("samples=27 non-uniform=%.5f uniform=%.5f", p_non, p_uni)};
}

Outcome nutation_makes_fairer() {
  const double t0 = kPi / 4.0;
  const double p_uni = heads_probability_straight(kUniform, 0.0, t0).p;
  double worst = 0.0;
  for (int i = 0; i < 16; ++i) {
    worst = std::max(worst, heads_probability_straight(kHalfDollar, kTwoPi * (i + 0.5) / 16, t0).p);
  }
  const double p_default = heads_probability_straight(kHalfDollar, kPi / 4.0, t0).p;
  return {p_uni == 1.0 && worst < 1.0,
          fmt("uniform=%.17g half-dollar(phi0=pi/4)=%.6f max over 16 phi0=%.6f", p_uni, p_default,
              worst)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria{
    {"conservation", conservation},
    {"envelope", envelope},
    {"fair-region", fair_region},
    {"uniform-closed-forms", uniform_closed_forms},
    {"density-sanity", density_sanity},
    {"oracle-equivalence", oracle_equivalence},
    {"equidistribution", equidistribution},
    {"aggregate-fairness", aggregate_fairness},
    {"nutation-makes-fairer", nutation_makes_fairer},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string only;
  std::vector<std::string> names;
  for (const auto& c : kCriteria) names.emplace_back(c.name);
  app.add_option("--criterion", only, "Run a single criterion")
      ->check(CLI::IsMember(names));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && only != c.name) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
