#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace cointoss::cli {

// Bad config text or field; the message names the line or the field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a command needs. Angles are radians; beta unset means β = θ0.
struct RunConfig {
  double ix = 6.68;
  double iy = 7.35;
  double iz = 13.24;

  double l_mag = 1000.0;
  double alpha = 0.0;
  std::optional<double> beta;
  double phi0 = std::numbers::pi / 4.0;
  double theta0 = std::numbers::pi / 3.0;
  double psi0 = 0.0;

  double dt = 1e-5;
  double t_end = 1.0;

  double quadrature_target = 1e-8;
  std::string theta_law = "dwell";

  std::uint64_t mc_n = 100000;
  std::uint64_t seed = 1;
  double t_eval = 30.0;
  double l_mean = 1000.0;
  double l_stddev = 100.0;

  int n_phi = 256;
  int n_theta = 256;
  std::size_t phi0_grid = 64;
  std::size_t pdf_samples = 4096;

  std::optional<std::string> output;

  double effective_beta() const { return beta.value_or(theta0); }
  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);

// Missing fields keep their defaults; unknown fields and wrong types are
// errors naming the field path.
RunConfig from_json(const nlohmann::json& doc);

// Parses JSON text; syntax errors report line and column.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

}  // namespace cointoss::cli
