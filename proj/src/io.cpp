#include "io.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

#include "analysis.hpp"
#include "errors.hpp"

namespace cointoss {

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const MomentumDirection& dir = trajectory.init.dir;
  out << "t,phi,theta,psi,lx,ly,lz,nz,heads\n" << std::setprecision(17);
  for (const TossState& s : trajectory.samples) {
    const double nz = normal_vertical_component(dir.beta(), s.theta, s.psi);
    out << s.t << ',' << s.phi << ',' << s.theta << ',' << s.psi << ',' << s.l_body.x() << ','
        << s.l_body.y() << ',' << s.l_body.z() << ',' << nz << ','
        << (heads_indicator(dir, s.theta, s.psi) ? 1 : 0) << '\n';
  }
}

void write_fair_region_csv(std::ostream& out, const InertiaTensor& inertia, int n_phi,
                           int n_theta) {
  if (n_phi < 1 || n_theta < 2) throw InvalidInput("fair-region grid needs n_phi >= 1, n_theta >= 2");
  out << "phi0,theta0,fair\n" << std::setprecision(17);
  for (int i = 0; i < n_phi; ++i) {
    const double phi0 = kTwoPi * i / n_phi;
    for (int j = 0; j < n_theta; ++j) {
      const double theta0 = kPi * j / (n_theta - 1);
      out << phi0 << ',' << theta0 << ',' << (in_fair_region(inertia, phi0, theta0) ? 1 : 0)
          << '\n';
    }
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw InvalidInput("theta0 file, line " + std::to_string(line_no) + ": " + what);
}

double parse_number(std::string_view field, int line_no, const char* name) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    fail(line_no, std::string("cannot parse ") + name + " '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::vector<Theta0Sample> read_theta0_samples(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool has_weight = false;
  bool header_seen = false;
  std::vector<Theta0Sample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (!header_seen) {
      if (fields[0] != "theta0_radians" || fields.size() > 2 ||
          (fields.size() == 2 && fields[1] != "weight")) {
        fail(line_no, "expected header 'theta0_radians,weight' or 'theta0_radians'");
      }
      has_weight = fields.size() == 2;
      header_seen = true;
      continue;
    }
    if (fields.size() > (has_weight ? 2u : 1u)) fail(line_no, "too many fields");
    Theta0Sample s;
    s.theta0 = parse_number(fields[0], line_no, "theta0_radians");
    if (!(s.theta0 >= 0.0 && s.theta0 <= kPi)) fail(line_no, "theta0_radians must lie in [0, pi]");
    if (fields.size() == 2 && !fields[1].empty()) {
      s.weight = parse_number(fields[1], line_no, "weight");
      if (!(s.weight > 0.0)) fail(line_no, "weight must be positive");
    }
    samples.push_back(s);
  }
  if (!header_seen) throw InvalidInput("theta0 file is empty");
  if (samples.empty()) throw InvalidInput("theta0 file has no samples");
  return samples;
}

}  // namespace cointoss
