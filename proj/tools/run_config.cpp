#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

namespace cointoss::cli {

using nlohmann::json;

json to_json(const RunConfig& c) {
  json doc;
  doc["inertia"] = {{"ix", c.ix}, {"iy", c.iy}, {"iz", c.iz}};
  doc["initial"] = {{"l_mag", c.l_mag}, {"alpha", c.alpha},
                    {"beta", c.beta ? json(*c.beta) : json(nullptr)},
                    {"phi0", c.phi0}, {"theta0", c.theta0}, {"psi0", c.psi0}};
  doc["integration"] = {{"dt", c.dt}, {"t_end", c.t_end}};
  doc["quadrature"] = {{"target", c.quadrature_target}, {"theta_law", c.theta_law}};
  doc["montecarlo"] = {{"n", c.mc_n}, {"seed", c.seed}, {"t_eval", c.t_eval},
                       {"mean", c.l_mean}, {"stddev", c.l_stddev}};
  doc["grid"] = {{"n_phi", c.n_phi}, {"n_theta", c.n_theta}, {"phi0_grid", c.phi0_grid},
                 {"pdf_samples", c.pdf_samples}};
  doc["output"] = c.output ? json(*c.output) : json(nullptr);
  return doc;
}

namespace {

class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError("field '" + where() + "': expected an object");
  }

  void number(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail(key, "expected a number");
      out = v->get<double>();
    }
  }

  void optional_number(const char* key, std::optional<double>& out) {
    if (const json* v = find(key)) {
      if (v->is_null()) {
        out.reset();
      } else {
        if (!v->is_number()) fail(key, "expected a number or null");
        out = v->get<double>();
      }
    }
  }

  template <class Int>
  void integer(const char* key, Int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) fail(key, "expected an integer");
      if constexpr (std::is_unsigned_v<Int>) {
        if (!v->is_number_unsigned()) fail(key, "expected a non-negative integer");
      }
      out = v->get<Int>();
    }
  }

  void string(const char* key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) fail(key, "expected a string");
      out = v->get<std::string>();
    }
  }

  void optional_string(const char* key, std::optional<std::string>& out) {
    if (const json* v = find(key)) {
      if (v->is_null()) {
        out.reset();
      } else {
        if (!v->is_string()) fail(key, "expected a string or null");
        out = v->get<std::string>();
      }
    }
  }

  Reader section(const char* key) {
    seen_.insert(key);
    return Reader(node_.at(key), path_.empty() ? key : path_ + "." + key);
  }

  bool has(const char* key) const { return node_.contains(key); }

  // Every key must have been consumed.
  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw ConfigError("field '" + join(key) + "': unknown field");
    }
  }

 private:
  const json* find(const char* key) {
    seen_.insert(key);
    const auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }
  std::string where() const { return path_.empty() ? "<root>" : path_; }
  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  [[noreturn]] void fail(const char* key, const char* what) const {
    throw ConfigError("field '" + join(key) + "': " + what);
  }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace

RunConfig from_json(const json& doc) {
  RunConfig c;
  Reader root(doc, "");
  if (root.has("inertia")) {
    Reader r = root.section("inertia");
    r.number("ix", c.ix);
    r.number("iy", c.iy);
    r.number("iz", c.iz);
    r.finish();
  }
  if (root.has("initial")) {
    Reader r = root.section("initial");
    r.number("l_mag", c.l_mag);
    r.number("alpha", c.alpha);
    r.optional_number("beta", c.beta);
    r.number("phi0", c.phi0);
    r.number("theta0", c.theta0);
    r.number("psi0", c.psi0);
    r.finish();
  }
  if (root.has("integration")) {
    Reader r = root.section("integration");
    r.number("dt", c.dt);
    r.number("t_end", c.t_end);
    r.finish();
  }
  if (root.has("quadrature")) {
    Reader r = root.section("quadrature");
    r.number("target", c.quadrature_target);
    r.string("theta_law", c.theta_law);
    r.finish();
  }
  if (root.has("montecarlo")) {
    Reader r = root.section("montecarlo");
    r.integer("n", c.mc_n);
    r.integer("seed", c.seed);
    r.number("t_eval", c.t_eval);
    r.number("mean", c.l_mean);
    r.number("stddev", c.l_stddev);
    r.finish();
  }
  if (root.has("grid")) {
    Reader r = root.section("grid");
    r.integer("n_phi", c.n_phi);
    r.integer("n_theta", c.n_theta);
    r.integer("phi0_grid", c.phi0_grid);
    r.integer("pdf_samples", c.pdf_samples);
    r.finish();
  }
  root.optional_string("output", c.output);
  root.finish();
  return c;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << "config line " << line << ", column " << column << ": malformed JSON";
    throw ConfigError(msg.str());
  }
  try {
    return from_json(doc);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace cointoss::cli
