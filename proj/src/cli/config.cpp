#include "klb/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "klb/error.hpp"

namespace klb::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& section, std::initializer_list<const char*> known) {
  if (!j.is_object()) throw InvalidArgument("config: section '" + section + "' must be an object");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& item : j.items())
    if (!allowed.contains(item.key()))
      throw InvalidArgument("config: unknown key '" + item.key() + "' in " + section);
}

template <typename T>
void read(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument("config: " + message);
}

}  // namespace

bool OutputConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

void RunConfig::validate() const {
  require(family.n_max >= 1, "family.n_max must be >= 1");
  require(family.Z > 0.0 && std::isfinite(family.Z), "family.Z must be positive");
  require(hydrogen_family(family.n_max, family.Z).size() >= 2, "family must contain at least 2 orbitals");

  require(sampling.N_s >= 2, "sampling.N_s must be >= 2");
  require(sampling.a < sampling.b, "sampling requires a < b");
  require(sampling.a >= 0.0, "sampling.a must be >= 0");

  if (truncation.criterion == "fixed") {
    require(truncation.value == std::floor(truncation.value) && truncation.value >= 1.0 &&
                truncation.value <= sampling.N_s,
            "truncation: fixed M must be an integer in [1, N_s]");
  } else if (truncation.criterion == "energy-fraction") {
    require(truncation.value > 0.0 && truncation.value <= 1.0, "truncation: energy fraction must lie in (0, 1]");
  } else {
    throw InvalidArgument("config: truncation.criterion must be 'fixed' or 'energy-fraction'");
  }

  require(problem.n >= 1, "problem.n must be >= 1");
  require(problem.l >= 0 && problem.l < problem.n, "problem requires 0 <= l < n");
  bvp().validate();
  require(problem.a >= sampling.a && problem.b <= sampling.b, "problem domain must lie inside the sampling domain");
  require(problem.E_lo < problem.E_hi, "problem requires E_lo < E_hi");
  require(problem.n_steps >= 3, "problem.n_steps must be >= 3");
  require(problem.error_lo < problem.error_hi, "problem requires error_lo < error_hi");

  require(!output.directory.empty(), "output.directory must not be empty");
  for (const auto& f : output.formats) require(f == "csv" || f == "json", "output.formats accepts 'csv' and 'json'");
  require(output.dense_points >= 2, "output.dense_points must be >= 2");
  require(output.residual_points >= 1, "output.residual_points must be >= 1");
  require(output.tabulation_points >= 2, "output.tabulation_points must be >= 2");
  require(output.numerov_points >= 1000, "output.numerov_points must be >= 1000");
  require(random_trials >= 1, "random_trials must be >= 1");
}

TruncationCriterion RunConfig::criterion() const {
  if (truncation.criterion == "fixed") return FixedM{static_cast<int>(truncation.value)};
  return EnergyFraction{truncation.value};
}

BoundaryValueProblem RunConfig::bvp() const {
  return BoundaryValueProblem{problem.l, problem.Z, problem.E,   problem.a,
                              problem.b, problem.y_a, problem.y_f, problem.epsilon};
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = json{
      {"family", {{"n_max", c.family.n_max}, {"Z", c.family.Z}}},
      {"sampling",
       {{"kind", to_string(c.sampling.kind)},
        {"N_s", c.sampling.N_s},
        {"a", c.sampling.a},
        {"b", c.sampling.b},
        {"representation", to_string(c.sampling.representation)}}},
      {"truncation", {{"criterion", c.truncation.criterion}, {"value", c.truncation.value}}},
      {"problem",
       {{"n", c.problem.n},
        {"l", c.problem.l},
        {"Z", c.problem.Z},
        {"E", c.problem.E},
        {"E_range", {c.problem.E_lo, c.problem.E_hi}},
        {"n_steps", c.problem.n_steps},
        {"a", c.problem.a},
        {"b", c.problem.b},
        {"y_a", c.problem.y_a},
        {"y_f", c.problem.y_f},
        {"epsilon", c.problem.epsilon},
        {"error_window", {c.problem.error_lo, c.problem.error_hi}}}},
      {"output",
       {{"directory", c.output.directory},
        {"formats", c.output.formats},
        {"dense_points", c.output.dense_points},
        {"residual_points", c.output.residual_points},
        {"tabulation_points", c.output.tabulation_points},
        {"numerov_points", c.output.numerov_points}}},
      {"seed", c.seed},
      {"random_trials", c.random_trials},
  };
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  reject_unknown(j, "config", {"family", "sampling", "truncation", "problem", "output", "seed", "random_trials"});
  if (j.contains("family")) {
    const auto& f = j.at("family");
    reject_unknown(f, "family", {"n_max", "Z"});
    read(f, "n_max", c.family.n_max);
    read(f, "Z", c.family.Z);
  }
  if (j.contains("sampling")) {
    const auto& s = j.at("sampling");
    reject_unknown(s, "sampling", {"kind", "N_s", "a", "b", "representation"});
    if (s.contains("kind")) c.sampling.kind = grid_kind_from_string(s.at("kind").get<std::string>());
    read(s, "N_s", c.sampling.N_s);
    read(s, "a", c.sampling.a);
    read(s, "b", c.sampling.b);
    if (s.contains("representation"))
      c.sampling.representation = representation_from_string(s.at("representation").get<std::string>());
  }
  if (j.contains("truncation")) {
    const auto& t = j.at("truncation");
    reject_unknown(t, "truncation", {"criterion", "value"});
    read(t, "criterion", c.truncation.criterion);
    read(t, "value", c.truncation.value);
  }
  if (j.contains("problem")) {
    const auto& p = j.at("problem");
    reject_unknown(p, "problem",
                   {"n", "l", "Z", "E", "E_range", "n_steps", "a", "b", "y_a", "y_f", "epsilon", "error_window"});
    read(p, "n", c.problem.n);
    read(p, "l", c.problem.l);
    read(p, "Z", c.problem.Z);
    read(p, "E", c.problem.E);
    if (p.contains("E_range")) {
      const auto range = p.at("E_range").get<std::vector<double>>();
      if (range.size() != 2) throw InvalidArgument("config: problem.E_range must be [E_lo, E_hi]");
      c.problem.E_lo = range[0];
      c.problem.E_hi = range[1];
    }
    read(p, "n_steps", c.problem.n_steps);
    read(p, "a", c.problem.a);
    read(p, "b", c.problem.b);
    read(p, "y_a", c.problem.y_a);
    read(p, "y_f", c.problem.y_f);
    read(p, "epsilon", c.problem.epsilon);
    if (p.contains("error_window")) {
      const auto window = p.at("error_window").get<std::vector<double>>();
      if (window.size() != 2) throw InvalidArgument("config: problem.error_window must be [lo, hi]");
      c.problem.error_lo = window[0];
      c.problem.error_hi = window[1];
    }
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    reject_unknown(o, "output",
                   {"directory", "formats", "dense_points", "residual_points", "tabulation_points", "numerov_points"});
    read(o, "directory", c.output.directory);
    read(o, "formats", c.output.formats);
    read(o, "dense_points", c.output.dense_points);
    read(o, "residual_points", c.output.residual_points);
    read(o, "tabulation_points", c.output.tabulation_points);
    read(o, "numerov_points", c.output.numerov_points);
  }
  read(j, "seed", c.seed);
  read(j, "random_trials", c.random_trials);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config: '" + path + "' is not valid JSON: " + e.what());
  }
  RunConfig config;
  try {
    config = j.get<RunConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  return config;
}

}  // namespace klb::cli
