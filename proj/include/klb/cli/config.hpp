#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "klb/hydrogenic.hpp"
#include "klb/klcore.hpp"
#include "klb/sampling.hpp"

namespace klb::cli {

struct FamilyConfig {
  int n_max = 7;
  double Z = 1.0;
};

struct SamplingConfig {
  GridKind kind = GridKind::Uniform;
  int N_s = 20;
  double a = 0.0;
  double b = 40.0;
  Representation representation = Representation::rR;
};

struct TruncationConfig {
  std::string criterion = "fixed";  ///< "fixed" or "energy-fraction"
  double value = 8.0;
};

/// The boundary-value problem to solve plus the energy scan window. n is the
/// principal number of the targeted state; only l < n is checked against it.
struct ProblemConfig {
  int n = 1;
  int l = 0;
  double Z = 1.0;
  double E = -0.5;
  double E_lo = -0.7;
  double E_hi = -0.3;
  int n_steps = 41;
  double a = 0.0;
  double b = 7.0;
  double y_a = 0.0;
  double y_f = 1e-4;
  double epsilon = 1e-10;
  /// Window for the relative L2 error against the reference.
  double error_lo = 0.5;
  double error_hi = 5.0;
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats{"csv", "json"};
  int dense_points = 701;        ///< solution.csv / residual.csv rows
  int residual_points = 400;     ///< interior points for residual norms
  int tabulation_points = 401;   ///< basis_functions.csv rows
  int numerov_points = 100001;   ///< reference integration grid

  bool wants(const std::string& format) const;
};

struct RunConfig {
  FamilyConfig family;
  SamplingConfig sampling;
  TruncationConfig truncation;
  ProblemConfig problem;
  OutputConfig output;
  std::uint64_t seed = 42;
  int random_trials = 100;

  /// Throws InvalidArgument with the first violated precondition.
  void validate() const;
  TruncationCriterion criterion() const;
  BoundaryValueProblem bvp() const;
};

void to_json(nlohmann::json& j, const RunConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, RunConfig& config);

RunConfig load_config(const std::string& path);

}  // namespace klb::cli
