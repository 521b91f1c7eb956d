#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "klb/cli/config.hpp"
#include "klb/klcore.hpp"
#include "klb/sampling.hpp"

namespace klb::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kNumericalError = 2 };

/// Everything gen-basis derives from a config.
struct Pipeline {
  SampleMatrix samples;
  CenteredMatrix centered;
  CovarianceMatrix covariance;
  KLBasis basis;
  int M = 0;
};

Pipeline build_pipeline(const RunConfig& config);

/// KL basis persisted by gen-basis (basis.json) and reloadable by solve and
/// scan-energy through --basis.
void write_basis_json(std::ostream& out, const KLBasis& basis, int M, const RunConfig& config);
KLBasis read_basis_json(const std::string& path);

/// The reference the spectral solution is compared against: the closed-form
/// 1s solution when the problem is exactly that case, otherwise the Numerov
/// integration.
struct Reference {
  std::string kind;
  std::function<double(double)> value;
};
Reference make_reference(const RunConfig& config);

int cmd_gen_basis(const RunConfig& config, std::ostream& log);
int cmd_solve(const RunConfig& config, const std::optional<std::string>& basis_path, std::ostream& log);
int cmd_scan_energy(const RunConfig& config, const std::optional<std::string>& basis_path, std::ostream& log);
int cmd_compare_bases(const RunConfig& config, std::ostream& log);

/// Parses argv, dispatches a subcommand and maps errors to exit codes
/// (1 configuration, 2 numerical).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace klb::cli
