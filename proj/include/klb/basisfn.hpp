#pragma once

#include <Eigen/Dense>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

#include "klb/klcore.hpp"
#include "klb/sampling.hpp"

namespace klb {

/// Barycentric Lagrange interpolation on a fixed node set, together with the
/// node differentiation matrix D (D s holds the derivative of the
/// interpolant of s at the nodes).
class BarycentricInterpolator {
public:
  /// Throws InvalidArgument on duplicate nodes.
  explicit BarycentricInterpolator(Grid nodes);

  const Grid& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::MatrixXd& differentiation_matrix() const { return diff_; }

  /// Value at x of the interpolant through `samples`. Returns the sample
  /// itself when x is a node. Throws InvalidArgument outside [a, b].
  double operator()(const Eigen::VectorXd& samples, double x) const;

private:
  Grid nodes_;
  Eigen::VectorXd weights_;
  Eigen::MatrixXd diff_;
};

/// Continuous, twice-differentiable form of one eigenvector: the unique
/// degree N_s-1 polynomial through its samples.
class BasisFunction {
public:
  BasisFunction(std::shared_ptr<const BarycentricInterpolator> interp, Eigen::VectorXd samples, int mode_index);

  double eval(double x) const;
  /// First or second derivative: the interpolant of D s (resp. D^2 s).
  double eval_deriv(double x, int order) const;

  const Grid& nodes() const { return interp_->nodes(); }
  const Eigen::VectorXd& samples() const { return samples_; }
  int mode_index() const { return mode_index_; }

private:
  std::shared_ptr<const BarycentricInterpolator> interp_;
  Eigen::VectorXd samples_;
  Eigen::VectorXd first_;
  Eigen::VectorXd second_;
  int mode_index_ = 0;
};

/// One BasisFunction per retained mode, sharing one interpolator.
std::vector<BasisFunction> interpolate(const TruncatedBasis& basis);

/// Single function from raw samples on a grid.
BasisFunction make_basis_function(const Grid& nodes, Eigen::VectorXd samples, int mode_index = 0);

/// CSV "x,phi_0,...,phi_{M-1}" on the given output points.
void write_tabulation_csv(std::ostream& out, std::span<const BasisFunction> functions,
                          std::span<const double> points);

}  // namespace klb
