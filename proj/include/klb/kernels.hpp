#pragma once

// Data-parallel inner loops. Every OpenMP kernel has a serial twin with the
// same per-element arithmetic; the two must agree bit for bit, which the
// kernel tests check and the benchmark target compares for speed.

#include <Eigen/Dense>
#include <span>

#include "klb/hydrogenic.hpp"

namespace klb {
enum class Representation;
}

namespace klb::kernels {

/// values(i, j) = R_j(x_i) or x_i R_j(x_i). Parallel over columns.
Eigen::MatrixXd fill_samples(const RadialFamily& family, std::span<const double> points, Representation rep);
Eigen::MatrixXd fill_samples_serial(const RadialFamily& family, std::span<const double> points,
                                    Representation rep);

/// K = scale * Y Y^T with each entry summed over columns in index order.
/// Parallel over rows; only the upper triangle is computed, then mirrored.
Eigen::MatrixXd scaled_gram(const Eigen::MatrixXd& Y, double scale);
Eigen::MatrixXd scaled_gram_serial(const Eigen::MatrixXd& Y, double scale);

/// Number of OpenMP threads a parallel region would use.
int max_threads();

}  // namespace klb::kernels
