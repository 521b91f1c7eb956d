#include "klb/kernels.hpp"

#include <omp.h>

#include "klb/sampling.hpp"

namespace klb::kernels {
namespace {

inline double sample(const OrbitalSpec& orb, double x, Representation rep) {
  const double value = radial_wavefunction(orb, x);
  return rep == Representation::rR ? x * value : value;
}

// Yt is Y transposed, so a row of Y is a contiguous column here.
inline double row_dot(const Eigen::MatrixXd& Yt, Eigen::Index i, Eigen::Index j) {
  const double* a = Yt.col(i).data();
  const double* b = Yt.col(j).data();
  double sum = 0.0;
  for (Eigen::Index k = 0; k < Yt.rows(); ++k) sum += a[k] * b[k];
  return sum;
}

}  // namespace

Eigen::MatrixXd fill_samples(const RadialFamily& family, std::span<const double> points, Representation rep) {
  const auto rows = static_cast<Eigen::Index>(points.size());
  const auto cols = static_cast<Eigen::Index>(family.size());
  Eigen::MatrixXd values(rows, cols);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) values(i, j) = sample(family[j], points[i], rep);
  return values;
}

Eigen::MatrixXd fill_samples_serial(const RadialFamily& family, std::span<const double> points,
                                    Representation rep) {
  const auto rows = static_cast<Eigen::Index>(points.size());
  const auto cols = static_cast<Eigen::Index>(family.size());
  Eigen::MatrixXd values(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) values(i, j) = sample(family[j], points[i], rep);
  return values;
}

Eigen::MatrixXd scaled_gram(const Eigen::MatrixXd& Y, double scale) {
  const Eigen::Index n = Y.rows();
  const Eigen::MatrixXd Yt = Y.transpose();
  Eigen::MatrixXd K(n, n);
#pragma omp parallel for schedule(dynamic, 4)
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) K(i, j) = scale * row_dot(Yt, i, j);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) K(i, j) = K(j, i);
  return K;
}

Eigen::MatrixXd scaled_gram_serial(const Eigen::MatrixXd& Y, double scale) {
  const Eigen::Index n = Y.rows();
  const Eigen::MatrixXd Yt = Y.transpose();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) K(i, j) = scale * row_dot(Yt, i, j);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) K(i, j) = K(j, i);
  return K;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace klb::kernels
