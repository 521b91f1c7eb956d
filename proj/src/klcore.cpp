#include "klb/klcore.hpp"

#include <cmath>
#include <random>

#include "klb/error.hpp"
#include "klb/kernels.hpp"

namespace klb {

CenteredMatrix center_columns(const Eigen::MatrixXd& Y) {
  if (Y.cols() < 2) throw InvalidArgument("center_columns: need at least 2 wavefunctions (columns)");
  if (Y.rows() < 1) throw InvalidArgument("center_columns: empty sample matrix");
  CenteredMatrix out;
  out.row_means = Y.rowwise().mean();
  out.values = Y.colwise() - out.row_means;
  return out;
}

CenteredMatrix center_columns(const SampleMatrix& Y) {
  CenteredMatrix out = center_columns(Y.values);
  out.grid = Y.grid;
  return out;
}

CovarianceMatrix covariance(const CenteredMatrix& Yc) {
  if (Yc.values.cols() < 1 || Yc.values.rows() < 1) throw InvalidArgument("covariance: empty matrix");
  const double scale = 1.0 / static_cast<double>(Yc.values.cols());
  Eigen::MatrixXd K = kernels::scaled_gram(Yc.values, scale);
  K = 0.5 * (K + K.transpose()).eval();
  return CovarianceMatrix{std::move(K), Yc.grid};
}

int retained_modes(const KLBasis& basis, const TruncationCriterion& criterion) {
  const auto n = static_cast<int>(basis.eigenvalues.size());
  if (const auto* fixed = std::get_if<FixedM>(&criterion)) {
    if (fixed->M < 1 || fixed->M > n)
      throw InvalidArgument("truncate_basis: M must lie in [1, " + std::to_string(n) + "]");
    return fixed->M;
  }
  const double f = std::get<EnergyFraction>(criterion).fraction;
  if (!(f > 0.0 && f <= 1.0)) throw InvalidArgument("truncate_basis: energy fraction must lie in (0, 1]");
  const double total = basis.eigenvalues.sum();
  double cumulative = 0.0;
  for (int m = 0; m < n; ++m) {
    cumulative += basis.eigenvalues(m);
    if (cumulative >= f * total) return m + 1;
  }
  return n;
}

TruncatedBasis truncate_basis(const KLBasis& basis, const TruncationCriterion& criterion) {
  const int M = retained_modes(basis, criterion);
  return TruncatedBasis{M, basis.vectors.leftCols(M), basis.eigenvalues.head(M), basis.grid};
}

Eigen::MatrixXd kl_transform(const KLBasis& basis, const Eigen::MatrixXd& Y) {
  if (basis.vectors.rows() != Y.rows())
    throw InvalidArgument("kl_transform: basis has " + std::to_string(basis.vectors.rows()) +
                          " rows, samples have " + std::to_string(Y.rows()));
  return basis.vectors.transpose() * Y;
}

double reconstruction_mse(const Eigen::MatrixXd& Yc, const Eigen::MatrixXd& modes, int M) {
  if (modes.rows() != Yc.rows()) throw InvalidArgument("reconstruction_mse: dimension mismatch");
  if (M < 1 || M > modes.cols()) throw InvalidArgument("reconstruction_mse: M out of range");
  const auto leading = modes.leftCols(M);
  const Eigen::MatrixXd residual = Yc - leading * (leading.transpose() * Yc);
  return residual.squaredNorm() / static_cast<double>(Yc.cols());
}

double reconstruction_mse(const CenteredMatrix& Yc, const KLBasis& basis, int M) {
  return reconstruction_mse(Yc.values, basis.vectors, M);
}

Eigen::MatrixXd random_orthonormal(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("random_orthonormal: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd G(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) G(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

Eigen::MatrixXd monomial_orthonormal(const Grid& grid) {
  grid.validate();
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double half_width = 0.5 * (grid.b - grid.a);
  const double center = 0.5 * (grid.a + grid.b);
  Eigen::MatrixXd P(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (grid.points[static_cast<std::size_t>(i)] - center) / half_width;
    double power = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      P(i, k) = power;
      power *= t;
    }
  }
  // Unpivoted QR keeps the leading columns spanning the low-degree monomials.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(P);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

}  // namespace klb
