#include <algorithm>
#include <cmath>
#include <numeric>

#include "klb/error.hpp"
#include "klb/klcore.hpp"

namespace klb {
namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffTolerance = 1e-14;

double off_diagonal_norm(const Eigen::MatrixXd& A) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      if (i != j) sum += A(i, j) * A(i, j);
  return std::sqrt(sum);
}

// Zeroes A(p, q) with a plane rotation applied on both sides, accumulating
// the rotation into V.
void rotate(Eigen::MatrixXd& A, Eigen::MatrixXd& V, Eigen::Index p, Eigen::Index q) {
  const double apq = A(p, q);
  const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
  const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Eigen::Index n = A.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double akp = A(k, p);
    const double akq = A(k, q);
    A(k, p) = c * akp - s * akq;
    A(k, q) = s * akp + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double apk = A(p, k);
    const double aqk = A(q, k);
    A(p, k) = c * apk - s * aqk;
    A(q, k) = s * apk + c * aqk;
  }
  A(p, q) = 0.0;
  A(q, p) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = V(k, p);
    const double vkq = V(k, q);
    V(k, p) = c * vkp - s * vkq;
    V(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

KLBasis eig_sym(const Eigen::MatrixXd& K) {
  if (K.rows() != K.cols() || K.rows() == 0) throw InvalidArgument("eig_sym: matrix must be square and non-empty");
  if (!K.allFinite()) throw InvalidArgument("eig_sym: matrix has non-finite entries");
  if (K != K.transpose()) throw InvalidArgument("eig_sym: matrix is not symmetric");

  const Eigen::Index n = K.rows();
  Eigen::MatrixXd A = K;
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);
  const double target = kOffTolerance * K.norm();

  int sweep = 0;
  while (off_diagonal_norm(A) > target) {
    if (sweep == kMaxSweeps) throw NumericalError("eig_sym: Jacobi iteration did not converge in 100 sweeps");
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (A(p, q) == 0.0) continue;
        // Late in the iteration an entry below the diagonal's rounding level
        // is dropped instead of rotated.
        const double scaled = 100.0 * std::abs(A(p, q));
        if (sweep > 4 && std::abs(A(p, p)) + scaled == std::abs(A(p, p)) &&
            std::abs(A(q, q)) + scaled == std::abs(A(q, q))) {
          A(p, q) = 0.0;
          A(q, p) = 0.0;
          continue;
        }
        rotate(A, V, p, q);
      }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return A(i, i) > A(j, j); });

  KLBasis basis;
  basis.eigenvalues.resize(n);
  basis.vectors.resize(n, n);
  basis.sweeps = sweep;
  for (Eigen::Index col = 0; col < n; ++col) {
    const Eigen::Index src = order[static_cast<std::size_t>(col)];
    basis.eigenvalues(col) = A(src, src);
    Eigen::VectorXd v = V.col(src);
    Eigen::Index pivot = 0;
    for (Eigen::Index k = 1; k < n; ++k)
      if (std::abs(v(k)) > std::abs(v(pivot))) pivot = k;
    if (v(pivot) < 0.0) v = -v;
    basis.vectors.col(col) = v;
  }
  return basis;
}

KLBasis eig_sym(const CovarianceMatrix& K) {
  KLBasis basis = eig_sym(K.K);
  basis.grid = K.grid;
  return basis;
}

}  // namespace klb
