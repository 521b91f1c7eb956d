#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <variant>

#include "klb/sampling.hpp"

namespace klb {

/// Sample matrix with the per-row mean over wavefunctions removed.
struct CenteredMatrix {
  Eigen::MatrixXd values;
  Eigen::VectorXd row_means;
  Grid grid;
};

/// K = (1/N_w) Yc Yc^T, exactly symmetric.
struct CovarianceMatrix {
  Eigen::MatrixXd K;
  Grid grid;
};

/// Eigenpairs of a covariance matrix: eigenvalues descending, eigenvectors
/// orthonormal columns with their largest-magnitude entry positive.
struct KLBasis {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd vectors;
  Grid grid;
  int sweeps = 0;  ///< Jacobi sweeps used
};

/// The leading M modes of a KLBasis.
struct TruncatedBasis {
  int M = 0;
  Eigen::MatrixXd vectors;
  Eigen::VectorXd eigenvalues;
  Grid grid;
};

struct FixedM {
  int M;
};
struct EnergyFraction {
  double fraction;
};
using TruncationCriterion = std::variant<FixedM, EnergyFraction>;

CenteredMatrix center_columns(const Eigen::MatrixXd& Y);
CenteredMatrix center_columns(const SampleMatrix& Y);

CovarianceMatrix covariance(const CenteredMatrix& Yc);

/// Cyclic Jacobi diagonalization of a symmetric matrix. Converged when the
/// off-diagonal Frobenius norm drops to 1e-14 ||K||_F; throws NumericalError
/// after 100 sweeps.
KLBasis eig_sym(const Eigen::MatrixXd& K);
KLBasis eig_sym(const CovarianceMatrix& K);

/// Number of modes the criterion retains. EnergyFraction(f) picks the
/// smallest M whose leading eigenvalues carry at least f of the total.
int retained_modes(const KLBasis& basis, const TruncationCriterion& criterion);
TruncatedBasis truncate_basis(const KLBasis& basis, const TruncationCriterion& criterion);

/// Z = Phi^T Y.
Eigen::MatrixXd kl_transform(const KLBasis& basis, const Eigen::MatrixXd& Y);

/// Mean squared truncation error (1/N_w) sum_j ||Yc_j - P_M Yc_j||^2, where P_M
/// projects onto the first M columns of an orthonormal `modes` matrix.
double reconstruction_mse(const Eigen::MatrixXd& Yc, const Eigen::MatrixXd& modes, int M);
double reconstruction_mse(const CenteredMatrix& Yc, const KLBasis& basis, int M);

/// Haar-distributed orthonormal n x n matrix: Householder QR of a seeded
/// standard Gaussian matrix with the R-diagonal sign fixed.
Eigen::MatrixXd random_orthonormal(int n, std::uint64_t seed);

/// Orthonormalized monomials t^0 .. t^{N_s-1}, t the grid coordinate mapped
/// to [-1, 1], in degree order.
Eigen::MatrixXd monomial_orthonormal(const Grid& grid);

}  // namespace klb
