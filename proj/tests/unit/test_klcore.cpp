#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "doctest.h"
#include "klb/error.hpp"
#include "klb/klcore.hpp"

using namespace klb;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

SampleMatrix reproduction_samples() {
  return build_sample_matrix(hydrogen_family(7), make_grid(GridKind::Uniform, 20, 0.0, 40.0), Representation::rR);
}

MatrixXd random_matrix(int rows, int cols, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = u(gen);
  return m;
}

double max_abs(const MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("center_columns: examples") {
  MatrixXd Y(2, 2);
  Y << 1, 3, 2, 2;
  const auto c = center_columns(Y);
  CHECK(c.values(0, 0) == -1.0);
  CHECK(c.values(0, 1) == 1.0);
  CHECK(c.values(1, 0) == 0.0);
  CHECK(c.values(1, 1) == 0.0);
  CHECK(c.row_means(0) == 2.0);
  CHECK(c.row_means(1) == 2.0);

  MatrixXd same(3, 2);
  same << 1.5, 1.5, -2, -2, 7, 7;
  CHECK(max_abs(center_columns(same).values) == 0.0);

  const auto r = random_matrix(9, 13, 3) * 50.0;
  const auto rc = center_columns(r);
  const double tol = 1e-12 * 13 * max_abs(r);
  for (int i = 0; i < 9; ++i) CHECK(std::abs(rc.values.row(i).sum()) <= tol);
}

TEST_CASE("center_columns: rejects a single wavefunction") {
  CHECK_THROWS_AS(center_columns(MatrixXd::Ones(4, 1)), InvalidArgument);
}

TEST_CASE("covariance: examples and trace identity") {
  MatrixXd Yc(2, 2);
  Yc << -1, 1, 0, 0;
  const auto K = covariance(CenteredMatrix{Yc, VectorXd::Zero(2), {}}).K;
  CHECK(K(0, 0) == 1.0);
  CHECK(K(0, 1) == 0.0);
  CHECK(K(1, 0) == 0.0);
  CHECK(K(1, 1) == 0.0);

  CHECK(max_abs(covariance(CenteredMatrix{MatrixXd::Zero(3, 4), VectorXd::Zero(3), {}}).K) == 0.0);

  const auto c = center_columns(random_matrix(12, 7, 11));
  const auto Kr = covariance(c).K;
  CHECK((Kr.array() == Kr.transpose().array()).all());
  const double expected = c.values.squaredNorm() / 7.0;
  CHECK(std::abs(Kr.trace() - expected) <= 1e-12 * expected);
}

TEST_CASE("eig_sym: identity") {
  const auto b = eig_sym(MatrixXd::Identity(4, 4));
  CHECK((b.eigenvalues.array() == 1.0).all());
  CHECK(max_abs(b.vectors - MatrixXd::Identity(4, 4)) == 0.0);
}

TEST_CASE("eig_sym: 2x2 characteristic roots") {
  MatrixXd K(2, 2);
  K << 2, 1, 1, 2;
  const auto b = eig_sym(K);
  CHECK(b.eigenvalues(0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(b.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(b.vectors(0, 0) - s) <= 1e-14);
  CHECK(std::abs(b.vectors(1, 0) - s) <= 1e-14);
  // (-1, 1)/sqrt2: equal magnitudes, tie goes to index 0 which must be positive
  CHECK(std::abs(b.vectors(0, 1) - s) <= 1e-14);
  CHECK(std::abs(b.vectors(1, 1) + s) <= 1e-14);
}

TEST_CASE("eig_sym: diagonal matrix gives permuted identity") {
  const auto b = eig_sym(MatrixXd(Eigen::Vector3d(5, 2, 9).asDiagonal()));
  CHECK(b.eigenvalues(0) == 9.0);
  CHECK(b.eigenvalues(1) == 5.0);
  CHECK(b.eigenvalues(2) == 2.0);
  MatrixXd P = MatrixXd::Zero(3, 3);
  P(2, 0) = P(0, 1) = P(1, 2) = 1.0;
  CHECK(max_abs(b.vectors - P) == 0.0);
}

TEST_CASE("eig_sym: agrees with an independent symmetric eigensolver") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto A = random_matrix(15, 15, seed);
    const MatrixXd K = (A + A.transpose()) / 2.0;
    const auto b = eig_sym(K);
    Eigen::SelfAdjointEigenSolver<MatrixXd> ref(K);
    const VectorXd expected = ref.eigenvalues().reverse();
    CHECK(max_abs(b.eigenvalues - expected) <= 1e-12 * K.norm());
    for (int k = 0; k < 15; ++k) {
      // same subspace, sign is convention
      const double overlap = std::abs(b.vectors.col(k).dot(ref.eigenvectors().col(14 - k)));
      CHECK(overlap == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("eig_sym: rejects non-square and non-symmetric input") {
  CHECK_THROWS_AS(eig_sym(MatrixXd::Ones(2, 3)), InvalidArgument);
  MatrixXd K(2, 2);
  K << 1, 2, 0, 1;
  CHECK_THROWS_AS(eig_sym(K), InvalidArgument);
}

TEST_CASE("KL invariants on the hydrogen sample matrix") {
  const auto Y = reproduction_samples();
  const auto c = center_columns(Y);
  const auto cov = covariance(c);
  const auto b = eig_sym(cov);
  const auto& lam = b.eigenvalues;
  const double tr = cov.K.trace();
  for (int i = 0; i < 20; ++i) CHECK(lam(i) >= -1e-12 * tr);
  for (int i = 0; i + 1 < 20; ++i) CHECK(lam(i) >= lam(i + 1));
  CHECK(max_abs(b.vectors.transpose() * b.vectors - MatrixXd::Identity(20, 20)) <= 1e-10);
  MatrixXd D = b.vectors.transpose() * cov.K * b.vectors;
  D.diagonal() -= lam;
  CHECK(max_abs(D) <= 1e-10 * lam(0));
  CHECK(std::abs(lam.sum() - tr) <= 1e-12 * tr);
  // sign convention
  for (int k = 0; k < 20; ++k) {
    Eigen::Index at = 0;
    b.vectors.col(k).cwiseAbs().maxCoeff(&at);
    CHECK(b.vectors(at, k) > 0.0);
  }
  CHECK(retained_modes(b, EnergyFraction{0.9999}) <= 10);
}

TEST_CASE("truncate_basis: criteria") {
  const auto b = eig_sym(MatrixXd(Eigen::Vector3d(5, 2, 9).asDiagonal()));
  CHECK(retained_modes(b, EnergyFraction{0.5}) == 1);
  CHECK(retained_modes(b, EnergyFraction{0.6}) == 2);
  CHECK(retained_modes(b, EnergyFraction{1.0}) == 3);
  const auto full = truncate_basis(b, FixedM{3});
  CHECK(full.M == 3);
  CHECK(max_abs(full.vectors - b.vectors) == 0.0);
  const auto one = truncate_basis(b, EnergyFraction{0.5});
  CHECK(one.vectors.cols() == 1);
  CHECK(one.eigenvalues(0) == 9.0);
  CHECK_THROWS_AS(truncate_basis(b, FixedM{0}), InvalidArgument);
  CHECK_THROWS_AS(truncate_basis(b, FixedM{4}), InvalidArgument);
  CHECK_THROWS_AS(truncate_basis(b, EnergyFraction{0.0}), InvalidArgument);
  CHECK_THROWS_AS(truncate_basis(b, EnergyFraction{1.5}), InvalidArgument);
}

TEST_CASE("kl_transform: examples") {
  const auto I = eig_sym(MatrixXd::Identity(3, 3));
  const auto Y = random_matrix(3, 5, 8);
  CHECK(max_abs(kl_transform(I, Y) - Y) == 0.0);

  const auto c = center_columns(reproduction_samples());
  const auto b = eig_sym(covariance(c));
  const auto e0 = kl_transform(b, MatrixXd(b.vectors.col(0)));
  CHECK(std::abs(e0(0) - 1.0) <= 1e-12);
  CHECK(e0.bottomRows(19).cwiseAbs().maxCoeff() <= 1e-12);

  const MatrixXd Z = kl_transform(b, c.values);
  MatrixXd C = Z * Z.transpose() / 28.0;
  C.diagonal().setZero();
  CHECK(max_abs(C) <= 1e-10 * b.eigenvalues(0));
  CHECK_THROWS_AS(kl_transform(b, MatrixXd::Ones(3, 2)), InvalidArgument);
}

TEST_CASE("reconstruction_mse: tail identity and examples") {
  MatrixXd Yc(2, 2);
  Yc << -1, 1, 0, 0;
  const CenteredMatrix small{Yc, VectorXd::Zero(2), {}};
  CHECK(reconstruction_mse(small, eig_sym(covariance(small)), 1) <= 1e-15);

  const auto c = center_columns(reproduction_samples());
  const auto b = eig_sym(covariance(c));
  const double tr = b.eigenvalues.sum();
  CHECK(reconstruction_mse(c, b, 20) <= 1e-10 * tr);
  for (int M = 1; M <= 20; ++M) {
    const double tail = b.eigenvalues.tail(20 - M).sum();
    const double mse = reconstruction_mse(c, b, M);
    // tail identity; when the tail sits at round-off level compare against trace
    CHECK(std::abs(mse - tail) <= 1e-9 * std::max(tail, 1e-6 * tr));
  }
  CHECK_THROWS_AS(reconstruction_mse(c, b, 0), InvalidArgument);
  CHECK_THROWS_AS(reconstruction_mse(c, b, 21), InvalidArgument);
}

TEST_CASE("KL optimality against seeded random orthonormal bases") {
  const auto c = center_columns(reproduction_samples());
  const auto b = eig_sym(covariance(c));
  std::vector<double> kl(21);
  for (int M = 1; M <= 20; ++M) kl[M] = reconstruction_mse(c, b, M);
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const auto Q = random_orthonormal(20, 42 + trial);
    CHECK(max_abs(Q.transpose() * Q - MatrixXd::Identity(20, 20)) <= 1e-12);
    for (int M = 1; M <= 20; ++M) CHECK(kl[M] <= reconstruction_mse(c.values, Q, M) + 1e-12 * kl[1]);
  }
}

TEST_CASE("random_orthonormal: seeded and distinct") {
  CHECK(max_abs(random_orthonormal(6, 7) - random_orthonormal(6, 7)) == 0.0);
  CHECK(max_abs(random_orthonormal(6, 7) - random_orthonormal(6, 8)) > 0.1);
}

TEST_CASE("monomial_orthonormal: spans polynomials in degree order") {
  const auto g = make_grid(GridKind::Uniform, 8, 0.0, 40.0);
  const auto Q = monomial_orthonormal(g);
  CHECK(max_abs(Q.transpose() * Q - MatrixXd::Identity(8, 8)) <= 1e-10);
  // first column is constant
  CHECK(Q.col(0).maxCoeff() - Q.col(0).minCoeff() <= 1e-14);
  // a linear function is captured by the first two columns
  VectorXd lin(8);
  for (int i = 0; i < 8; ++i) lin(i) = 3.0 - 0.5 * g.points[static_cast<std::size_t>(i)];
  const VectorXd proj = Q.leftCols(2) * (Q.leftCols(2).transpose() * lin);
  CHECK((proj - lin).norm() <= 1e-12 * lin.norm());
}

TEST_CASE("scale equivariance") {
  const auto c = center_columns(reproduction_samples());
  const auto b = eig_sym(covariance(c));
  const double k = 3.0;
  const auto bs = eig_sym(covariance(CenteredMatrix{c.values * k, c.row_means * k, c.grid}));
  for (int i = 0; i < 8; ++i) {
    CHECK(bs.eigenvalues(i) == doctest::Approx(k * k * b.eigenvalues(i)).epsilon(1e-10));
    CHECK((bs.vectors.col(i) - b.vectors.col(i)).cwiseAbs().maxCoeff() <= 1e-8);
  }
}
