#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "klb/basisfn.hpp"
#include "klb/hydrogenic.hpp"

namespace klb {

/// Collocation of the regularized radial equation in a fixed basis:
/// one equation per interior point plus boundary rows at a and b.
struct CollocationProblem {
  BoundaryValueProblem bvp;
  std::vector<BasisFunction> basis;
  std::vector<double> interior;
  /// A boundary row is dropped only when every basis function vanishes there
  /// and the prescribed value is zero, i.e. the condition holds identically.
  bool left_row = true;
  bool right_row = true;

  int modes() const { return static_cast<int>(basis.size()); }
  int rows() const { return static_cast<int>(interior.size()) + int(left_row) + int(right_row); }
};

/// Builds a problem with the default point choice: the basis nodes strictly
/// inside (a, b) when the basis covers [a, b] and they give at least M
/// equations, otherwise M - (boundary rows) uniformly spaced interior points
/// (a square system).
CollocationProblem make_problem(const BoundaryValueProblem& bvp, std::vector<BasisFunction> basis);
/// Same, with caller-chosen interior points.
CollocationProblem make_problem(const BoundaryValueProblem& bvp, std::vector<BasisFunction> basis,
                                std::vector<double> interior);

struct LinearSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd rhs;
  int interior_rows = 0;
};

/// Interior rows: A[j][i] = -phi_i''(x_j)/2 + (V(x_j) - E) phi_i(x_j), rhs 0.
/// Boundary rows: phi_i(a) = y_a, phi_i(b) = y_f. Throws InvalidArgument when
/// there are fewer rows than modes.
LinearSystem assemble(const CollocationProblem& problem);

enum class SolveMethod { LU, LeastSquares };
std::string to_string(SolveMethod method);

/// Expansion coefficients of y(x) = sum_i c_i phi_i(x).
struct SpectralSolution {
  Eigen::VectorXd coefficients;
  /// sigma_max / sigma_min of the matrix actually factorized (boundary rows
  /// weighted in least-squares mode).
  double condition_estimate = 1.0;
  SolveMethod method = SolveMethod::LU;
  CollocationProblem problem;

  double value(double x) const;
  double derivative(double x, int order) const;
};

/// Square systems: LU with partial pivoting. Overdetermined systems: column-
/// pivoted Householder least squares with the boundary rows weighted by
/// 1e6 times the largest interior row norm. Throws NumericalError when the
/// smallest singular value is below 1e-14 of the largest.
SpectralSolution solve(const CollocationProblem& problem);

/// L[y](x) - E y(x) at each point, L the left side of the radial equation.
std::vector<double> residual(const SpectralSolution& solution, std::span<const double> points);
std::vector<double> residual(const SpectralSolution& solution, const Grid& grid);

/// Root-mean-square of the residual over the points.
double residual_norm(const SpectralSolution& solution, std::span<const double> points);

/// n points strictly inside (a, b), evenly spaced: a + k (b - a) / (n + 1).
std::vector<double> uniform_interior(double a, double b, int n);

enum class ScanStatus { Ok, Failed };

struct ScanPoint {
  double E = 0.0;
  double residual_norm = 0.0;  ///< NaN when the solve failed
  ScanStatus status = ScanStatus::Ok;
  std::string message;
};

struct EnergyScan {
  std::vector<ScanPoint> table;  ///< ordered by E
  bool found = false;            ///< at least one successful solve
  std::size_t argmin_index = 0;
  double argmin_E = 0.0;
  /// Vertex of the parabola through the minimum and its neighbours; equal to
  /// argmin_E when the minimum sits on the scan edge.
  double refined_E = 0.0;
  bool boundary_minimum = false;
};

/// Solves the template problem at n_steps evenly spaced energies in
/// [E_lo, E_hi] and records the RMS residual on `dense_points`. Failed solves
/// are marked in the table; the scan continues.
EnergyScan energy_scan(const CollocationProblem& templ, double E_lo, double E_hi, int n_steps,
                       std::span<const double> dense_points);
/// Serial reference for energy_scan.
EnergyScan energy_scan_serial(const CollocationProblem& templ, double E_lo, double E_hi, int n_steps,
                              std::span<const double> dense_points);

/// Abscissa of the vertex of the parabola through three points.
double parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2);

}  // namespace klb
