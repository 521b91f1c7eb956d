#include "klb/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "klb/csv.hpp"
#include "klb/error.hpp"

namespace klb {
namespace {

constexpr double kVanishingRow = 1e-14;
constexpr double kSingularRatio = 1e-14;
constexpr double kBoundaryWeight = 1e6;

bool row_vanishes(const std::vector<BasisFunction>& basis, double x) {
  double row_max = 0.0;
  double scale = 0.0;
  for (const auto& f : basis) {
    row_max = std::max(row_max, std::abs(f.eval(x)));
    scale = std::max(scale, f.samples().cwiseAbs().maxCoeff());
  }
  return row_max <= kVanishingRow * scale;
}

void check_domain(const BoundaryValueProblem& bvp, const std::vector<BasisFunction>& basis) {
  if (basis.empty()) throw InvalidArgument("collocation: empty basis");
  for (const auto& f : basis)
    if (bvp.a < f.nodes().a || bvp.b > f.nodes().b)
      throw InvalidArgument("collocation: basis domain [" + csv::format_number(f.nodes().a) + ", " +
                            csv::format_number(f.nodes().b) + "] does not cover the problem domain");
}

}  // namespace

std::string to_string(SolveMethod method) { return method == SolveMethod::LU ? "lu" : "least-squares"; }

std::vector<double> uniform_interior(double a, double b, int n) {
  std::vector<double> points(static_cast<std::size_t>(std::max(n, 0)));
  for (int k = 1; k <= n; ++k) points[static_cast<std::size_t>(k - 1)] = a + k * (b - a) / (n + 1);
  return points;
}

CollocationProblem make_problem(const BoundaryValueProblem& bvp, std::vector<BasisFunction> basis,
                                std::vector<double> interior) {
  bvp.validate();
  check_domain(bvp, basis);
  for (double x : interior)
    if (!(x > bvp.a && x < bvp.b)) throw InvalidArgument("collocation: interior point outside (a, b)");
  CollocationProblem problem{bvp, std::move(basis), std::move(interior)};
  problem.left_row = !(bvp.y_a == 0.0 && row_vanishes(problem.basis, bvp.a));
  problem.right_row = !(bvp.y_f == 0.0 && row_vanishes(problem.basis, bvp.b));
  return problem;
}

CollocationProblem make_problem(const BoundaryValueProblem& bvp, std::vector<BasisFunction> basis) {
  CollocationProblem problem = make_problem(bvp, std::move(basis), {});
  const int boundary_rows = int(problem.left_row) + int(problem.right_row);
  const int M = problem.modes();

  std::vector<double> nodes_inside;
  for (double x : problem.basis.front().nodes().points)
    if (x > bvp.a && x < bvp.b) nodes_inside.push_back(x);

  if (static_cast<int>(nodes_inside.size()) + boundary_rows >= M)
    problem.interior = std::move(nodes_inside);
  else
    problem.interior = uniform_interior(bvp.a, bvp.b, std::max(M - boundary_rows, 0));
  return problem;
}

LinearSystem assemble(const CollocationProblem& problem) {
  const int M = problem.modes();
  const int rows = problem.rows();
  if (rows < M)
    throw InvalidArgument("assemble: " + std::to_string(rows) + " equations for " + std::to_string(M) +
                          " unknowns (under-determined)");
  const auto& bvp = problem.bvp;
  LinearSystem sys{Eigen::MatrixXd(rows, M), Eigen::VectorXd::Zero(rows),
                   static_cast<int>(problem.interior.size())};
  for (int j = 0; j < sys.interior_rows; ++j) {
    const double x = problem.interior[static_cast<std::size_t>(j)];
    const double shift = bvp.potential(x) - bvp.E;
    for (int i = 0; i < M; ++i) {
      const auto& f = problem.basis[static_cast<std::size_t>(i)];
      sys.A(j, i) = -0.5 * f.eval_deriv(x, 2) + shift * f.eval(x);
    }
  }
  int row = sys.interior_rows;
  if (problem.left_row) {
    for (int i = 0; i < M; ++i) sys.A(row, i) = problem.basis[static_cast<std::size_t>(i)].eval(bvp.a);
    sys.rhs(row++) = bvp.y_a;
  }
  if (problem.right_row) {
    for (int i = 0; i < M; ++i) sys.A(row, i) = problem.basis[static_cast<std::size_t>(i)].eval(bvp.b);
    sys.rhs(row++) = bvp.y_f;
  }
  return sys;
}

SpectralSolution solve(const CollocationProblem& problem) {
  LinearSystem sys = assemble(problem);
  const Eigen::Index M = sys.A.cols();
  const bool square = sys.A.rows() == M;

  if (!square && sys.interior_rows > 0) {
    const double weight = kBoundaryWeight * sys.A.topRows(sys.interior_rows).rowwise().norm().maxCoeff();
    if (weight > 0.0)
      for (Eigen::Index r = sys.interior_rows; r < sys.A.rows(); ++r) {
        sys.A.row(r) *= weight;
        sys.rhs(r) *= weight;
      }
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.A);
  const auto& sigma = svd.singularValues();
  const double largest = sigma(0);
  const double smallest = sigma(sigma.size() - 1);
  if (!(largest > 0.0) || smallest < kSingularRatio * largest)
    throw NumericalError("solve: collocation matrix is numerically singular (sigma_min/sigma_max = " +
                         csv::format_number(largest > 0.0 ? smallest / largest : 0.0) + ")");

  SpectralSolution sol;
  sol.problem = problem;
  sol.condition_estimate = largest / smallest;
  if (square) {
    sol.method = SolveMethod::LU;
    sol.coefficients = Eigen::PartialPivLU<Eigen::MatrixXd>(sys.A).solve(sys.rhs);
  } else {
    sol.method = SolveMethod::LeastSquares;
    sol.coefficients = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(sys.A).solve(sys.rhs);
  }
  if (!sol.coefficients.allFinite()) throw NumericalError("solve: non-finite coefficients");
  return sol;
}

double SpectralSolution::value(double x) const {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < coefficients.size(); ++i)
    sum += coefficients(i) * problem.basis[static_cast<std::size_t>(i)].eval(x);
  return sum;
}

double SpectralSolution::derivative(double x, int order) const {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < coefficients.size(); ++i)
    sum += coefficients(i) * problem.basis[static_cast<std::size_t>(i)].eval_deriv(x, order);
  return sum;
}

std::vector<double> residual(const SpectralSolution& solution, std::span<const double> points) {
  const auto& bvp = solution.problem.bvp;
  std::vector<double> out;
  out.reserve(points.size());
  for (double x : points) {
    if (!(x >= bvp.a && x <= bvp.b)) throw InvalidArgument("residual: point outside [a, b]");
    const double y = solution.value(x);
    out.push_back(-0.5 * solution.derivative(x, 2) + (bvp.potential(x) - bvp.E) * y);
  }
  return out;
}

std::vector<double> residual(const SpectralSolution& solution, const Grid& grid) {
  return residual(solution, std::span<const double>(grid.points));
}

double residual_norm(const SpectralSolution& solution, std::span<const double> points) {
  if (points.empty()) throw InvalidArgument("residual_norm: no evaluation points");
  double sum = 0.0;
  for (double r : residual(solution, points)) sum += r * r;
  return std::sqrt(sum / static_cast<double>(points.size()));
}

}  // namespace klb
