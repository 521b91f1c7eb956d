#include "klb/basisfn.hpp"

#include <cmath>
#include <string>

#include "klb/csv.hpp"
#include "klb/error.hpp"

namespace klb {

BarycentricInterpolator::BarycentricInterpolator(Grid nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw InvalidArgument("interpolator: needs at least 2 nodes");
  const auto n = static_cast<Eigen::Index>(nodes_.size());
  const auto& x = nodes_.points;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (x[i] == x[j]) throw InvalidArgument("interpolator: duplicate node " + csv::format_number(x[i]));
  nodes_.validate();

  // Capacity scaling 4/(b-a) keeps the node products in range for large N.
  const double capacity = 4.0 / (nodes_.b - nodes_.a);
  weights_.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double product = 1.0;
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != j) product *= (x[j] - x[k]) * capacity;
    weights_(j) = 1.0 / product;
  }

  diff_ = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diagonal = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      diff_(i, j) = (weights_(j) / weights_(i)) / (x[i] - x[j]);
      diagonal -= diff_(i, j);
    }
    diff_(i, i) = diagonal;
  }
}

double BarycentricInterpolator::operator()(const Eigen::VectorXd& samples, double x) const {
  if (!(x >= nodes_.a && x <= nodes_.b))
    throw InvalidArgument("interpolator: x=" + csv::format_number(x) + " outside [" +
                          csv::format_number(nodes_.a) + ", " + csv::format_number(nodes_.b) + "]");
  double numerator = 0.0;
  double denominator = 0.0;
  for (Eigen::Index j = 0; j < weights_.size(); ++j) {
    const double diff = x - nodes_.points[static_cast<std::size_t>(j)];
    if (diff == 0.0) return samples(j);
    const double term = weights_(j) / diff;
    numerator += term * samples(j);
    denominator += term;
  }
  return numerator / denominator;
}

BasisFunction::BasisFunction(std::shared_ptr<const BarycentricInterpolator> interp, Eigen::VectorXd samples,
                             int mode_index)
    : interp_(std::move(interp)), samples_(std::move(samples)), mode_index_(mode_index) {
  if (!interp_) throw InvalidArgument("basis function: missing interpolator");
  if (samples_.size() != static_cast<Eigen::Index>(interp_->nodes().size()))
    throw InvalidArgument("basis function: sample count does not match node count");
  const auto& D = interp_->differentiation_matrix();
  first_ = D * samples_;
  second_ = D * first_;
}

double BasisFunction::eval(double x) const { return (*interp_)(samples_, x); }

double BasisFunction::eval_deriv(double x, int order) const {
  if (order == 1) return (*interp_)(first_, x);
  if (order == 2) return (*interp_)(second_, x);
  throw InvalidArgument("eval_deriv: order must be 1 or 2");
}

std::vector<BasisFunction> interpolate(const TruncatedBasis& basis) {
  auto interp = std::make_shared<const BarycentricInterpolator>(basis.grid);
  std::vector<BasisFunction> functions;
  functions.reserve(static_cast<std::size_t>(basis.M));
  for (int m = 0; m < basis.M; ++m) functions.emplace_back(interp, basis.vectors.col(m), m);
  return functions;
}

BasisFunction make_basis_function(const Grid& nodes, Eigen::VectorXd samples, int mode_index) {
  return BasisFunction(std::make_shared<const BarycentricInterpolator>(nodes), std::move(samples), mode_index);
}

void write_tabulation_csv(std::ostream& out, std::span<const BasisFunction> functions,
                          std::span<const double> points) {
  csv::Writer writer(out);
  std::vector<std::string> header{"x"};
  for (const auto& f : functions) header.push_back("phi_" + std::to_string(f.mode_index()));
  writer.header(header);
  std::vector<double> row(functions.size() + 1);
  for (double x : points) {
    row[0] = x;
    for (std::size_t m = 0; m < functions.size(); ++m) row[m + 1] = functions[m].eval(x);
    writer.row(row);
  }
}

}  // namespace klb
