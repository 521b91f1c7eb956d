#include <cmath>
#include <sstream>

#include "doctest.h"
#include "klb/basisfn.hpp"
#include "klb/error.hpp"

using namespace klb;
using Eigen::VectorXd;

namespace {

VectorXd sampled(const Grid& g, auto&& f) {
  VectorXd s(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) s(static_cast<Eigen::Index>(i)) = f(g.points[i]);
  return s;
}

}  // namespace

TEST_CASE("interpolation reproduces constants") {
  for (auto kind : {GridKind::Uniform, GridKind::ChebyshevLobatto}) {
    const auto g = make_grid(kind, 20, 0.0, 40.0);
    const auto f = make_basis_function(g, VectorXd::Constant(20, -3.25));
    for (double x = 0.0; x <= 40.0; x += 0.37) {
      CHECK(std::abs(f.eval(x) + 3.25) <= 1e-12);
      CHECK(std::abs(f.eval_deriv(x, 1)) <= 1e-10);
      CHECK(std::abs(f.eval_deriv(x, 2)) <= 1e-10);
    }
  }
}

TEST_CASE("interpolation reproduces x^2 off the nodes") {
  for (int n : {3, 4, 7})
    for (auto kind : {GridKind::Uniform, GridKind::ChebyshevLobatto}) {
      const auto g = make_grid(kind, n, 0.0, 2.0);
      const auto f = make_basis_function(g, sampled(g, [](double x) { return x * x; }));
      CHECK(std::abs(f.eval(1.5) - 2.25) <= 1e-12);
    }
}

TEST_CASE("evaluation at a node returns the stored sample exactly") {
  const auto g = make_grid(GridKind::Uniform, 20, 0.0, 40.0);
  const auto s = sampled(g, [](double x) { return std::exp(-x / 3.0) * std::sin(x); });
  const auto f = make_basis_function(g, s, 4);
  CHECK(f.mode_index() == 4);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(f.eval(g.points[i]) == s(static_cast<Eigen::Index>(i)));
}

TEST_CASE("derivative examples") {
  const auto g5 = make_grid(GridKind::ChebyshevLobatto, 5, 0.0, 1.0);
  const auto sq = make_basis_function(g5, sampled(g5, [](double x) { return x * x; }));
  CHECK(std::abs(sq.eval_deriv(0.25, 1) - 0.5) <= 1e-10);
  CHECK(std::abs(sq.eval_deriv(0.6, 2) - 2.0) <= 1e-10);

  for (auto kind : {GridKind::Uniform, GridKind::ChebyshevLobatto}) {
    const auto g6 = make_grid(kind, 6, 0.0, 1.0);
    const auto cube = make_basis_function(g6, sampled(g6, [](double x) { return x * x * x; }));
    CHECK(std::abs(cube.eval_deriv(1.0, 2) - 6.0) <= 1e-9);
    CHECK(std::abs(cube.eval_deriv(0.3, 1) - 0.27) <= 1e-10);
  }
}

TEST_CASE("node derivatives are the differentiation-matrix products") {
  const auto g = make_grid(GridKind::ChebyshevLobatto, 9, -1.0, 3.0);
  const auto s = sampled(g, [](double x) { return std::cos(x); });
  const auto interp = std::make_shared<const BarycentricInterpolator>(g);
  const BasisFunction f(interp, s, 0);
  const VectorXd d1 = interp->differentiation_matrix() * s;
  const VectorXd d2 = interp->differentiation_matrix() * d1;
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(f.eval_deriv(g.points[i], 1) == d1(static_cast<Eigen::Index>(i)));
    CHECK(f.eval_deriv(g.points[i], 2) == d2(static_cast<Eigen::Index>(i)));
  }
}

TEST_CASE("monomials up to degree N_s-1 are reproduced and differentiated") {
  const int n = 12;
  for (auto kind : {GridKind::Uniform, GridKind::ChebyshevLobatto}) {
    const auto g = make_grid(kind, n, -1.0, 1.0);
    for (int k = 0; k < n; ++k) {
      const auto f = make_basis_function(g, sampled(g, [k](double x) { return std::pow(x, k); }));
      for (double x : {-0.93, -0.41, 0.05, 0.5, 0.77}) {
        CHECK(std::abs(f.eval(x) - std::pow(x, k)) <= 1e-9);
        const double d1 = k >= 1 ? k * std::pow(x, k - 1) : 0.0;
        const double d2 = k >= 2 ? k * (k - 1) * std::pow(x, k - 2) : 0.0;
        CHECK(std::abs(f.eval_deriv(x, 1) - d1) <= 1e-9 * std::max(1.0, std::abs(d1)) * 10);
        CHECK(std::abs(f.eval_deriv(x, 2) - d2) <= 1e-9 * std::max(1.0, std::abs(d2)) * 100);
      }
    }
  }
}

TEST_CASE("first derivative is consistent with central differences") {
  const auto g = make_grid(GridKind::Uniform, 20, 0.0, 40.0);
  const auto f = make_basis_function(g, sampled(g, [](double x) { return x * std::exp(-x / 4.0); }));
  const double h = 1e-5 * 40.0;
  for (double x = 4.0; x <= 36.0; x += 1.3) {
    const double fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
    const double d = f.eval_deriv(x, 1);
    CHECK(std::abs(fd - d) <= 1e-5 * std::max(std::abs(d), 1e-3));
  }
}

TEST_CASE("evaluation is linear in the samples") {
  const auto g = make_grid(GridKind::ChebyshevLobatto, 15, 0.0, 10.0);
  const VectorXd s1 = sampled(g, [](double x) { return std::sin(x); });
  const VectorXd s2 = sampled(g, [](double x) { return std::exp(-x); });
  const double alpha = 2.5, beta = -0.75;
  const auto f = make_basis_function(g, s1), h = make_basis_function(g, s2);
  const auto sum = make_basis_function(g, alpha * s1 + beta * s2);
  for (double x = 0.1; x < 10.0; x += 0.45) {
    const double expect = alpha * f.eval(x) + beta * h.eval(x);
    CHECK(std::abs(sum.eval(x) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("error paths") {
  Grid dup{GridKind::Uniform, {0.0, 1.0, 1.0, 2.0}, 0.0, 2.0};
  CHECK_THROWS_AS(BarycentricInterpolator{dup}, InvalidArgument);
  const auto g = make_grid(GridKind::Uniform, 5, 0.0, 1.0);
  const auto f = make_basis_function(g, VectorXd::Ones(5));
  CHECK_THROWS_AS(f.eval(-1e-9), InvalidArgument);
  CHECK_THROWS_AS(f.eval(1.5), InvalidArgument);
  CHECK_THROWS_AS(f.eval_deriv(2.0, 1), InvalidArgument);
  CHECK_THROWS_AS(f.eval_deriv(0.5, 3), InvalidArgument);
  CHECK_THROWS_AS(make_basis_function(g, VectorXd::Ones(4)), InvalidArgument);
}

TEST_CASE("interpolate and tabulate a truncated basis") {
  const auto Y = build_sample_matrix(hydrogen_family(7), make_grid(GridKind::Uniform, 20, 0.0, 40.0),
                                     Representation::rR);
  const auto b = eig_sym(covariance(center_columns(Y)));
  const auto t = truncate_basis(b, FixedM{3});
  const auto fns = interpolate(t);
  REQUIRE(fns.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(fns[static_cast<std::size_t>(k)].mode_index() == k);
    for (std::size_t i = 0; i < 20; ++i)
      CHECK(fns[static_cast<std::size_t>(k)].eval(Y.grid.points[i]) == t.vectors(static_cast<Eigen::Index>(i), k));
  }
  std::ostringstream out;
  const std::vector<double> pts{0.0, 20.0, 40.0};
  write_tabulation_csv(out, fns, pts);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,phi_0,phi_1,phi_2");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}
