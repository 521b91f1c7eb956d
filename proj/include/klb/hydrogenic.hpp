#pragma once

#include <string>
#include <vector>

namespace klb {

/// Quantum numbers (n, l) and nuclear charge of one bound hydrogen-like state.
struct OrbitalSpec {
  int n = 1;
  int l = 0;
  double Z = 1.0;

  /// Throws InvalidArgument unless n >= 1, 0 <= l < n and Z > 0.
  void validate() const;
  /// Spectroscopic label, e.g. "1s", "3d", "7i".
  std::string label() const;

  friend bool operator==(const OrbitalSpec&, const OrbitalSpec&) = default;
};

using RadialFamily = std::vector<OrbitalSpec>;

/// All (n, l) with n = 1..n_max and l = 0..n-1, ordered by n then l.
/// n_max = 7 gives the 28-orbital family.
RadialFamily hydrogen_family(int n_max, double Z = 1.0);

/// Regularized radial equation
///   -y''/2 + [-Z/(x+eps) + l(l+1)/(2x^2+eps)] y = E y,  y(a) = y_a, y(b) = y_f
/// for the reduced radial function y = r R(r). Lengths in Bohr radii, E in Hartree.
struct BoundaryValueProblem {
  int l = 0;
  double Z = 1.0;
  double E = -0.5;
  double a = 0.0;
  double b = 7.0;
  double y_a = 0.0;
  double y_f = 1e-4;
  double epsilon = 1e-10;

  void validate() const;
  /// Coulomb plus centrifugal term, without the energy.
  double potential(double x) const;
};

/// Generalized Laguerre polynomial L_k^alpha(x), modern convention
/// (L_0 = 1, L_1 = 1 + alpha - x), by three-term recurrence.
double laguerre(int k, double alpha, double x);

/// Unit-normalized hydrogenic radial function R_nl(r), int R^2 r^2 dr = 1.
double radial_wavefunction(const OrbitalSpec& orb, double r);

/// y(x) = y_f (x/b) e^{b-x}: the eps -> 0 solution of the 1s problem
/// (Z = 1, l = 0, E = -1/2) with y(0) = 0 and y(b) = y_f.
double reduced_ground_state(double b, double y_f, double x);

/// Fine uniform-grid solution of a BoundaryValueProblem produced by
/// numerov_oracle().
struct NumerovSolution {
  std::vector<double> x;
  std::vector<double> y;
  /// Initial slope y'(a) found by the shooting search.
  double slope = 0.0;
  int iterations = 0;
  /// Richardson estimate of the relative discretization error, from a rerun
  /// at half resolution.
  double error_estimate = 0.0;

  /// Cubic interpolation between grid samples; x must lie in [x.front(), x.back()].
  double operator()(double at) const;
};

/// Integrates the problem from a to b with Numerov's method and bisects on
/// the initial slope until y(b) = y_f. Throws NumericalError on a failed
/// bracket, exhausted bisection or non-finite integration.
NumerovSolution numerov_oracle(const BoundaryValueProblem& bvp, int n_points);

}  // namespace klb
