#include "klb/hydrogenic.hpp"

#include <cmath>

#include "klb/error.hpp"

namespace klb {

void OrbitalSpec::validate() const {
  if (n < 1) throw InvalidArgument("orbital: n must be >= 1, got " + std::to_string(n));
  if (l < 0 || l >= n)
    throw InvalidArgument("orbital: l must satisfy 0 <= l < n, got n=" + std::to_string(n) +
                          " l=" + std::to_string(l));
  if (!(Z > 0.0) || !std::isfinite(Z)) throw InvalidArgument("orbital: Z must be positive");
}

std::string OrbitalSpec::label() const {
  static constexpr char kLetters[] = "spdfghiklmnoqrtuvwxyz";
  const char letter = l < static_cast<int>(sizeof(kLetters) - 1) ? kLetters[l] : '?';
  return std::to_string(n) + letter;
}

RadialFamily hydrogen_family(int n_max, double Z) {
  if (n_max < 1) throw InvalidArgument("family: n_max must be >= 1");
  RadialFamily family;
  for (int n = 1; n <= n_max; ++n)
    for (int l = 0; l < n; ++l) {
      OrbitalSpec orb{n, l, Z};
      orb.validate();
      family.push_back(orb);
    }
  return family;
}

void BoundaryValueProblem::validate() const {
  if (l < 0) throw InvalidArgument("problem: l must be >= 0");
  if (!(Z > 0.0)) throw InvalidArgument("problem: Z must be positive");
  if (!(a < b)) throw InvalidArgument("problem: requires a < b");
  if (a < 0.0) throw InvalidArgument("problem: a must be >= 0 (radial coordinate)");
  if (!(epsilon > 0.0)) throw InvalidArgument("problem: epsilon must be positive");
  if (!std::isfinite(E) || !std::isfinite(y_a) || !std::isfinite(y_f))
    throw InvalidArgument("problem: E, y_a and y_f must be finite");
}

double BoundaryValueProblem::potential(double x) const {
  return -Z / (x + epsilon) + static_cast<double>(l * (l + 1)) / (2.0 * x * x + epsilon);
}

double laguerre(int k, double alpha, double x) {
  if (k < 0) throw InvalidArgument("laguerre: degree must be >= 0");
  if (!(alpha > -1.0)) throw InvalidArgument("laguerre: alpha must be > -1");
  if (!std::isfinite(x)) throw InvalidArgument("laguerre: x must be finite");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * curr - (j + alpha) * prev) / (j + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double radial_wavefunction(const OrbitalSpec& orb, double r) {
  orb.validate();
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("radial_wavefunction: r must be >= 0");
  const int n = orb.n;
  const int l = orb.l;
  const double scale = 2.0 * orb.Z / n;
  // sqrt(scale^3 (n-l-1)! / (2n (n+l)!)), factorials through lgamma.
  const double log_norm =
      0.5 * (3.0 * std::log(scale) + std::lgamma(n - l) - std::log(2.0 * n) - std::lgamma(n + l + 1));
  const double rho = scale * r;
  const double power = l == 0 ? 1.0 : std::pow(rho, l);
  return std::exp(log_norm - 0.5 * rho) * power * laguerre(n - l - 1, 2.0 * l + 1.0, rho);
}

double reduced_ground_state(double b, double y_f, double x) {
  if (!(b > 0.0)) throw InvalidArgument("reduced_ground_state: b must be positive");
  if (!(x >= 0.0 && x <= b)) throw InvalidArgument("reduced_ground_state: x outside [0, b]");
  return y_f * (x / b) * std::exp(b - x);
}

}  // namespace klb
