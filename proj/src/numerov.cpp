#include <algorithm>
#include <cmath>
#include <limits>

#include "klb/error.hpp"
#include "klb/hydrogenic.hpp"

namespace klb {
namespace {

constexpr int kMaxBisections = 200;
constexpr double kSlopeRange = 1e10;

struct Numerov {
  const BoundaryValueProblem& bvp;
  int n_points;
  double h;
  // 2 (V - E) h^2 / 12 at each node. The recurrence runs in long double:
  // outward integration amplifies rounding by up to e^{2 k (b - a)}.
  std::vector<long double> weight;

  Numerov(const BoundaryValueProblem& p, int n) : bvp(p), n_points(n), h((p.b - p.a) / (n - 1)) {
    weight.resize(n);
    for (int i = 0; i < n; ++i) {
      const double x = p.a + i * h;
      weight[i] = 2.0L * (static_cast<long double>(p.potential(x)) - p.E) * h * h / 12.0L;
    }
  }

  double node(int i) const { return i == n_points - 1 ? bvp.b : bvp.a + i * h; }

  // h^2/12 times the x -> 0 limit of y'' = 2 (V - E) y for the regular
  // solution y ~ c x^{l+1} (1 - Z x / (l+1)) started with y(h) = y1. The
  // sampled product V(0) y(0) is 0 (or eps-dominated), which would inject an
  // O(h) error into the first step.
  long double origin_term(long double y1) const {
    const long double z = bvp.Z;
    const long double hh = h;
    if (bvp.l == 0) return -2.0L * z * y1 / (hh * (1.0L - z * hh)) * hh * hh / 12.0L;
    if (bvp.l == 1) return 2.0L * y1 / (hh * hh * (1.0L - 0.5L * z * hh)) * hh * hh / 12.0L;
    return 0.0L;
  }

  // Returns y(b); fills `out` with the whole trajectory when non-null.
  double shoot(double slope, std::vector<double>* out) const {
    long double y_prev = bvp.y_a;
    long double y_curr = bvp.y_a + static_cast<long double>(slope) * h;
    if (out) {
      out->resize(n_points);
      (*out)[0] = static_cast<double>(y_prev);
      (*out)[1] = static_cast<double>(y_curr);
    }
    const bool singular_origin = bvp.a == 0.0 && bvp.y_a == 0.0;
    for (int i = 1; i < n_points - 1; ++i) {
      const long double prev_term =
          (i == 1 && singular_origin) ? -origin_term(y_curr) : y_prev * (1.0L - weight[i - 1]);
      const long double y_next = (2.0L * y_curr * (1.0L + 5.0L * weight[i]) - prev_term) / (1.0L - weight[i + 1]);
      if (!(std::abs(y_next) <= std::numeric_limits<double>::max()))
        throw NumericalError("numerov: integration overflowed at x=" + std::to_string(node(i + 1)));
      y_prev = y_curr;
      y_curr = y_next;
      if (out) (*out)[i + 1] = static_cast<double>(y_curr);
    }
    return static_cast<double>(y_curr);
  }
};

NumerovSolution integrate(const BoundaryValueProblem& bvp, int n_points) {
  Numerov scheme(bvp, n_points);
  NumerovSolution sol;
  sol.x.resize(n_points);
  for (int i = 0; i < n_points; ++i) sol.x[i] = scheme.node(i);

  const double scale = std::max(std::abs(bvp.y_f), std::abs(bvp.y_a));
  if (scale == 0.0) {
    sol.y.assign(n_points, 0.0);
    return sol;
  }

  double lo = -kSlopeRange * scale;
  double hi = kSlopeRange * scale;
  double g_lo = scheme.shoot(lo, nullptr) - bvp.y_f;
  const double g_hi = scheme.shoot(hi, nullptr) - bvp.y_f;
  if (std::signbit(g_lo) == std::signbit(g_hi))
    throw NumericalError("numerov: slope search failed to bracket y(b) = y_f");

  double mid = 0.5 * (lo + hi);
  bool converged = false;
  for (int it = 0; it < kMaxBisections; ++it) {
    mid = 0.5 * (lo + hi);
    sol.iterations = it + 1;
    const double g_mid = scheme.shoot(mid, nullptr) - bvp.y_f;
    if (g_mid == 0.0 || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
      converged = true;
      break;
    }
    if (std::signbit(g_mid) == std::signbit(g_lo)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  if (!converged) throw NumericalError("numerov: slope bisection exhausted without convergence");
  sol.slope = mid;
  scheme.shoot(mid, &sol.y);
  return sol;
}

}  // namespace

double NumerovSolution::operator()(double at) const {
  const std::size_t n = x.size();
  if (n < 4) throw InvalidArgument("numerov solution: too few samples to interpolate");
  if (!(at >= x.front() && at <= x.back())) throw InvalidArgument("numerov solution: point outside grid");
  const double h = (x.back() - x.front()) / static_cast<double>(n - 1);
  auto i = static_cast<std::ptrdiff_t>((at - x.front()) / h);
  const auto first = std::clamp<std::ptrdiff_t>(i - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
  double sum = 0.0;
  for (std::ptrdiff_t j = first; j < first + 4; ++j) {
    double basis = 1.0;
    for (std::ptrdiff_t k = first; k < first + 4; ++k)
      if (k != j) basis *= (at - x[k]) / (x[j] - x[k]);
    sum += basis * y[j];
  }
  return sum;
}

NumerovSolution numerov_oracle(const BoundaryValueProblem& bvp, int n_points) {
  bvp.validate();
  if (n_points < 1000) throw InvalidArgument("numerov_oracle: n_points must be >= 1000");

  NumerovSolution fine = integrate(bvp, n_points);
  const NumerovSolution coarse = integrate(bvp, n_points / 2);

  double max_diff = 0.0;
  double max_abs = 0.0;
  for (int i = 0; i < n_points; i += 7) {
    max_diff = std::max(max_diff, std::abs(fine.y[i] - coarse(fine.x[i])));
    max_abs = std::max(max_abs, std::abs(fine.y[i]));
  }
  // Fourth-order global error: e(h) ~ (e(2h) - e(h)) / 15.
  fine.error_estimate = max_abs > 0.0 ? max_diff / max_abs / 15.0 : 0.0;
  return fine;
}

}  // namespace klb
