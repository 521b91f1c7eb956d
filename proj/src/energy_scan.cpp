#include <cmath>
#include <limits>

#include "klb/error.hpp"
#include "klb/spectral.hpp"

namespace klb {
namespace {

ScanPoint scan_point(const CollocationProblem& templ, double E, std::span<const double> dense_points) {
  ScanPoint point;
  point.E = E;
  try {
    CollocationProblem problem = templ;
    problem.bvp.E = E;
    point.residual_norm = residual_norm(solve(problem), dense_points);
  } catch (const std::exception& e) {
    point.status = ScanStatus::Failed;
    point.residual_norm = std::numeric_limits<double>::quiet_NaN();
    point.message = e.what();
  }
  return point;
}

void check_scan_arguments(double E_lo, double E_hi, int n_steps, std::span<const double> dense_points) {
  if (!(E_lo < E_hi)) throw InvalidArgument("energy_scan: requires E_lo < E_hi");
  if (n_steps < 3) throw InvalidArgument("energy_scan: n_steps must be >= 3");
  if (dense_points.empty()) throw InvalidArgument("energy_scan: no residual evaluation points");
}

double scan_energy(double E_lo, double E_hi, int n_steps, int k) {
  return k == n_steps - 1 ? E_hi : E_lo + k * (E_hi - E_lo) / (n_steps - 1);
}

void locate_minimum(EnergyScan& scan) {
  const auto& t = scan.table;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k].status != ScanStatus::Ok) continue;
    if (!scan.found || t[k].residual_norm < t[scan.argmin_index].residual_norm) {
      scan.argmin_index = k;
      scan.found = true;
    }
  }
  if (!scan.found) return;
  const std::size_t k = scan.argmin_index;
  scan.argmin_E = t[k].E;
  scan.refined_E = scan.argmin_E;
  scan.boundary_minimum = k == 0 || k + 1 == t.size();
  if (scan.boundary_minimum) return;
  if (t[k - 1].status != ScanStatus::Ok || t[k + 1].status != ScanStatus::Ok) return;
  scan.refined_E = parabolic_vertex(t[k - 1].E, t[k - 1].residual_norm, t[k].E, t[k].residual_norm,
                                    t[k + 1].E, t[k + 1].residual_norm);
}

}  // namespace

double parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double d0 = (x1 - x0) * (y1 - y2);
  const double d2 = (x1 - x2) * (y1 - y0);
  const double denominator = d0 - d2;
  if (denominator == 0.0) return x1;  // collinear: no curvature to refine with
  return x1 - 0.5 * ((x1 - x0) * d0 - (x1 - x2) * d2) / denominator;
}

EnergyScan energy_scan(const CollocationProblem& templ, double E_lo, double E_hi, int n_steps,
                       std::span<const double> dense_points) {
  check_scan_arguments(E_lo, E_hi, n_steps, dense_points);
  EnergyScan scan;
  scan.table.resize(static_cast<std::size_t>(n_steps));
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < n_steps; ++k)
    scan.table[static_cast<std::size_t>(k)] = scan_point(templ, scan_energy(E_lo, E_hi, n_steps, k), dense_points);
  locate_minimum(scan);
  return scan;
}

EnergyScan energy_scan_serial(const CollocationProblem& templ, double E_lo, double E_hi, int n_steps,
                              std::span<const double> dense_points) {
  check_scan_arguments(E_lo, E_hi, n_steps, dense_points);
  EnergyScan scan;
  for (int k = 0; k < n_steps; ++k)
    scan.table.push_back(scan_point(templ, scan_energy(E_lo, E_hi, n_steps, k), dense_points));
  locate_minimum(scan);
  return scan;
}

}  // namespace klb
