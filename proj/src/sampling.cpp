#include "klb/sampling.hpp"

#include <cmath>
#include <numbers>

#include "klb/csv.hpp"
#include "klb/error.hpp"
#include "klb/kernels.hpp"

namespace klb {

std::string to_string(GridKind kind) {
  return kind == GridKind::Uniform ? "uniform" : "chebyshev-lobatto";
}

GridKind grid_kind_from_string(const std::string& name) {
  if (name == "uniform") return GridKind::Uniform;
  if (name == "chebyshev-lobatto" || name == "chebyshev") return GridKind::ChebyshevLobatto;
  throw InvalidArgument("unknown grid kind '" + name + "'");
}

std::string to_string(Representation rep) { return rep == Representation::R ? "R" : "rR"; }

Representation representation_from_string(const std::string& name) {
  if (name == "R") return Representation::R;
  if (name == "rR") return Representation::rR;
  throw InvalidArgument("unknown representation '" + name + "' (expected R or rR)");
}

void Grid::validate() const {
  if (points.size() < 2) throw InvalidArgument("grid: needs at least 2 points");
  if (!(a < b)) throw InvalidArgument("grid: requires a < b");
  if (points.front() != a || points.back() != b) throw InvalidArgument("grid: endpoints must equal a and b");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i] > points[i - 1])) throw InvalidArgument("grid: points must be strictly increasing");
}

Grid make_grid(GridKind kind, int n_samples, double a, double b) {
  if (n_samples < 2) throw InvalidArgument("make_grid: N_s must be >= 2");
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("make_grid: requires a < b");

  Grid grid{kind, std::vector<double>(static_cast<std::size_t>(n_samples)), a, b};
  const int last = n_samples - 1;
  for (int j = 0; j <= last; ++j) {
    double x;
    if (kind == GridKind::Uniform) {
      x = a + j * (b - a) / last;
    } else {
      // -cos(j pi / last) written as an odd sine so mirrored nodes stay mirrored.
      const double t = std::sin(std::numbers::pi * (2 * j - last) / (2.0 * last));
      x = 0.5 * (a + b) + 0.5 * (b - a) * t;
    }
    grid.points[j] = x;
  }
  grid.points.front() = a;
  grid.points.back() = b;
  grid.validate();
  return grid;
}

SampleMatrix build_sample_matrix(const RadialFamily& family, const Grid& grid, Representation rep) {
  if (family.empty()) throw InvalidArgument("build_sample_matrix: empty family");
  for (const auto& orb : family) orb.validate();
  grid.validate();
  if (grid.a < 0.0) throw InvalidArgument("build_sample_matrix: radial grid must start at r >= 0");
  return SampleMatrix{kernels::fill_samples(family, grid.points, rep), grid, family, rep};
}

void write_csv(std::ostream& out, const SampleMatrix& samples) {
  csv::Writer writer(out);
  std::vector<std::string> header{"x"};
  for (const auto& orb : samples.family) header.push_back("orb_" + orb.label());
  writer.header(header);
  std::vector<double> row(samples.family.size() + 1);
  for (std::size_t i = 0; i < samples.grid.size(); ++i) {
    row[0] = samples.grid.points[i];
    for (std::size_t j = 0; j < samples.family.size(); ++j)
      row[j + 1] = samples.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    writer.row(row);
  }
}

}  // namespace klb
