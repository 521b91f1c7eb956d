#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <string>
#include <vector>

#include "klb/hydrogenic.hpp"

namespace klb {

enum class GridKind { Uniform, ChebyshevLobatto };

std::string to_string(GridKind kind);
GridKind grid_kind_from_string(const std::string& name);

/// Strictly increasing sample points on [a, b] with both endpoints included.
struct Grid {
  GridKind kind = GridKind::Uniform;
  std::vector<double> points;
  double a = 0.0;
  double b = 1.0;

  std::size_t size() const { return points.size(); }
  /// Throws InvalidArgument unless the points are strictly increasing,
  /// start at a and end at b.
  void validate() const;
};

Grid make_grid(GridKind kind, int n_samples, double a, double b);

/// What a sample matrix column holds: R_nl(x) or the reduced function x R_nl(x).
enum class Representation { R, rR };

std::string to_string(Representation rep);
Representation representation_from_string(const std::string& name);

/// N_s x N_w matrix of wavefunction samples: rows follow the grid, columns
/// follow the family.
struct SampleMatrix {
  Eigen::MatrixXd values;
  Grid grid;
  RadialFamily family;
  Representation representation = Representation::rR;
};

SampleMatrix build_sample_matrix(const RadialFamily& family, const Grid& grid,
                                 Representation rep = Representation::rR);

/// CSV: header "x,orb_1s,orb_2s,...", one row per grid point.
void write_csv(std::ostream& out, const SampleMatrix& samples);

}  // namespace klb
