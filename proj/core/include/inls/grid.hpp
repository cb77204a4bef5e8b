#pragma once

#include <cstddef>
#include <vector>

#include "inls/errors.hpp"

namespace inls {

enum class GridKind { cartesian, radial };

// Uniform sampling geometry.
//
// cartesian: box [-L, L)^dims, n samples per axis, spacing h = 2L/n.
//   offset = true shifts every axis by half a cell so no sample hits the
//   origin (keeps |x|^{-b} finite without regularization).
// radial: r in (0, L], n samples r_j = (j+1/2) h with h = L/n, always
//   offset; ambient_N carries the ambient dimension (3..5) for measures.
struct GridSpec {
  GridKind kind = GridKind::cartesian;
  int dims = 1;       // cartesian axes (1..3); 1 for radial
  int ambient_N = 3;  // radial only
  int n = 0;          // points per axis (power of two)
  double L = 0.0;     // half width
  bool offset = true;

  double h() const { return kind == GridKind::radial ? L / n : 2.0 * L / n; }
  std::size_t total_points() const;
  double cell_volume() const;  // h^dims (cartesian), h (radial; measure applied separately)

  // Coordinate of sample i along one axis (cartesian) or r_j (radial).
  double coord(int i) const;
  // FFT-ordered wavenumbers k_m = (pi/L) * {0..n/2-1, -n/2..-1} (cartesian).
  std::vector<double> wavenumbers() const;
  std::vector<double> coords() const;

  // Squared distance to the origin of the sample with per-axis indices idx.
  double radius_sq(const int* idx) const;

  bool operator==(const GridSpec&) const = default;
};

// Points-per-process guard; make_grid rejects grids above this.
std::size_t grid_memory_cap();
void set_grid_memory_cap(std::size_t points);

GridSpec make_grid(int dims, int points_per_axis, double L, bool offset = true);
GridSpec make_radial_grid(int ambient_N, int points, double L);

}  // namespace inls
