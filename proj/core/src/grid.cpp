#include "inls/grid.hpp"

#include <atomic>
#include <cmath>
#include <string>

namespace inls {

namespace {
std::atomic<std::size_t> g_mem_cap{std::size_t{1} << 25};  // 33.5M points

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

std::size_t grid_memory_cap() { return g_mem_cap.load(); }
void set_grid_memory_cap(std::size_t points) { g_mem_cap.store(points); }

std::size_t GridSpec::total_points() const {
  std::size_t t = 1;
  for (int d = 0; d < dims; ++d) t *= static_cast<std::size_t>(n);
  return t;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dims; ++d) v *= h();
  return v;
}

double GridSpec::coord(int i) const {
  if (kind == GridKind::radial) return (i + 0.5) * h();
  const double shift = offset ? 0.5 : 0.0;
  return -L + (i + shift) * h();
}

std::vector<double> GridSpec::coords() const {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = coord(i);
  return x;
}

std::vector<double> GridSpec::wavenumbers() const {
  std::vector<double> k(n);
  const double dk = M_PI / L;
  for (int m = 0; m < n; ++m) k[m] = dk * (m < n / 2 ? m : m - n);
  return k;
}

double GridSpec::radius_sq(const int* idx) const {
  double s = 0.0;
  for (int d = 0; d < dims; ++d) {
    const double c = coord(idx[d]);
    s += c * c;
  }
  return s;
}

GridSpec make_grid(int dims, int points_per_axis, double L, bool offset) {
  if (dims < 1 || dims > 3) throw parameter_error("make_grid: dims must be 1..3");
  if (!is_pow2(points_per_axis))
    throw parameter_error("make_grid: points per axis must be a power of two, got " +
                          std::to_string(points_per_axis));
  if (!(L > 0.0)) throw parameter_error("make_grid: L > 0 required");
  GridSpec g;
  g.kind = GridKind::cartesian;
  g.dims = dims;
  g.ambient_N = dims;
  g.n = points_per_axis;
  g.L = L;
  g.offset = offset;
  if (g.total_points() > grid_memory_cap())
    throw parameter_error("make_grid: grid exceeds configured memory cap");
  return g;
}

GridSpec make_radial_grid(int ambient_N, int points, double L) {
  if (ambient_N < 3 || ambient_N > 5)
    throw parameter_error("make_radial_grid: ambient N must be 3..5");
  if (!is_pow2(points)) throw parameter_error("make_radial_grid: points must be a power of two");
  if (!(L > 0.0)) throw parameter_error("make_radial_grid: L > 0 required");
  GridSpec g;
  g.kind = GridKind::radial;
  g.dims = 1;
  g.ambient_N = ambient_N;
  g.n = points;
  g.L = L;
  g.offset = true;
  return g;
}

}  // namespace inls
