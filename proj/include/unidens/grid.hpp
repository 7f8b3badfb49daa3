#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace unidens {

// Uniform evaluation grid on [lo, hi] with n >= 2 points.
struct Grid {
  double lo = 0.0;
  double hi = 1.0;
  int n = 2;

  double step() const { return (hi - lo) / (n - 1); }
  double point(int i) const { return lo + step() * i; }
  std::vector<double> points() const;

  bool operator==(const Grid&) const = default;
};

Grid make_grid(double lo, double hi, int n);

// Density values sampled on a grid. `normalized` means the discrete mass
// sum(values) * step equals 1 (within 1e-9).
struct GriddedDensity {
  Grid grid;
  std::vector<double> values;
  bool normalized = false;
};

// sum(values) * step
double grid_mass(const GriddedDensity& d);

// Rescale values so that sum(values) * step == 1 and set the flag.
// Throws std::domain_error if the density is identically zero on the grid.
GriddedDensity renormalize(GriddedDensity d);

}  // namespace unidens
