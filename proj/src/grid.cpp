#include "unidens/grid.hpp"

#include <cmath>

namespace unidens {

std::vector<double> Grid::points() const {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = point(i);
  return xs;
}

Grid make_grid(double lo, double hi, int n) {
  if (!(hi > lo)) throw std::invalid_argument("grid requires hi > lo");
  if (n < 2) throw std::invalid_argument("grid requires n >= 2");
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("grid bounds must be finite");
  }
  return Grid{lo, hi, n};
}

double grid_mass(const GriddedDensity& d) {
  double s = 0.0;
  for (double v : d.values) s += v;
  return s * d.grid.step();
}

GriddedDensity renormalize(GriddedDensity d) {
  const double mass = grid_mass(d);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::domain_error("cannot renormalize: density mass on grid is zero or invalid");
  }
  for (double& v : d.values) v /= mass;
  d.normalized = true;
  return d;
}

}  // namespace unidens
