#include "unidens/polyfit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace unidens {

double poly_eval(const PolyCoeffs& p, double x) {
  double acc = 0.0;
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> poly_eval(const PolyCoeffs& p, std::span<const double> xs) {
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = poly_eval(p, xs[i]);
  return ys;
}

AffineMap unit_map(double lo, double hi) {
  AffineMap m;
  m.offset = 0.5 * (lo + hi);
  m.scale = 0.5 * (hi - lo);
  if (m.scale <= 0.0) m.scale = 1.0;
  return m;
}

IllConditionedError::IllConditionedError(int order, int pivot)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "Cholesky factorization of the normal equations broke down at "
              "pivot "
           << pivot << " for polynomial order " << order;
        return os.str();
      }()),
      order_(order),
      pivot_(pivot) {}

std::vector<double> PolyFit::eval(std::span<const double> xs) const {
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = eval(xs[i]);
  return ys;
}

namespace {

// In-place Cholesky solve of the (P+1)x(P+1) system A c = b. A is given in
// packed row-major form and is overwritten by its L factor.
std::vector<double> cholesky_solve(std::vector<double>& a, std::vector<double> b,
                                   int dim, int order) {
  for (int k = 0; k < dim; ++k) {
    double pivot = a[k * dim + k];
    for (int j = 0; j < k; ++j) pivot -= a[k * dim + j] * a[k * dim + j];
    if (!(pivot > 0.0) || !std::isfinite(pivot)) {
      throw IllConditionedError(order, k);
    }
    const double lkk = std::sqrt(pivot);
    a[k * dim + k] = lkk;
    for (int i = k + 1; i < dim; ++i) {
      double s = a[i * dim + k];
      for (int j = 0; j < k; ++j) s -= a[i * dim + j] * a[k * dim + j];
      a[i * dim + k] = s / lkk;
    }
  }
  // L z = b
  for (int i = 0; i < dim; ++i) {
    double s = b[i];
    for (int j = 0; j < i; ++j) s -= a[i * dim + j] * b[j];
    b[i] = s / a[i * dim + i];
  }
  // L^T c = z
  for (int i = dim - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < dim; ++j) s -= a[j * dim + i] * b[j];
    b[i] = s / a[i * dim + i];
  }
  return b;
}

}  // namespace

PolyCoeffs lstsq_cholesky_mapped(std::span<const double> xs,
                                 std::span<const double> ys, int order,
                                 const AffineMap& map, double ridge) {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("xs and ys must have equal length");
  }
  const int dim = order + 1;
  if (static_cast<int>(xs.size()) < dim) {
    throw std::invalid_argument("need at least order+1 points for the fit");
  }

  // X^T X has entries sum_i t_i^(r+c); accumulate the power sums once.
  std::vector<double> pow_sum(2 * order + 1, 0.0);
  std::vector<double> rhs(dim, 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double t = map.to_unit(xs[i]);
    double tp = 1.0;
    for (int k = 0; k <= 2 * order; ++k) {
      pow_sum[k] += tp;
      if (k <= order) rhs[k] += tp * ys[i];
      tp *= t;
    }
  }

  std::vector<double> a(dim * dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a[r * dim + c] = pow_sum[r + c];
    a[r * dim + r] += ridge;
  }

  PolyCoeffs out;
  out.c = cholesky_solve(a, std::move(rhs), dim, order);
  return out;
}

PolyFit lstsq_cholesky(std::span<const double> xs, std::span<const double> ys,
                       int order, double ridge) {
  if (xs.empty()) throw std::invalid_argument("empty fit input");
  auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  if (*lo_it == *hi_it) {
    throw std::invalid_argument("fit inputs must not all be identical");
  }
  PolyFit fit;
  fit.map = unit_map(*lo_it, *hi_it);
  fit.coeffs = lstsq_cholesky_mapped(xs, ys, order, fit.map, ridge);
  return fit;
}

}  // namespace unidens
