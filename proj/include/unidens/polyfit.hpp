#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace unidens {

// Polynomial coefficients in ascending order (c0 + c1 x + ... + cP x^P).
struct PolyCoeffs {
  std::vector<double> c;
  int order() const { return static_cast<int>(c.size()) - 1; }
};

double poly_eval(const PolyCoeffs& p, double x);
std::vector<double> poly_eval(const PolyCoeffs& p, std::span<const double> xs);

// x -> (x - offset) / scale, used to standardize fit inputs to [-1, 1].
struct AffineMap {
  double offset = 0.0;
  double scale = 1.0;
  double to_unit(double x) const { return (x - offset) / scale; }
};

AffineMap unit_map(double lo, double hi);

// Signals a non-positive pivot in the Cholesky factorization of the normal
// equations: the fit is ill-conditioned at this order.
class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(int order, int pivot);
  int order() const { return order_; }
  int pivot() const { return pivot_; }

 private:
  int order_, pivot_;
};

// Least-squares polynomial fit stored against the standardized domain.
struct PolyFit {
  PolyCoeffs coeffs;  // coefficients in the mapped (unit) domain
  AffineMap map;

  double eval(double x) const { return poly_eval(coeffs, map.to_unit(x)); }
  std::vector<double> eval(std::span<const double> xs) const;
};

// Solve the normal equations (X^T X) C = X^T Y by unpivoted Cholesky, with
// xs standardized to [-1, 1] internally. `ridge` adds an optional diagonal
// term (default 0, i.e. plain normal equations).
PolyFit lstsq_cholesky(std::span<const double> xs, std::span<const double> ys,
                       int order, double ridge = 0.0);

// Same solve with a caller-supplied standardization map (no internal rescale).
PolyCoeffs lstsq_cholesky_mapped(std::span<const double> xs,
                                 std::span<const double> ys, int order,
                                 const AffineMap& map, double ridge = 0.0);

}  // namespace unidens
