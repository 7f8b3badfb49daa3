#include "unidens/baseline.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace unidens {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr int kSeriesCap = 200;
constexpr double kSeriesRelTol = 1e-15;
constexpr double kSeriesFailTol = 1e-8;
// Alternating-series results below this multiple of the accumulated
// rounding noise are indistinguishable from zero.
constexpr double kNoiseFloorFactor = 100.0;

double std_normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

struct SeriesAccum {
  double sum = 0.0;
  double sum_abs = 0.0;
  double last_term = 0.0;
  int terms = 0;
  bool converged = false;
};

// Sums terms sign_j * exp(j*log_x - lgamma(j+1) + lgamma(arg_j)) * sin(pi*arg_j)/pi
// where arg_j = nu*j + phase. Shared by the density and CDF series: the
// density uses phase = nu (arg = nu*(j+1)), the CDF inner sum uses phase = 0
// starting from j = 1 with a leading 1 added by the caller.
SeriesAccum reflection_series(double x, double nu, double phase, int j_start,
                              double leading) {
  SeriesAccum acc;
  acc.sum = leading;
  acc.sum_abs = std::abs(leading);
  const double log_x = x > 0.0 ? std::log(x) : 0.0;
  for (int j = j_start; j < kSeriesCap; ++j) {
    const double arg = nu * j + phase;
    double term;
    if (x == 0.0) {
      term = j == 0 ? std::exp(std::lgamma(arg)) * std::sin(kPi * arg) / kPi : 0.0;
    } else {
      const double log_mag = j * log_x - std::lgamma(j + 1.0) + std::lgamma(arg);
      term = std::exp(log_mag) * std::sin(kPi * arg) / kPi;
      if (j % 2 == 1) term = -term;
    }
    if (!std::isfinite(term)) {
      acc.last_term = term;
      acc.terms = j + 1;
      return acc;
    }
    acc.sum += term;
    acc.sum_abs += std::abs(term);
    acc.last_term = term;
    acc.terms = j + 1;
    if (std::abs(term) < kSeriesRelTol * (std::abs(acc.sum) + 1.0)) {
      acc.converged = true;
      return acc;
    }
    if (x == 0.0) {
      acc.converged = true;
      return acc;
    }
  }
  return acc;
}

}  // namespace

SeriesError::SeriesError(double x, double nu, double last_term)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "M-Wright series did not converge within " << kSeriesCap
           << " terms (x=" << x << ", nu=" << nu
           << ", last term magnitude=" << std::abs(last_term) << ")";
        return os.str();
      }()),
      x_(x),
      nu_(nu),
      last_term_(last_term) {}

const char* family_name(Family f) {
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::gaussian_right_skew: return "gaussian-right-skew";
    case Family::gaussian_left_skew: return "gaussian-left-skew";
    case Family::amw1: return "amw1";
    case Family::amw2: return "amw2";
    case Family::ald: return "ald";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::gaussian, Family::gaussian_right_skew,
                   Family::gaussian_left_skew, Family::amw1, Family::amw2,
                   Family::ald}) {
    if (name == family_name(f)) return f;
  }
  throw std::invalid_argument("unknown family: " + name);
}

double skew_normal_pdf(double x, const SkewNormalParams& p) {
  check_finite(x, "x");
  if (!(p.sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  const double z = (x - p.mu) / p.sigma;
  const double phi = kInvSqrt2Pi * std::exp(-0.5 * z * z);
  return 2.0 / p.sigma * phi * std_normal_cdf(p.alpha * z);
}

SeriesResult mwright_ex(double x, double nu) {
  check_finite(x, "x");
  if (x < 0.0) throw std::invalid_argument("mwright requires x >= 0");
  if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("nu must be in (0, 1)");

  const SeriesAccum acc = reflection_series(x, nu, nu, 0, 0.0);
  if (!acc.converged && std::abs(acc.last_term) > kSeriesFailTol) {
    throw SeriesError(x, nu, acc.last_term);
  }
  SeriesResult r;
  r.terms = acc.terms;
  const double noise = std::numeric_limits<double>::epsilon() * acc.sum_abs;
  if (std::abs(acc.sum) < kNoiseFloorFactor * noise) {
    r.value = 0.0;
    r.clamped = true;
  } else {
    r.value = std::max(acc.sum, 0.0);
    r.clamped = acc.sum < 0.0;
  }
  return r;
}

double mwright(double x, double nu) { return mwright_ex(x, nu).value; }

double mwright_cdf_factor(double y, double nu) {
  check_finite(y, "y");
  if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("nu must be in (0, 1)");
  if (y == 0.0) return 0.5;

  const double a = std::abs(y);
  const double sign = y > 0.0 ? 1.0 : -1.0;

  // Beyond this point the tail sum is below ~exp(-c * 150); the series
  // cannot converge under the term cap there and is not needed.
  double tail = 0.0;
  if (std::pow(a, 1.0 / (1.0 - nu)) < 150.0) {
    // S(a) = sum_j (-a)^j / (j! Gamma(1 - nu j)), j=0 term is exactly 1;
    // j >= 1 terms rewritten with the reflection formula.
    const SeriesAccum acc = reflection_series(a, nu, 0.0, 1, 1.0);
    if (!acc.converged && std::abs(acc.last_term) > kSeriesFailTol) {
      throw SeriesError(a, nu, acc.last_term);
    }
    const double noise = std::numeric_limits<double>::epsilon() * acc.sum_abs;
    tail = std::abs(acc.sum) < kNoiseFloorFactor * noise ? 0.0 : acc.sum;
  }

  const double v = 0.5 * (1.0 + sign * (1.0 - tail));
  return std::min(1.0, std::max(0.0, v));
}

double amw1_pdf(double x, const MWrightParams& p) {
  if (p.variant != MWrightVariant::amw1) {
    throw std::invalid_argument("amw1_pdf called with non-AMW-I parameters");
  }
  return mwright(std::abs(x), p.nu) * mwright_cdf_factor(p.skew * x, p.nu);
}

double amw2_pdf(double x, const MWrightParams& p) {
  if (p.variant != MWrightVariant::amw2) {
    throw std::invalid_argument("amw2_pdf called with non-AMW-II parameters");
  }
  const double alpha = p.skew;
  const double scale = alpha / (1.0 + alpha * alpha);
  const double m = x >= 0.0 ? mwright(alpha * x, p.nu) : mwright(-x / alpha, p.nu);
  return scale * m;
}

double ald_pdf(double x, const ALDParams& p) {
  check_finite(x, "x");
  if (!(p.lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(p.kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
  const double norm = p.lambda / (p.kappa + 1.0 / p.kappa);
  const double d = x - p.m;
  const double expo = d >= 0.0 ? -p.lambda * p.kappa * d : p.lambda / p.kappa * d;
  return norm * std::exp(expo);
}

double family_pdf(const DistributionSpec& spec, double x) {
  switch (spec.family) {
    case Family::gaussian:
    case Family::gaussian_right_skew:
    case Family::gaussian_left_skew:
      return skew_normal_pdf(x, spec.sn);
    case Family::amw1:
      return amw1_pdf(x, spec.mw);
    case Family::amw2:
      return amw2_pdf(x, spec.mw);
    case Family::ald:
      return ald_pdf(x, spec.ald);
  }
  throw std::logic_error("unreachable family");
}

GriddedDensity make_baseline(const DistributionSpec& spec, const Grid& grid) {
  GriddedDensity d;
  d.grid = grid;
  d.values.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const double v = family_pdf(spec, grid.point(i));
    if (!std::isfinite(v) || v < 0.0) {
      std::ostringstream os;
      os << "family " << family_name(spec.family) << " produced invalid density "
         << v << " at x=" << grid.point(i);
      throw std::domain_error(os.str());
    }
    d.values[i] = v;
  }
  return renormalize(std::move(d));
}

}  // namespace unidens
