#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "unidens/grid.hpp"

namespace unidens {

enum class Family {
  gaussian,
  gaussian_right_skew,
  gaussian_left_skew,
  amw1,
  amw2,
  ald,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct SkewNormalParams {
  double mu = 0.0;     // location
  double sigma = 1.0;  // scale, > 0
  double alpha = 0.0;  // shape factor; 0 gives the symmetric normal
};

enum class MWrightVariant { amw1, amw2 };

struct MWrightParams {
  double nu = 0.25;  // shape, in (0, 1/2)
  double skew = 1.0; // lambda for AMW-I (>= 1), alpha for AMW-II (in (0, 2])
  MWrightVariant variant = MWrightVariant::amw1;
};

struct ALDParams {
  double m = 0.0;       // location
  double lambda = 1.0;  // scale, > 0
  double kappa = 1.0;   // asymmetry, > 0

  // Probability mass left of m. Recomputed, never stored.
  double split_p() const { return kappa * kappa / (1.0 + kappa * kappa); }
};

// Thrown when the M-Wright series hits the term cap without converging.
class SeriesError : public std::runtime_error {
 public:
  SeriesError(double x, double nu, double last_term);
  double x() const { return x_; }
  double nu() const { return nu_; }
  double last_term() const { return last_term_; }

 private:
  double x_, nu_, last_term_;
};

double skew_normal_pdf(double x, const SkewNormalParams& p);

// M-Wright function evaluated through the Gamma-reflection series.
// Truncates when a term drops below 1e-15 * (|sum| + 1), capped at 200 terms.
// Throws SeriesError if the cap is hit with the last term above 1e-8.
double mwright(double x, double nu);

struct SeriesResult {
  double value = 0.0;
  bool clamped = false;  // result was below the rounding-noise floor
  int terms = 0;
};
SeriesResult mwright_ex(double x, double nu);

// CDF of the symmetric M-Wright density; value in [0, 1].
double mwright_cdf_factor(double y, double nu);

double amw1_pdf(double x, const MWrightParams& p);
double amw2_pdf(double x, const MWrightParams& p);
double ald_pdf(double x, const ALDParams& p);

// One of the six baseline families with its parameters, domain, and seed.
struct DistributionSpec {
  Family family = Family::gaussian;
  SkewNormalParams sn{};
  MWrightParams mw{};
  ALDParams ald{};
  double lo = -10.0;
  double hi = 10.0;
  std::uint64_t seed = 0;
};

double family_pdf(const DistributionSpec& spec, double x);

// Evaluate the family's PDF on the grid and renormalize discretely so the
// result is an exact discrete probability density.
GriddedDensity make_baseline(const DistributionSpec& spec, const Grid& grid);

}  // namespace unidens
