#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "unidens/baseline.hpp"
#include "unidens/grid.hpp"

namespace unidens {

// Seeded 64-bit generator producing doubles strictly inside (0, 1).
// The stream is fixed by this class, not by library internals, so runs are
// reproducible for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // 53-bit uniform in the open interval (0, 1).
  double open01() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * open01(); }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

inline constexpr const char* kRngIdentity = "mt19937_64/open53";

// Derive a stream seed for a labelled sub-task of a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct SampleSet {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string provenance;
};

// Discrete CDF built from a gridded density: cum[0] = 0 and the last entry
// is forced to exactly 1.
struct DiscreteCDF {
  Grid grid;
  std::vector<double> cum;
};

DiscreteCDF build_cdf(const GriddedDensity& density);

SampleSet inverse_transform_sample(const DiscreteCDF& cdf, int n,
                                   std::uint64_t seed,
                                   std::string provenance = {});

// Quantile lookup for one u in (0, 1), linearly interpolated within the cell.
double inverse_cdf_lookup(const DiscreteCDF& cdf, double u);

// Analytic asymmetric-Laplace sampler via the piecewise inverse CDF.
SampleSet ald_sample(const ALDParams& p, int n, std::uint64_t seed);
double ald_quantile(const ALDParams& p, double u);

}  // namespace unidens
