#include "unidens/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace unidens {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 step over master ^ f(index)
  std::uint64_t z = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

DiscreteCDF build_cdf(const GriddedDensity& density) {
  if (!density.normalized) {
    throw std::invalid_argument("build_cdf requires a normalized density");
  }
  const int n = density.grid.n;
  const double dx = density.grid.step();
  DiscreteCDF cdf;
  cdf.grid = density.grid;
  cdf.cum.resize(n);
  cdf.cum[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    cdf.cum[i] = cdf.cum[i - 1] + density.values[i - 1] * dx;
  }
  const double total = cdf.cum[n - 1];
  if (!(total > 0.0)) throw std::domain_error("CDF has zero total mass");
  for (double& c : cdf.cum) c /= total;
  cdf.cum[n - 1] = 1.0;
  return cdf;
}

double inverse_cdf_lookup(const DiscreteCDF& cdf, double u) {
  // First index with cum > u brackets the cell [j, j+1).
  const auto it = std::upper_bound(cdf.cum.begin(), cdf.cum.end(), u);
  if (it == cdf.cum.begin()) return cdf.grid.point(0);
  if (it == cdf.cum.end()) return cdf.grid.point(cdf.grid.n - 1);
  const int j = static_cast<int>(it - cdf.cum.begin()) - 1;
  const double c0 = cdf.cum[j];
  const double c1 = cdf.cum[j + 1];
  const double frac = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
  return cdf.grid.point(j) + frac * cdf.grid.step();
}

SampleSet inverse_transform_sample(const DiscreteCDF& cdf, int n,
                                   std::uint64_t seed,
                                   std::string provenance) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  Rng rng(seed);
  SampleSet out;
  out.seed = seed;
  out.provenance = std::move(provenance);
  out.values.resize(n);
  for (int i = 0; i < n; ++i) {
    out.values[i] = inverse_cdf_lookup(cdf, rng.open01());
  }
  return out;
}

double ald_quantile(const ALDParams& p, double u) {
  const double split = p.split_p();
  if (u >= split) {
    return p.m - 1.0 / (p.lambda * p.kappa) * std::log((1.0 - u) / (1.0 - split));
  }
  return p.m + p.kappa / p.lambda * std::log(u / split);
}

SampleSet ald_sample(const ALDParams& p, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  if (!(p.lambda > 0.0) || !(p.kappa > 0.0)) {
    throw std::invalid_argument("ALD parameters require lambda > 0 and kappa > 0");
  }
  Rng rng(seed);
  SampleSet out;
  out.seed = seed;
  out.provenance = "ald";
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = ald_quantile(p, rng.open01());
  return out;
}

}  // namespace unidens
