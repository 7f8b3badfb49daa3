#pragma once

#include <optional>
#include <span>
#include <vector>

#include "unidens/grid.hpp"

namespace unidens {

// --- moments ---------------------------------------------------------------

double sample_mean(std::span<const double> xs);
// Population convention (denominator N) throughout.
double sample_stddev(std::span<const double> xs);

// Quantile with linear interpolation between order statistics; input sorted.
double interpolated_quantile(std::span<const double> sorted, double q);

// --- normal fit ------------------------------------------------------------

struct NormalFit {
  double mu = 0.0;
  double sigma = 1.0;
};

NormalFit fit_normal(std::span<const double> samples);
GriddedDensity normal_pdf(const NormalFit& fit, const Grid& grid);

// --- Pearson discriminant and Type I (beta) fit -----------------------------

struct PearsonMoments {
  double mu3 = 0.0;        // 3rd central moment
  double mu4 = 0.0;        // 4th central moment
  double beta1 = 0.0;      // squared skewness
  double beta2 = 0.0;      // kurtosis
  double kappa_disc = 0.0; // beta2 - 1.5*beta1 - 3
};

PearsonMoments pearson_discriminant(std::span<const double> samples);

struct BetaFit {
  double delta1 = 1.0;     // lower shape
  double delta2 = 1.0;     // upper shape
  double alpha_loc = 0.0;  // support start
  double beta_scale = 1.0; // support width
};

struct Pearson1Fit {
  BetaFit beta;
  bool converged = true;   // false: returned the moment-matched initial fit
  bool type1 = true;       // discriminant was negative
  double kappa_disc = 0.0;
};

// Four-parameter beta fit: moment-matched start, refined by a derivative-free
// local search on the log-likelihood.
Pearson1Fit fit_pearson1_params(std::span<const double> samples);

GriddedDensity beta_pdf_on_grid(const BetaFit& fit, const Grid& grid);
GriddedDensity fit_pearson1(std::span<const double> samples, const Grid& grid);

// --- histogram density estimation (smoothed) --------------------------------

struct HDEConfig {
  std::optional<int> n_bins;    // default: Freedman-Diaconis
  int min_kernel_size = 5;      // forced odd
  double smoothing_h = 2.5;     // filter width in bin units
};

// Freedman-Diaconis bin count; falls back to ceil(log2 N) + 1 when IQR = 0.
int freedman_diaconis_bins(std::span<const double> samples);

// Normalized discrete Gaussian filter of size m (forced odd): weights sum to 1.
std::vector<double> gaussian_kernel_weights(int m, double h);

GriddedDensity hde_fit(std::span<const double> samples, const HDEConfig& cfg,
                       const Grid& grid);

// --- kernel density estimation ----------------------------------------------

struct KDEConfig {
  std::optional<double> bandwidth;  // default: Scott's rule
};

struct KDEModel {
  std::vector<double> samples;
  double bandwidth = 1.0;
};

double scott_bandwidth(std::span<const double> samples);

KDEModel kde_fit(std::span<const double> samples, const KDEConfig& cfg = {});

// Gaussian-kernel density at the query points. The grid is processed in
// fixed-size chunks; the N x M kernel matrix is never materialized and the
// result is independent of the chunk size.
std::vector<double> kde_eval_points(const KDEModel& model,
                                    std::span<const double> xs,
                                    int chunk = 1024);
GriddedDensity kde_eval(const KDEModel& model, const Grid& grid,
                        int chunk = 1024);

}  // namespace unidens
