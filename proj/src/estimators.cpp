#include "unidens/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace unidens {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

void require_samples(std::span<const double> xs, std::size_t min_n,
                     const char* who) {
  if (xs.size() < min_n) {
    throw std::invalid_argument(std::string(who) + " requires at least " +
                                std::to_string(min_n) + " samples");
  }
  for (double x : xs) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(who) + ": non-finite sample");
    }
  }
}

int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Nelder-Mead minimizer; returns true when the simplex collapsed below tol
// within the evaluation budget.
bool nelder_mead(std::vector<double>& x0, const std::vector<double>& steps,
                 const std::function<double(const std::vector<double>&)>& f,
                 int max_evals, double tol) {
  const std::size_t dim = x0.size();
  std::vector<std::vector<double>> pts(dim + 1, x0);
  std::vector<double> fv(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += steps[i];
  int evals = 0;
  for (std::size_t i = 0; i <= dim; ++i) {
    fv[i] = f(pts[i]);
    ++evals;
  }

  std::vector<std::size_t> idx(dim + 1);
  while (evals < max_evals) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = idx[0], worst = idx[dim], second = idx[dim - 1];
    if (std::abs(fv[worst] - fv[best]) <= tol * (std::abs(fv[best]) + tol)) {
      x0 = pts[best];
      return true;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < dim; ++d) centroid[d] += pts[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double t) {
      std::vector<double> p(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        p[d] = centroid[d] + t * (pts[worst][d] - centroid[d]);
      }
      return p;
    };

    auto refl = blend(-1.0);
    double f_refl = f(refl);
    ++evals;
    if (f_refl < fv[idx[0]]) {
      auto expd = blend(-2.0);
      double f_expd = f(expd);
      ++evals;
      if (f_expd < f_refl) {
        pts[worst] = std::move(expd);
        fv[worst] = f_expd;
      } else {
        pts[worst] = std::move(refl);
        fv[worst] = f_refl;
      }
    } else if (f_refl < fv[second]) {
      pts[worst] = std::move(refl);
      fv[worst] = f_refl;
    } else {
      auto contr = blend(f_refl < fv[worst] ? -0.5 : 0.5);
      double f_contr = f(contr);
      ++evals;
      if (f_contr < std::min(f_refl, fv[worst])) {
        pts[worst] = std::move(contr);
        fv[worst] = f_contr;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == idx[0]) continue;
          for (std::size_t d = 0; d < dim; ++d) {
            pts[i][d] = 0.5 * (pts[i][d] + pts[idx[0]][d]);
          }
          fv[i] = f(pts[i]);
          ++evals;
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= dim; ++i) {
    if (fv[i] < fv[best]) best = i;
  }
  x0 = pts[best];
  return false;
}

}  // namespace

double sample_mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  const double mu = sample_mean(xs);
  double s2 = 0.0;
  for (double x : xs) s2 += (x - mu) * (x - mu);
  return std::sqrt(s2 / static_cast<double>(xs.size()));
}

double interpolated_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

NormalFit fit_normal(std::span<const double> samples) {
  require_samples(samples, 2, "fit_normal");
  NormalFit fit;
  fit.mu = sample_mean(samples);
  fit.sigma = sample_stddev(samples);
  if (!(fit.sigma > 0.0)) {
    throw std::domain_error("fit_normal: samples have zero variance");
  }
  return fit;
}

GriddedDensity normal_pdf(const NormalFit& fit, const Grid& grid) {
  GriddedDensity d;
  d.grid = grid;
  d.values.resize(grid.n);
  const double inv = 1.0 / fit.sigma;
  for (int i = 0; i < grid.n; ++i) {
    const double z = (grid.point(i) - fit.mu) * inv;
    d.values[i] = kInvSqrt2Pi * inv * std::exp(-0.5 * z * z);
  }
  return d;
}

PearsonMoments pearson_discriminant(std::span<const double> samples) {
  require_samples(samples, 4, "pearson_discriminant");
  const double mu = sample_mean(samples);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : samples) {
    const double d = x - mu;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double n = static_cast<double>(samples.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) {
    throw std::domain_error("pearson_discriminant: zero variance");
  }
  PearsonMoments pm;
  pm.mu3 = m3;
  pm.mu4 = m4;
  const double sigma = std::sqrt(m2);
  const double skew = m3 / (sigma * sigma * sigma);
  pm.beta1 = skew * skew;
  pm.beta2 = m4 / (m2 * m2);
  pm.kappa_disc = pm.beta2 - 1.5 * pm.beta1 - 3.0;
  return pm;
}

Pearson1Fit fit_pearson1_params(std::span<const double> samples) {
  require_samples(samples, 4, "fit_pearson1");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double xmin = *lo_it, xmax = *hi_it;
  const double range = xmax - xmin;
  if (!(range > 0.0)) {
    throw std::domain_error("fit_pearson1: samples have zero range");
  }

  Pearson1Fit result;
  result.kappa_disc = pearson_discriminant(samples).kappa_disc;
  result.type1 = result.kappa_disc < 0.0;

  const double loc0 = xmin - 0.01 * range;
  const double scale0 = 1.02 * range;

  // Moment-matched shapes on the rescaled samples.
  double m = 0.0, v = 0.0;
  for (double x : samples) m += (x - loc0) / scale0;
  m /= static_cast<double>(samples.size());
  for (double x : samples) {
    const double u = (x - loc0) / scale0;
    v += (u - m) * (u - m);
  }
  v /= static_cast<double>(samples.size());
  const double common = std::max(m * (1.0 - m) / std::max(v, 1e-12) - 1.0, 1e-3);
  const double d1_0 = std::max(m * common, 1e-3);
  const double d2_0 = std::max((1.0 - m) * common, 1e-3);

  const double n = static_cast<double>(samples.size());
  auto neg_loglik = [&](const std::vector<double>& th) {
    const double d1 = std::exp(th[0]);
    const double d2 = std::exp(th[1]);
    const double loc = th[2];
    const double scale = std::exp(th[3]);
    if (loc > xmin || loc + scale < xmax) return 1e18;  // support must cover data
    if (d1 > 1e4 || d2 > 1e4) return 1e18;
    double ll = -n * (log_beta(d1, d2) + std::log(scale));
    for (double x : samples) {
      const double u = (x - loc) / scale;
      if (!(u > 0.0 && u < 1.0)) return 1e18;
      ll += (d1 - 1.0) * std::log(u) + (d2 - 1.0) * std::log1p(-u);
    }
    return -ll;
  };

  std::vector<double> theta = {std::log(d1_0), std::log(d2_0), loc0,
                               std::log(scale0)};
  std::vector<double> steps = {0.25, 0.25, 0.02 * range, 0.1};
  result.converged = nelder_mead(theta, steps, neg_loglik, 600, 1e-9);

  result.beta.delta1 = std::exp(theta[0]);
  result.beta.delta2 = std::exp(theta[1]);
  result.beta.alpha_loc = theta[2];
  result.beta.beta_scale = std::exp(theta[3]);
  if (!result.converged) {
    // fall back to the moment-matched start
    result.beta = BetaFit{d1_0, d2_0, loc0, scale0};
  }
  return result;
}

GriddedDensity beta_pdf_on_grid(const BetaFit& fit, const Grid& grid) {
  GriddedDensity d;
  d.grid = grid;
  d.values.assign(grid.n, 0.0);
  const double log_norm = -log_beta(fit.delta1, fit.delta2) - std::log(fit.beta_scale);
  for (int i = 0; i < grid.n; ++i) {
    const double u = (grid.point(i) - fit.alpha_loc) / fit.beta_scale;
    if (u <= 0.0 || u >= 1.0) continue;
    d.values[i] = std::exp(log_norm + (fit.delta1 - 1.0) * std::log(u) +
                           (fit.delta2 - 1.0) * std::log1p(-u));
  }
  return d;
}

GriddedDensity fit_pearson1(std::span<const double> samples, const Grid& grid) {
  return beta_pdf_on_grid(fit_pearson1_params(samples).beta, grid);
}

int freedman_diaconis_bins(std::span<const double> samples) {
  require_samples(samples, 2, "freedman_diaconis_bins");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double range = sorted.back() - sorted.front();
  if (!(range > 0.0)) {
    throw std::domain_error("bin count needs at least two distinct samples");
  }
  const double iqr = interpolated_quantile(sorted, 0.75) -
                     interpolated_quantile(sorted, 0.25);
  const double n = static_cast<double>(samples.size());
  if (!(iqr > 0.0)) {
    return static_cast<int>(std::ceil(std::log2(n))) + 1;
  }
  const double width = 2.0 * iqr / std::cbrt(n);
  return std::max(1, static_cast<int>(std::ceil(range / width)));
}

std::vector<double> gaussian_kernel_weights(int m, double h) {
  if (m < 1) throw std::invalid_argument("kernel size must be >= 1");
  if (!(h > 0.0)) throw std::invalid_argument("smoothing parameter must be > 0");
  if (m % 2 == 0) ++m;
  const int half = m / 2;
  std::vector<double> w(m);
  double total = 0.0;
  for (int k = -half; k <= half; ++k) {
    const double t = static_cast<double>(k) / h;
    w[k + half] = std::exp(-0.5 * t * t);
    total += w[k + half];
  }
  for (double& x : w) x /= total;
  return w;
}

GriddedDensity hde_fit(std::span<const double> samples, const HDEConfig& cfg,
                       const Grid& grid) {
  require_samples(samples, 2, "hde_fit");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double xmin = *lo_it, xmax = *hi_it;
  if (!(xmax > xmin)) {
    throw std::domain_error("hde_fit needs at least two distinct samples");
  }

  const int bins = cfg.n_bins ? *cfg.n_bins : freedman_diaconis_bins(samples);
  if (bins < 1) throw std::invalid_argument("bin count must be >= 1");
  const double width = (xmax - xmin) / bins;

  std::vector<double> hist(bins, 0.0);
  for (double x : samples) {
    int idx = static_cast<int>((x - xmin) / width);
    idx = std::clamp(idx, 0, bins - 1);
    hist[idx] += 1.0;
  }
  const double inv_mass = 1.0 / (static_cast<double>(samples.size()) * width);
  for (double& c : hist) c *= inv_mass;

  int m = std::max(cfg.min_kernel_size,
                   static_cast<int>(std::floor(6.0 * cfg.smoothing_h)));
  if (m % 2 == 0) ++m;
  const auto kernel = gaussian_kernel_weights(m, cfg.smoothing_h);
  const int half = m / 2;

  std::vector<double> smooth(bins, 0.0);
  for (int i = 0; i < bins; ++i) {
    double acc = 0.0;
    for (int k = -half; k <= half; ++k) {
      acc += kernel[k + half] * hist[reflect_index(i + k, bins)];
    }
    smooth[i] = acc;
  }

  // Transfer bin-center densities to the requested grid.
  GriddedDensity d;
  d.grid = grid;
  d.values.assign(grid.n, 0.0);
  const double c0 = xmin + 0.5 * width;
  const double c_last = c0 + (bins - 1) * width;
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.point(i);
    if (x < c0 || x > c_last) continue;
    if (bins == 1) {
      d.values[i] = smooth[0];
      continue;
    }
    int j = static_cast<int>((x - c0) / width);
    j = std::clamp(j, 0, bins - 2);
    const double frac = (x - (c0 + j * width)) / width;
    d.values[i] = smooth[j] + frac * (smooth[j + 1] - smooth[j]);
  }
  return renormalize(std::move(d));
}

double scott_bandwidth(std::span<const double> samples) {
  const double sigma = sample_stddev(samples);
  return sigma * std::pow(static_cast<double>(samples.size()), -0.2);
}

KDEModel kde_fit(std::span<const double> samples, const KDEConfig& cfg) {
  require_samples(samples, 2, "kde_fit");
  KDEModel model;
  model.samples.assign(samples.begin(), samples.end());
  model.bandwidth = cfg.bandwidth ? *cfg.bandwidth : scott_bandwidth(samples);
  if (!(model.bandwidth > 0.0)) {
    throw std::domain_error("kde_fit: resolved bandwidth must be > 0");
  }
  return model;
}

std::vector<double> kde_eval_points(const KDEModel& model,
                                    std::span<const double> xs, int chunk) {
  if (chunk < 1) throw std::invalid_argument("chunk size must be >= 1");
  const double h = model.bandwidth;
  const double norm =
      kInvSqrt2Pi / (static_cast<double>(model.samples.size()) * h);
  std::vector<double> out(xs.size());
  const std::size_t total = xs.size();
  for (std::size_t start = 0; start < total;
       start += static_cast<std::size_t>(chunk)) {
    const std::size_t end =
        std::min(total, start + static_cast<std::size_t>(chunk));
    for (std::size_t i = start; i < end; ++i) {
      const double x = xs[i];
      double acc = 0.0;
      for (double s : model.samples) {
        const double z = (x - s) / h;
        acc += std::exp(-0.5 * z * z);
      }
      out[i] = acc * norm;
    }
  }
  return out;
}

GriddedDensity kde_eval(const KDEModel& model, const Grid& grid, int chunk) {
  GriddedDensity d;
  d.grid = grid;
  const auto xs = grid.points();
  d.values = kde_eval_points(model, xs, chunk);
  return d;
}

}  // namespace unidens
