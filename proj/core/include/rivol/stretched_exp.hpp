#pragma once

#include <cstdint>
#include <vector>

#include "rivol/intervals.hpp"

namespace rivol {

// Parameters of b * exp(-a * x^gamma) fitted to a log-binned interval PDF,
// with x = tau/<tau>.
struct StretchedExpFit {
  double a = 0.0;
  double b = 0.0;          // free PDF prefactor from the fit
  double gamma = 0.0;      // in (0, 2]
  double fit_error = 0.0;  // weighted SSE in log-density space
  double q = 0.0;
  double mean_interval = 1.0;  // <tau> of the originating sample, minutes
  bool gamma_at_bound = false;

  // Normalized-density parameters: density(x) = norm_c() * exp(-a x^gamma)
  // integrates to 1 on (0, inf).
  double norm_c() const;
  // Analytic mean of the normalized density.
  double analytic_mean() const;
};

// Weighted least squares of ln(density) on ln b - a x^gamma over occupied
// bins, weights = bin counts; gamma found by multistart grid + golden
// section over (0, 2].
StretchedExpFit fit_se(const EmpiricalDistribution& dist);

// CDF of the normalized density at scaled interval x.
double se_cdf(const StretchedExpFit& fit, double x);

// Quantile: inverse of se_cdf, accurate to ~1e-12 in probability.
double se_quantile(const StretchedExpFit& fit, double p);

// n i.i.d. scaled draws from the normalized density (inverse transform).
std::vector<double> se_sample_scaled(const StretchedExpFit& fit, std::size_t n,
                                     std::uint64_t rng_seed);

// Draws rescaled by the originating sample's <tau> and discretized to
// integer minutes (ceiling, floor 1).
IntervalSample se_sample(const StretchedExpFit& fit, std::size_t n, std::uint64_t rng_seed);

struct GammaVsQPoint {
  double q = 0.0;
  StretchedExpFit fit;
  std::size_t n_intervals = 0;
  bool skipped = false;  // too few intervals at this q
};

std::vector<GammaVsQPoint> gamma_vs_q(const VolatilitySeries& vol,
                                      const std::vector<double>& q_grid,
                                      int bins_per_decade = 20,
                                      std::size_t min_intervals = 100);

}  // namespace rivol
