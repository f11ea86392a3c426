#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rivol/volatility.hpp"

namespace rivol {

struct DFAReport {
  std::vector<int> scales;
  std::vector<double> fluctuation;  // F(l), parallel to scales
  double alpha_small = 0.0;
  double alpha_large = 0.0;
  double alpha_small_stderr = 0.0;
  double alpha_large_stderr = 0.0;
  int crossover_scale = 0;  // l_x: last scale of the small-l regime
  std::pair<int, int> small_range{0, 0};
  std::pair<int, int> large_range{0, 0};
  std::vector<int> skipped_scales;
  bool degenerate = false;  // zero-variance input (F identically 0)
};

// ~20 log-spaced integer scales in [8, n/4].
std::vector<int> default_scales(std::size_t n, int count = 20, int min_scale = 8);

// Standard DFA-1: profile = cumsum(x - mean), non-overlapping windows of
// length l taken from the front and again from the back, per-window linear
// detrend, F(l) = rms residual. Scales above length/4 are skipped.
DFAReport dfa_fluctuation(std::span<const double> series, const std::vector<int>& scales);

struct AlphaFit {
  double alpha = 0.0;
  double stderr_ = 0.0;
  double sse = 0.0;
};

// OLS of log F on log l restricted to scales in [l_min, l_max].
AlphaFit fit_alpha(const DFAReport& report, int l_min, int l_max);

// Exhaustive two-segment breakpoint scan (>= 4 scales per side) minimizing
// total SSE of the two log-log line fits; ties resolved to the smallest l_x.
DFAReport detect_crossover(DFAReport report);

struct AlphaVsQPoint {
  double q = 0.0;
  DFAReport report;
  std::size_t n_intervals = 0;
  bool skipped = false;
};

// DFA + crossover on the interval sequence for each q with >= min_intervals.
std::vector<AlphaVsQPoint> alpha_vs_q(const VolatilitySeries& vol,
                                      const std::vector<double>& q_grid,
                                      std::size_t min_intervals = 512);

}  // namespace rivol
