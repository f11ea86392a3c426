#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rivol/tick_series.hpp"
#include "rivol/volatility.hpp"

namespace rivol {

// Exact autocovariance of fractional Gaussian noise at lag k.
double fgn_autocovariance(double hurst, std::size_t lag);

// Stationary fGn of unit variance by circulant embedding (exact in
// distribution). n must be a power of two.
std::vector<double> gen_fgn(double hurst, std::size_t n, std::uint64_t seed);

// Lognormal long-memory volatility surrogate: v(t) = exp(g(t)) with
// g = fGn(H), optionally times a planted intraday pattern. Labels follow a
// synthetic day of `minutes_per_day` trading minutes.
VolatilitySeries gen_longmemory_volatility(double hurst, std::size_t n, std::uint64_t seed,
                                           const IntradayPattern* pattern = nullptr,
                                           int minutes_per_day = 240);

struct TickPathSpec {
  std::vector<SessionWindow> sessions;
  int days = 1;
  double start_price = 100.0;
  double mean_tick_gap_sec = 7.0;
  double tick_return_sigma = 1e-4;  // stddev of per-tick log return
  std::uint64_t seed = 0;
};

// Geometric random walk sampled at exponential inter-tick times, clipped to
// the declared sessions.
TickSeries gen_tick_path(const TickPathSpec& spec);

}  // namespace rivol
