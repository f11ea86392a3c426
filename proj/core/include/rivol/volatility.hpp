#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rivol/tick_series.hpp"

namespace rivol {

enum class Stage { raw, deseasonalized, normalized };

// Per-minute volatility values over concatenated trading sessions.
// Minutes with no usable price (R1 gaps) are excluded, not stored as zeros.
struct VolatilitySeries {
  std::vector<double> values;
  std::vector<std::int32_t> minute_of_day;  // minute-mark label, minutes from midnight
  std::vector<std::int32_t> day_index;
  Stage stage = Stage::raw;
  std::size_t gaps = 0;  // minute marks dropped for lack of a price

  std::size_t size() const { return values.size(); }
};

// Cross-day mean volatility per minute-of-day label.
struct IntradayPattern {
  std::vector<std::int32_t> minute_labels;  // sorted
  std::vector<double> mean_by_minute;       // > 0, parallel to minute_labels

  double at(std::int32_t minute) const;  // throws mismatch_error on unknown label
};

// |ln Y(t) - ln Y(t-1)| with Y(t) the last tick at or before the minute
// mark t, carried forward within the session only.
VolatilitySeries minute_close_volatility(const TickSeries& ticks);

// Sum of absolute tick-to-tick log returns within each minute. The first
// tick of a minute differences against the last tick of the previous minute
// of the same session; empty minutes yield 0.
VolatilitySeries realized_volatility(const TickSeries& ticks);

IntradayPattern intraday_pattern(const VolatilitySeries& vol);

VolatilitySeries deseasonalize(const VolatilitySeries& vol, const IntradayPattern& pattern);

// Divides by the population standard deviation; output sigma = 1.
VolatilitySeries normalize(const VolatilitySeries& vol);

void write_volatility_csv(std::ostream& out, const VolatilitySeries& vol);
VolatilitySeries read_volatility_csv(std::istream& in);

}  // namespace rivol
