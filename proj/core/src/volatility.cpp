#include "rivol/volatility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "rivol/errors.hpp"

namespace rivol {

double IntradayPattern::at(std::int32_t minute) const {
  const auto it = std::lower_bound(minute_labels.begin(), minute_labels.end(), minute);
  if (it == minute_labels.end() || *it != minute)
    throw mismatch_error("intraday pattern has no entry for minute " + std::to_string(minute));
  return mean_by_minute[static_cast<std::size_t>(it - minute_labels.begin())];
}

namespace {

// Calls fn(day, window, first_tick, last_tick) for every (day, session
// window) pair, with [first, last) the ticks of that day inside the window.
template <typename Fn>
void for_each_session(const TickSeries& ticks, Fn&& fn) {
  const auto& ts = ticks.ticks;
  std::size_t i = 0;
  const std::int32_t n_days = static_cast<std::int32_t>(ticks.dates.size());
  for (std::int32_t day = 0; day < n_days; ++day) {
    for (const auto& w : ticks.sessions) {
      while (i < ts.size() && (ts[i].day < day ||
             (ts[i].day == day && ts[i].sec_of_day < w.open_sec)))
        ++i;
      std::size_t first = i;
      while (i < ts.size() && ts[i].day == day && ts[i].sec_of_day <= w.close_sec)
        ++i;
      fn(day, w, first, i);
    }
  }
}

}  // namespace

VolatilitySeries minute_close_volatility(const TickSeries& ticks) {
  if (ticks.ticks.empty()) throw data_error("no ticks");
  VolatilitySeries out;
  const auto& ts = ticks.ticks;
  for_each_session(ticks, [&](std::int32_t day, const SessionWindow& w,
                              std::size_t first, std::size_t last) {
    const int n_marks = (w.close_sec - w.open_sec) / 60;
    std::size_t i = first;
    bool have_prev = false;
    double prev_log = 0.0;
    for (int k = 0; k <= n_marks; ++k) {
      const int mark = w.open_sec + 60 * k;
      while (i < last && ts[i].sec_of_day <= mark) ++i;
      const bool have_here = i > first;
      const double log_here = have_here ? std::log(ts[i - 1].price) : 0.0;
      if (k > 0) {
        if (have_here && have_prev) {
          out.values.push_back(std::fabs(log_here - prev_log));
          out.minute_of_day.push_back(static_cast<std::int32_t>(mark / 60));
          out.day_index.push_back(day);
        } else {
          ++out.gaps;
        }
      }
      have_prev = have_here;
      prev_log = log_here;
    }
  });
  out.stage = Stage::raw;
  return out;
}

VolatilitySeries realized_volatility(const TickSeries& ticks) {
  if (ticks.ticks.empty()) throw data_error("no ticks");
  VolatilitySeries out;
  const auto& ts = ticks.ticks;
  for_each_session(ticks, [&](std::int32_t day, const SessionWindow& w,
                              std::size_t first, std::size_t last) {
    const int n_marks = (w.close_sec - w.open_sec) / 60;
    std::size_t i = first;
    // Skip ticks at exactly the open second into the "previous price" slot.
    bool have_prev = false;
    double prev_log = 0.0;
    while (i < last && ts[i].sec_of_day <= w.open_sec) {
      prev_log = std::log(ts[i].price);
      have_prev = true;
      ++i;
    }
    for (int k = 1; k <= n_marks; ++k) {
      const int mark = w.open_sec + 60 * k;
      double sum = 0.0;
      while (i < last && ts[i].sec_of_day <= mark) {
        const double lg = std::log(ts[i].price);
        if (have_prev) sum += std::fabs(lg - prev_log);
        prev_log = lg;
        have_prev = true;
        ++i;
      }
      out.values.push_back(sum);
      out.minute_of_day.push_back(static_cast<std::int32_t>(mark / 60));
      out.day_index.push_back(day);
    }
  });
  out.stage = Stage::raw;
  return out;
}

IntradayPattern intraday_pattern(const VolatilitySeries& vol) {
  if (vol.stage != Stage::raw) throw data_error("intraday_pattern expects a raw series");
  if (vol.values.empty()) throw data_error("empty volatility series");
  const auto [dmin, dmax] = std::minmax_element(vol.day_index.begin(), vol.day_index.end());
  if (*dmax == *dmin) throw data_error("intraday_pattern needs at least 2 days");

  std::map<std::int32_t, std::pair<double, std::size_t>> acc;
  for (std::size_t i = 0; i < vol.size(); ++i) {
    auto& [sum, count] = acc[vol.minute_of_day[i]];
    sum += vol.values[i];
    ++count;
  }
  IntradayPattern p;
  for (const auto& [minute, sc] : acc) {
    const double mean = sc.first / static_cast<double>(sc.second);
    if (!(mean > 0.0))
      throw degenerate_input_error("intraday pattern mean is zero at minute " +
                                   std::to_string(minute));
    p.minute_labels.push_back(minute);
    p.mean_by_minute.push_back(mean);
  }
  return p;
}

VolatilitySeries deseasonalize(const VolatilitySeries& vol, const IntradayPattern& pattern) {
  if (vol.stage != Stage::raw) throw data_error("deseasonalize expects a raw series");
  VolatilitySeries out = vol;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.values[i] /= pattern.at(out.minute_of_day[i]);
  out.stage = Stage::deseasonalized;
  return out;
}

VolatilitySeries normalize(const VolatilitySeries& vol) {
  if (vol.stage != Stage::deseasonalized)
    throw data_error("normalize expects a deseasonalized series");
  const std::size_t n = vol.size();
  if (n == 0) throw data_error("empty volatility series");
  double mean = 0.0;
  for (double v : vol.values) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : vol.values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);  // population convention
  if (!(var > 0.0)) throw degenerate_input_error("zero variance, cannot normalize");
  const double inv_sigma = 1.0 / std::sqrt(var);
  VolatilitySeries out = vol;
  for (double& v : out.values) v *= inv_sigma;
  out.stage = Stage::normalized;
  return out;
}

void write_volatility_csv(std::ostream& out, const VolatilitySeries& vol) {
  static const char* stage_names[] = {"raw", "deseasonalized", "normalized"};
  out << "day,minute,value,stage\n";
  char buf[96];
  for (std::size_t i = 0; i < vol.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%s", vol.day_index[i], vol.minute_of_day[i],
                  vol.values[i], stage_names[static_cast<int>(vol.stage)]);
    out << buf << '\n';
  }
}

VolatilitySeries read_volatility_csv(std::istream& in) {
  VolatilitySeries out;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw parse_error("empty volatility csv", 0);
  ++lineno;
  bool stage_set = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::int32_t day, minute;
    double value;
    char stage[24] = {0};
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%23s", &day, &minute, &value, stage) != 4)
      throw parse_error("malformed volatility row: " + line, lineno);
    out.day_index.push_back(day);
    out.minute_of_day.push_back(minute);
    out.values.push_back(value);
    if (!stage_set) {
      const std::string s = stage;
      if (s == "raw") out.stage = Stage::raw;
      else if (s == "deseasonalized") out.stage = Stage::deseasonalized;
      else if (s == "normalized") out.stage = Stage::normalized;
      else throw parse_error("unknown stage: " + s, lineno);
      stage_set = true;
    }
  }
  return out;
}

}  // namespace rivol
