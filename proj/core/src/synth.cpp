#include "rivol/synth.hpp"

#include <cassert>
#include <cmath>
#include <complex>
#include <cstdio>

#include <fftw3.h>

#include "rivol/errors.hpp"
#include "rivol/rng.hpp"

namespace rivol {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Civil date for a day count since 1970-01-01 (Howard Hinnant's algorithm).
std::string civil_date(long days) {
  days += 719468;
  const long era = (days >= 0 ? days : days - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long y = static_cast<long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04ld-%02u-%02u", m <= 2 ? y + 1 : y, m, d);
  return buf;
}

}  // namespace

double fgn_autocovariance(double hurst, std::size_t lag) {
  if (lag == 0) return 1.0;
  const double k = static_cast<double>(lag);
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(k - 1.0, h2));
}

std::vector<double> gen_fgn(double hurst, std::size_t n, std::uint64_t seed) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw config_error("gen_fgn: H must be in (0,1)");
  if (!is_power_of_two(n)) throw config_error("gen_fgn: n must be a power of two");

  const std::size_t m = 2 * n;
  std::vector<std::complex<double>> buf(m);
  for (std::size_t j = 0; j <= n; ++j) buf[j] = fgn_autocovariance(hurst, j);
  for (std::size_t j = n + 1; j < m; ++j) buf[j] = buf[m - j];

  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(m),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);

  // Eigenvalues of the circulant embedding; nonnegative for fGn.
  std::vector<double> lambda(m);
  for (std::size_t j = 0; j < m; ++j) {
    double v = buf[j].real();
    if (v < -1e-8)
      throw error("gen_fgn: circulant embedding not PSD (cannot happen for fGn)");
    lambda[j] = std::max(v, 0.0);
  }

  Rng rng(seed);
  buf[0] = std::sqrt(lambda[0]) * rng.normal();
  buf[n] = std::sqrt(lambda[n]) * rng.normal();
  for (std::size_t j = 1; j < n; ++j) {
    const double s = std::sqrt(lambda[j] / 2.0);
    buf[j] = {s * rng.normal(), s * rng.normal()};
    buf[m - j] = std::conj(buf[j]);
  }

  fftw_execute(plan);  // same in-place forward transform
  fftw_destroy_plan(plan);

  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = buf[k].real() * scale;
  return out;
}

VolatilitySeries gen_longmemory_volatility(double hurst, std::size_t n, std::uint64_t seed,
                                           const IntradayPattern* pattern,
                                           int minutes_per_day) {
  if (minutes_per_day < 1) throw config_error("minutes_per_day must be >= 1");
  const std::vector<double> g = gen_fgn(hurst, n, seed);
  VolatilitySeries out;
  out.values.resize(n);
  out.minute_of_day.resize(n);
  out.day_index.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::int32_t minute = static_cast<std::int32_t>(t % minutes_per_day);
    double v = std::exp(g[t]);
    if (pattern) v *= pattern->at(minute);
    out.values[t] = v;
    out.minute_of_day[t] = minute;
    out.day_index[t] = static_cast<std::int32_t>(t / minutes_per_day);
  }
  out.stage = Stage::raw;
  return out;
}

TickSeries gen_tick_path(const TickPathSpec& spec) {
  if (spec.sessions.empty()) throw config_error("gen_tick_path: empty session layout");
  if (spec.days < 1) throw config_error("gen_tick_path: days must be >= 1");
  Rng rng(spec.seed);
  TickSeries out;
  out.sessions = spec.sessions;
  const long base_day = 12422;  // 2004-01-05
  double log_price = std::log(spec.start_price);
  for (int d = 0; d < spec.days; ++d) {
    out.dates.push_back(civil_date(base_day + d));
    for (const auto& w : spec.sessions) {
      double t = static_cast<double>(w.open_sec);
      int last_sec = -1;
      while (true) {
        t += -spec.mean_tick_gap_sec * std::log(rng.uniform());
        const int sec = static_cast<int>(t);
        if (sec > w.close_sec) break;
        log_price += spec.tick_return_sigma * rng.normal();
        if (sec == last_sec) continue;  // second resolution: keep first tick per second
        last_sec = sec;
        out.ticks.push_back({d, sec, std::exp(log_price)});
      }
    }
  }
  return out;
}

}  // namespace rivol
