#include "rivol/dfa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rivol/errors.hpp"
#include "rivol/intervals.hpp"

namespace rivol {

namespace {

struct KahanSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Sum of squared residuals of y[first..first+l) against its least-squares
// line in local coordinates t = 0..l-1.
double window_ssr(std::span<const double> y, std::size_t first, std::size_t l) {
  const double n = static_cast<double>(l);
  const double st = n * (n - 1.0) / 2.0;
  const double stt = (n - 1.0) * n * (2.0 * n - 1.0) / 6.0;
  double sy = 0.0, sty = 0.0;
  for (std::size_t t = 0; t < l; ++t) {
    sy += y[first + t];
    sty += static_cast<double>(t) * y[first + t];
  }
  const double det = n * stt - st * st;
  const double slope = (n * sty - st * sy) / det;
  const double icept = (sy - slope * st) / n;
  KahanSum ssr;
  for (std::size_t t = 0; t < l; ++t) {
    const double r = y[first + t] - (icept + slope * static_cast<double>(t));
    ssr.add(r * r);
  }
  return ssr.sum;
}

struct LineFit {
  double slope = 0.0, icept = 0.0, sse = 0.0, slope_stderr = 0.0;
  std::size_t k = 0;
};

LineFit ols(std::span<const double> xs, std::span<const double> ys) {
  LineFit f;
  f.k = xs.size();
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / det;
  f.icept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (f.icept + f.slope * xs[i]);
    f.sse += r * r;
  }
  const double sxx_c = sxx - sx * sx / n;
  f.slope_stderr = f.k > 2 ? std::sqrt(f.sse / (n - 2.0) / sxx_c) : 0.0;
  return f;
}

}  // namespace

std::vector<int> default_scales(std::size_t n, int count, int min_scale) {
  const int max_scale = static_cast<int>(n / 4);
  if (max_scale < min_scale) throw data_error("series too short for DFA");
  std::vector<int> scales;
  const double lmin = std::log(static_cast<double>(min_scale));
  const double lmax = std::log(static_cast<double>(max_scale));
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    const int s = static_cast<int>(std::lround(std::exp(lmin + f * (lmax - lmin))));
    if (scales.empty() || s > scales.back()) scales.push_back(s);
  }
  return scales;
}

DFAReport dfa_fluctuation(std::span<const double> series, const std::vector<int>& scales) {
  const std::size_t n = series.size();
  if (scales.empty()) throw config_error("dfa_fluctuation: no scales");
  for (int l : scales)
    if (l < 4) throw config_error("dfa_fluctuation: scales must be >= 4");

  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> profile(n);
  KahanSum cum;
  for (std::size_t t = 0; t < n; ++t) {
    cum.add(series[t] - mean);
    profile[t] = cum.sum;
  }

  DFAReport rep;
  bool any_positive = false;
  for (int l : scales) {
    const std::size_t ul = static_cast<std::size_t>(l);
    if (ul > n / 4) {
      rep.skipped_scales.push_back(l);
      continue;
    }
    const std::size_t n_windows = n / ul;
    KahanSum total;
    for (std::size_t w = 0; w < n_windows; ++w)
      total.add(window_ssr(profile, w * ul, ul));  // front pass
    const std::size_t back_offset = n - n_windows * ul;
    for (std::size_t w = 0; w < n_windows; ++w)
      total.add(window_ssr(profile, back_offset + w * ul, ul));  // back pass
    const double f =
        std::sqrt(total.sum / (2.0 * static_cast<double>(n_windows) * static_cast<double>(ul)));
    rep.scales.push_back(l);
    rep.fluctuation.push_back(f);
    if (f > 0.0) any_positive = true;
  }
  if (rep.scales.empty()) throw data_error("dfa_fluctuation: all scales skipped");
  rep.degenerate = !any_positive;
  return rep;
}

AlphaFit fit_alpha(const DFAReport& report, int l_min, int l_max) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < report.scales.size(); ++i) {
    if (report.scales[i] >= l_min && report.scales[i] <= l_max &&
        report.fluctuation[i] > 0.0) {
      xs.push_back(std::log(static_cast<double>(report.scales[i])));
      ys.push_back(std::log(report.fluctuation[i]));
    }
  }
  if (xs.size() < 4) throw fit_error("fit_alpha: fewer than 4 scales in range");
  const LineFit f = ols(xs, ys);
  return {f.slope, f.slope_stderr, f.sse};
}

DFAReport detect_crossover(DFAReport report) {
  const std::size_t k = report.scales.size();
  if (k < 8) throw fit_error("detect_crossover needs >= 8 scales");
  if (report.degenerate) {
    report.crossover_scale = report.scales[k / 2 - 1];
    return report;
  }
  std::vector<double> xs(k), ys(k);
  for (std::size_t i = 0; i < k; ++i) {
    xs[i] = std::log(static_cast<double>(report.scales[i]));
    ys[i] = report.fluctuation[i] > 0.0 ? std::log(report.fluctuation[i])
                                        : std::log(std::numeric_limits<double>::min());
  }
  std::size_t best_i = 0;
  double best_sse = std::numeric_limits<double>::infinity();
  LineFit best_lo, best_hi;
  // i is the last index of the small-scale regime.
  for (std::size_t i = 3; i + 4 < k; ++i) {
    const LineFit lo = ols({xs.data(), i + 1}, {ys.data(), i + 1});
    const LineFit hi = ols({xs.data() + i + 1, k - i - 1}, {ys.data() + i + 1, k - i - 1});
    const double sse = lo.sse + hi.sse;
    if (sse < best_sse - 1e-15) {
      best_sse = sse;
      best_i = i;
      best_lo = lo;
      best_hi = hi;
    }
  }
  report.crossover_scale = report.scales[best_i];
  report.alpha_small = best_lo.slope;
  report.alpha_large = best_hi.slope;
  report.small_range = {report.scales.front(), report.scales[best_i]};
  report.large_range = {report.scales[best_i + 1], report.scales.back()};
  const double n_lo = static_cast<double>(best_lo.k), n_hi = static_cast<double>(best_hi.k);
  // Recompute slope stderrs from the stored fit SSEs.
  {
    double sx = 0, sxx = 0;
    for (std::size_t i = 0; i <= best_i; ++i) {
      sx += xs[i];
      sxx += xs[i] * xs[i];
    }
    report.alpha_small_stderr =
        std::sqrt(best_lo.sse / (n_lo - 2.0) / (sxx - sx * sx / n_lo));
  }
  {
    double sx = 0, sxx = 0;
    for (std::size_t i = best_i + 1; i < k; ++i) {
      sx += xs[i];
      sxx += xs[i] * xs[i];
    }
    report.alpha_large_stderr =
        std::sqrt(best_hi.sse / (n_hi - 2.0) / (sxx - sx * sx / n_hi));
  }
  return report;
}

std::vector<AlphaVsQPoint> alpha_vs_q(const VolatilitySeries& vol,
                                      const std::vector<double>& q_grid,
                                      std::size_t min_intervals) {
  std::vector<double> qs = q_grid;
  std::sort(qs.begin(), qs.end());
  std::vector<AlphaVsQPoint> out;
  for (double q : qs) {
    AlphaVsQPoint pt;
    pt.q = q;
    try {
      const IntervalSample s = extract_intervals(vol, q);
      pt.n_intervals = s.size();
      if (s.size() < min_intervals) {
        pt.skipped = true;
      } else {
        pt.report = detect_crossover(
            dfa_fluctuation(s.intervals, default_scales(s.size())));
      }
    } catch (const error&) {
      pt.skipped = true;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace rivol
