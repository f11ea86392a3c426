#include "rivol/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "rivol/errors.hpp"

namespace rivol {

IntervalSample make_interval_sample(double q, std::vector<double> intervals) {
  IntervalSample s;
  s.q = q;
  s.intervals = std::move(intervals);
  double sum = 0.0;
  for (double v : s.intervals) sum += v;
  s.mean_interval = s.intervals.empty() ? 0.0 : sum / static_cast<double>(s.intervals.size());
  return s;
}

double EmpiricalDistribution::cdf(double x) const {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

double EmpiricalDistribution::cdf_left(double x) const {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

IntervalSample extract_intervals(const VolatilitySeries& vol, double q) {
  if (vol.stage != Stage::normalized)
    throw data_error("extract_intervals expects a normalized series");
  if (!(q > 0.0)) throw config_error("threshold q must be positive");
  std::vector<double> intervals;
  std::ptrdiff_t prev = -1;
  std::size_t exceedances = 0;
  for (std::size_t i = 0; i < vol.size(); ++i) {
    if (vol.values[i] > q) {
      ++exceedances;
      if (prev >= 0) intervals.push_back(static_cast<double>(static_cast<std::ptrdiff_t>(i) - prev));
      prev = static_cast<std::ptrdiff_t>(i);
    }
  }
  if (exceedances < 2)
    throw insufficient_sample_error("fewer than 2 exceedances above q=" + std::to_string(q),
                                    exceedances);
  return make_interval_sample(q, std::move(intervals));
}

EmpiricalDistribution empirical_pdf_values(std::span<const double> values, int bins_per_decade) {
  if (values.empty()) throw data_error("empirical_pdf on empty sample");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());

  std::vector<double> x(values.begin(), values.end());
  for (double& v : x) v /= mean;
  return log_binned_pdf(x, bins_per_decade);
}

EmpiricalDistribution log_binned_pdf(std::span<const double> scaled_values, int bins_per_decade) {
  if (scaled_values.empty()) throw data_error("log_binned_pdf on empty sample");
  if (bins_per_decade < 1) throw config_error("bins_per_decade must be >= 1");
  std::vector<double> x(scaled_values.begin(), scaled_values.end());
  std::sort(x.begin(), x.end());
  if (!(x.front() > 0.0)) throw data_error("log_binned_pdf: values must be positive");

  // Bin edges at 10^(k / bpd); k chosen to cover the scaled data range.
  const double bpd = static_cast<double>(bins_per_decade);
  const auto edge_index = [bpd](double v) {
    return static_cast<long>(std::floor(std::log10(v) * bpd + 1e-12));
  };
  EmpiricalDistribution out;
  out.n = x.size();
  const double n = static_cast<double>(x.size());
  std::size_t i = 0;
  while (i < x.size()) {
    const long k = edge_index(x[i]);
    const double lo = std::pow(10.0, static_cast<double>(k) / bpd);
    const double hi = std::pow(10.0, static_cast<double>(k + 1) / bpd);
    std::size_t j = i;
    while (j < x.size() && x[j] < hi) ++j;
    out.pdf_points.push_back({std::sqrt(lo * hi),
                              static_cast<double>(j - i) / (n * (hi - lo)),
                              j - i, lo, hi});
    i = j;
  }
  return out;
}

EmpiricalDistribution empirical_pdf(const IntervalSample& sample, int bins_per_decade) {
  return empirical_pdf_values(sample.intervals, bins_per_decade);
}

EmpiricalDistribution fit_pdf(const IntervalSample& sample, int bins_per_decade) {
  EmpiricalDistribution d = empirical_pdf(sample, bins_per_decade);
  const double spacing = 1.0 / sample.mean_interval;
  const double n = static_cast<double>(sample.size());
  for (PdfPoint& p : d.pdf_points) {
    // A bin narrower than the lattice spacing holds at most one atom; its
    // mass represents one lattice cell, not the geometric bin width.
    if (p.hi - p.lo < spacing)
      p.density = static_cast<double>(p.count) / (n * spacing);
  }
  return d;
}

EmpiricalDistribution empirical_cdf_values(std::span<const double> values) {
  if (values.empty()) throw data_error("empirical_cdf on empty sample");
  EmpiricalDistribution out;
  out.sorted.assign(values.begin(), values.end());
  std::sort(out.sorted.begin(), out.sorted.end());
  out.n = out.sorted.size();
  return out;
}

EmpiricalDistribution empirical_cdf(const IntervalSample& sample, bool scaled) {
  EmpiricalDistribution out = empirical_cdf_values(sample.intervals);
  if (scaled) {
    for (double& v : out.sorted) v /= sample.mean_interval;
  }
  return out;
}

void write_intervals_csv(std::ostream& out, const IntervalSample& sample) {
  out << "q,interval\n";
  char buf[64];
  for (double v : sample.intervals) {
    std::snprintf(buf, sizeof(buf), "%.6g,%.17g", sample.q, v);
    out << buf << '\n';
  }
}

void write_pdf_csv(std::ostream& out, double q, const EmpiricalDistribution& dist) {
  out << "q,x,density\n";
  char buf[96];
  for (const auto& p : dist.pdf_points) {
    std::snprintf(buf, sizeof(buf), "%.6g,%.17g,%.17g", q, p.x, p.density);
    out << buf << '\n';
  }
}

void write_cdf_csv(std::ostream& out, double q, const EmpiricalDistribution& dist) {
  out << "q,x,F\n";
  char buf[96];
  for (std::size_t i = 0; i < dist.sorted.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.6g,%.17g,%.17g", q, dist.sorted[i],
                  static_cast<double>(i + 1) / static_cast<double>(dist.sorted.size()));
    out << buf << '\n';
  }
}

}  // namespace rivol
