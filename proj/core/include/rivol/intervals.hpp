#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "rivol/volatility.hpp"

namespace rivol {

// Return intervals between successive exceedances of one threshold q,
// in occurrence order (the memory diagnostics depend on the order).
struct IntervalSample {
  double q = 0.0;
  std::vector<double> intervals;  // >= 1, integer-valued minutes
  double mean_interval = 0.0;

  std::size_t size() const { return intervals.size(); }
};

IntervalSample make_interval_sample(double q, std::vector<double> intervals);

struct PdfPoint {
  double x = 0.0;        // geometric bin center of tau/<tau>
  double density = 0.0;  // count / (n * bin width)
  std::size_t count = 0;
  double lo = 0.0;
  double hi = 0.0;
};

// Log-binned PDF and/or exact step CDF over scaled intervals.
struct EmpiricalDistribution {
  std::vector<PdfPoint> pdf_points;  // occupied bins only
  std::vector<double> sorted;        // jump points of the exact ECDF
  std::size_t n = 0;

  // Right-continuous ECDF value at x; 0 below the smallest point.
  double cdf(double x) const;
  // Left limit of the ECDF at x.
  double cdf_left(double x) const;
};

// Intervals are differences of successive indices with value > q (strict).
// The stretch before the first exceedance produces no interval.
IntervalSample extract_intervals(const VolatilitySeries& vol, double q);

EmpiricalDistribution empirical_pdf(const IntervalSample& sample, int bins_per_decade = 20);

// empirical_pdf with sub-lattice bins re-weighted for fitting. Intervals are
// integer minutes; a bin narrower than the scaled lattice spacing 1/<tau>
// holds at most one atom, and count/(n * bin width) overestimates the
// continuous envelope by ~spacing/width (the empty bins between atoms are
// dropped), dragging stretched-exponential fits toward a spurious power law.
// Here such bins use count/(n * spacing). Use empirical_pdf for plotting.
EmpiricalDistribution fit_pdf(const IntervalSample& sample, int bins_per_decade = 20);

// Log-binned PDF over arbitrary positive values scaled by their mean.
EmpiricalDistribution empirical_pdf_values(std::span<const double> values, int bins_per_decade);

// Log-binned PDF over values that are already in scaled units (no rescaling).
EmpiricalDistribution log_binned_pdf(std::span<const double> scaled_values, int bins_per_decade);

// Exact ECDF; scaled divides by the sample's mean interval.
EmpiricalDistribution empirical_cdf(const IntervalSample& sample, bool scaled = true);
EmpiricalDistribution empirical_cdf_values(std::span<const double> values);

void write_intervals_csv(std::ostream& out, const IntervalSample& sample);
void write_pdf_csv(std::ostream& out, double q, const EmpiricalDistribution& dist);
void write_cdf_csv(std::ostream& out, double q, const EmpiricalDistribution& dist);

}  // namespace rivol
