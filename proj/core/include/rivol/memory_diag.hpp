#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rivol/intervals.hpp"

namespace rivol {

struct QuartilePartition {
  std::array<double, 3> edges{};        // values at ranks n/4, n/2, 3n/4
  std::vector<std::uint8_t> quartile;   // 0..3 per interval, rank-based ties
};

// Ascending-sort rank partition into four equal-size (+-1) bins.
QuartilePartition quartile_partition(const IntervalSample& sample);

// PDF of the interval immediately following an interval whose predecessor
// falls in the given quartile; scaled by the full-sample mean interval.
EmpiricalDistribution conditional_pdf(const IntervalSample& sample, int quartile,
                                      int bins_per_decade = 20);

// Raw successor intervals for one quartile, occurrence order.
std::vector<double> quartile_successors(const IntervalSample& sample, int quartile);

// Fisher-Yates permutation of the values; labels and stage kept.
VolatilitySeries shuffle_surrogate(const VolatilitySeries& vol, std::uint64_t rng_seed);

struct ConditionalPdfSet {
  double q = 0.0;
  std::array<double, 3> quartile_edges{};
  std::array<EmpiricalDistribution, 4> pdfs;
};

ConditionalPdfSet conditional_pdf_set(const IntervalSample& sample, int bins_per_decade = 20);

}  // namespace rivol
