#include "rivol/memory_diag.hpp"

#include <algorithm>
#include <numeric>

#include "rivol/errors.hpp"
#include "rivol/rng.hpp"

namespace rivol {

QuartilePartition quartile_partition(const IntervalSample& sample) {
  const std::size_t n = sample.size();
  if (n < 8) throw insufficient_sample_error("quartile_partition needs >= 8 intervals", n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sample.intervals[a] < sample.intervals[b];
  });

  QuartilePartition p;
  p.quartile.assign(n, 0);
  for (std::size_t rank = 0; rank < n; ++rank) {
    // Boundaries at floor(k*n/4): equal bin sizes +-1, ties split by rank.
    const std::size_t k = (4 * rank) / n < 4 ? (4 * rank) / n : 3;
    p.quartile[order[rank]] = static_cast<std::uint8_t>(k);
  }
  p.edges = {sample.intervals[order[n / 4 - 1]], sample.intervals[order[n / 2 - 1]],
             sample.intervals[order[3 * n / 4 - 1]]};
  return p;
}

std::vector<double> quartile_successors(const IntervalSample& sample, int quartile) {
  if (quartile < 1 || quartile > 4) throw config_error("quartile must be in 1..4");
  const QuartilePartition p = quartile_partition(sample);
  std::vector<double> successors;
  for (std::size_t i = 0; i + 1 < sample.size(); ++i)
    if (p.quartile[i] == quartile - 1) successors.push_back(sample.intervals[i + 1]);
  return successors;
}

EmpiricalDistribution conditional_pdf(const IntervalSample& sample, int quartile,
                                      int bins_per_decade) {
  std::vector<double> successors = quartile_successors(sample, quartile);
  if (successors.size() < 10)
    throw insufficient_sample_error("conditional_pdf: too few successors", successors.size());
  // Scale by the full-sample mean, not the successor mean.
  for (double& v : successors) v /= sample.mean_interval;
  return log_binned_pdf(successors, bins_per_decade);
}

ConditionalPdfSet conditional_pdf_set(const IntervalSample& sample, int bins_per_decade) {
  ConditionalPdfSet set;
  set.q = sample.q;
  set.quartile_edges = quartile_partition(sample).edges;
  for (int k = 1; k <= 4; ++k) set.pdfs[k - 1] = conditional_pdf(sample, k, bins_per_decade);
  return set;
}

VolatilitySeries shuffle_surrogate(const VolatilitySeries& vol, std::uint64_t rng_seed) {
  if (vol.values.empty()) throw data_error("shuffle_surrogate on empty series");
  VolatilitySeries out = vol;
  Rng rng(rng_seed);
  for (std::size_t i = out.values.size() - 1; i > 0; --i)
    std::swap(out.values[i], out.values[rng.uniform_below(i + 1)]);
  return out;
}

}  // namespace rivol
