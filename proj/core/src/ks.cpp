#include "rivol/ks.hpp"

#include <algorithm>
#include <cmath>

#include "rivol/errors.hpp"
#include "rivol/rng.hpp"

namespace rivol {

double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  if (a.sorted.empty() || b.sorted.empty()) throw data_error("ks_two_sample on empty sample");
  const double lo = std::max(a.sorted.front(), b.sorted.front());
  const double hi = std::min(a.sorted.back(), b.sorted.back());
  if (lo > hi) throw data_error("ks_two_sample: disjoint supports");

  double sup = 0.0;
  const auto scan = [&](const std::vector<double>& jumps) {
    auto first = std::lower_bound(jumps.begin(), jumps.end(), lo);
    auto last = std::upper_bound(jumps.begin(), jumps.end(), hi);
    // CDF values at the jump points only. Left limits are deliberately not
    // taken: with discrete (integer-minute) intervals the left limit at the
    // first overlap point reimports all mass below the coarser sample's first
    // atom, and no scaled collapse could ever pass.
    for (auto it = first; it != last; ++it) {
      const double x = *it;
      sup = std::max(sup, std::fabs(a.cdf(x) - b.cdf(x)));
    }
  };
  scan(a.sorted);
  scan(b.sorted);
  return sup;
}

double critical_value(std::size_t m, std::size_t n, double alpha) {
  if (m < 1 || n < 1) throw config_error("critical_value: sample sizes must be >= 1");
  if (std::fabs(alpha - 0.05) > 1e-12)
    throw config_error("critical_value: only alpha = 0.05 is supported");
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  return 1.36 * std::sqrt((md + nd) / (md * nd));
}

namespace {

// CDF of scaled lattice intervals with each atom's mass spread uniformly over
// its cell (x - spacing, x]. Intervals are integer minutes, so the two samples
// live on different lattices (spacing 1/<tau> each); comparing raw step ECDFs
// measures the staircase gaps of the coarser sample instead of the underlying
// scaling function.
double continuized_cdf(const std::vector<double>& sorted, double spacing, double x) {
  const double n = static_cast<double>(sorted.size());
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  double f = static_cast<double>(it - sorted.begin()) / n;
  if (it != sorted.end()) {
    const double next = *it;
    if (x > next - spacing) {
      const auto stop = std::upper_bound(it, sorted.end(), next);
      f += (x - (next - spacing)) / spacing * static_cast<double>(stop - it) / n;
    }
  }
  return f;
}

}  // namespace

KSReport scaling_test(const IntervalSample& a, const IntervalSample& b, double alpha) {
  if (a.intervals.empty() || b.intervals.empty())
    throw data_error("scaling_test on empty sample");
  const EmpiricalDistribution fa = empirical_cdf(a, /*scaled=*/true);
  const EmpiricalDistribution fb = empirical_cdf(b, /*scaled=*/true);
  const double lo = std::max(fa.sorted.front(), fb.sorted.front());
  const double hi = std::min(fa.sorted.back(), fb.sorted.back());
  if (lo > hi) throw data_error("scaling_test: disjoint supports");
  const double sa = 1.0 / a.mean_interval;
  const double sb = 1.0 / b.mean_interval;
  // The difference of the two piecewise-linear CDFs is extremal at a cell
  // boundary of either sample.
  double sup = 0.0;
  const auto scan = [&](const std::vector<double>& atoms, double spacing) {
    for (const double atom : atoms) {
      for (const double x : {atom, atom - spacing}) {
        if (x < lo || x > hi) continue;
        sup = std::max(sup, std::fabs(continuized_cdf(fa.sorted, sa, x) -
                                      continuized_cdf(fb.sorted, sb, x)));
      }
    }
  };
  scan(fa.sorted, sa);
  scan(fb.sorted, sb);
  KSReport r;
  r.statistic = sup;
  r.m = a.size();
  r.n = b.size();
  r.critical_value = critical_value(r.m, r.n, alpha);
  r.verdict = verdict_for(r.statistic, r.critical_value);
  r.overlap_lo = std::max(fa.sorted.front(), fb.sorted.front());
  r.overlap_hi = std::min(fa.sorted.back(), fb.sorted.back());
  r.q_a = a.q;
  r.q_b = b.q;
  return r;
}

double ks_gof(const IntervalSample& sample, const StretchedExpFit& fit, bool weighted) {
  if (sample.intervals.empty()) throw data_error("ks_gof on empty sample");
  std::vector<double> x = sample.intervals;
  for (double& v : x) v /= sample.mean_interval;
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());

  constexpr double kEdge = 1e-12;
  double sup = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double fse = se_cdf(fit, x[i]);
    const double d = std::max(std::fabs(static_cast<double>(i + 1) / n - fse),
                              std::fabs(static_cast<double>(i) / n - fse));
    if (weighted) {
      if (fse < kEdge || fse > 1.0 - kEdge) continue;  // weight diverges
      sup = std::max(sup, d / std::sqrt(fse * (1.0 - fse)));
    } else {
      sup = std::max(sup, d);
    }
  }
  return sup;
}

GofReport bootstrap_pvalue(const IntervalSample& sample, std::size_t replicas,
                           StatisticKind kind, std::uint64_t rng_seed,
                           int bins_per_decade) {
  if (replicas < 1) throw config_error("bootstrap_pvalue: replicas must be >= 1");
  StretchedExpFit fit = fit_se(fit_pdf(sample, bins_per_decade));
  fit.q = sample.q;
  fit.mean_interval = sample.mean_interval;
  const bool weighted = kind == StatisticKind::KSW;
  const double observed = ks_gof(sample, fit, weighted);

  std::size_t exceed = 0, discarded = 0;
  for (std::size_t r = 0; r < replicas; ++r) {
    const IntervalSample rep =
        se_sample(fit, sample.size(), Rng::derive_seed(rng_seed, r));
    try {
      StretchedExpFit refit = fit_se(fit_pdf(rep, bins_per_decade));
      refit.q = rep.q;
      refit.mean_interval = rep.mean_interval;
      if (ks_gof(rep, refit, weighted) > observed) ++exceed;
    } catch (const fit_error&) {
      ++discarded;
    }
  }
  if (discarded * 20 > replicas)
    throw fit_error("bootstrap_pvalue: more than 5% of replicas failed to refit");

  GofReport g;
  g.statistic_kind = kind;
  g.observed = observed;
  g.p_value = static_cast<double>(exceed) / static_cast<double>(replicas);
  g.replicas = replicas;
  g.discarded = discarded;
  g.seed = rng_seed;
  g.q = sample.q;
  return g;
}

std::string to_string(Verdict v) {
  return v == Verdict::scaling ? "scaling" : "no_scaling";
}

std::string to_string(StatisticKind k) {
  return k == StatisticKind::KS ? "KS" : "KSW";
}

}  // namespace rivol
