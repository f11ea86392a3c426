#pragma once

#include <cstdint>
#include <string>

#include "rivol/intervals.hpp"
#include "rivol/stretched_exp.hpp"

namespace rivol {

enum class Verdict { scaling, no_scaling };

inline Verdict verdict_for(double ks, double cv) {
  return ks < cv ? Verdict::scaling : Verdict::no_scaling;
}

struct KSReport {
  double statistic = 0.0;
  double critical_value = 0.0;
  Verdict verdict = Verdict::no_scaling;
  std::size_t m = 0;
  std::size_t n = 0;
  double overlap_lo = 0.0;
  double overlap_hi = 0.0;
  double q_a = 0.0;
  double q_b = 0.0;
};

enum class StatisticKind { KS, KSW };

struct GofReport {
  StatisticKind statistic_kind = StatisticKind::KS;
  double observed = 0.0;
  double p_value = 0.0;
  std::size_t replicas = 0;
  std::size_t discarded = 0;
  std::uint64_t seed = 0;
  double q = 0.0;
};

// Sup |F_a - F_b| over the overlap of the two supports, evaluated at both
// limits of every jump point inside the overlap.
double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

// 1.36 * sqrt((m+n)/(m*n)); only alpha = 0.05 is supported.
double critical_value(std::size_t m, std::size_t n, double alpha = 0.05);

// Scales each sample by its own mean interval and compares the two ECDFs.
KSReport scaling_test(const IntervalSample& a, const IntervalSample& b, double alpha = 0.05);

// One-sample KS (or weighted KSW) distance between the sample's scaled ECDF
// and the fitted stretched-exponential CDF.
double ks_gof(const IntervalSample& sample, const StretchedExpFit& fit, bool weighted);

// Parametric bootstrap p-value per the KS goodness-of-fit procedure:
// each replica is drawn from the fit, refit, and measured against its own
// refit; p = frequency(simulated statistic > observed).
GofReport bootstrap_pvalue(const IntervalSample& sample, std::size_t replicas,
                           StatisticKind kind, std::uint64_t rng_seed,
                           int bins_per_decade = 20);

std::string to_string(Verdict v);
std::string to_string(StatisticKind k);

}  // namespace rivol
