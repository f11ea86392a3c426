#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rivol/errors.hpp"
#include "rivol/intervals.hpp"
#include "rivol/rng.hpp"

using namespace rivol;

namespace {

VolatilitySeries normalized_series(std::vector<double> values) {
  VolatilitySeries v;
  v.values = std::move(values);
  v.minute_of_day.resize(v.values.size());
  v.day_index.resize(v.values.size());
  v.stage = Stage::normalized;
  return v;
}

}  // namespace

TEST_CASE("extract_intervals hand trace") {
  const IntervalSample s = extract_intervals(normalized_series({3, 1, 3, 1, 1, 3}), 2.0);
  REQUIRE(s.intervals == std::vector<double>{2, 3});
  CHECK(s.mean_interval == doctest::Approx(2.5));
}

TEST_CASE("all values above threshold give unit intervals") {
  const IntervalSample s = extract_intervals(normalized_series({5, 5, 5, 5}), 2.0);
  CHECK(s.intervals == std::vector<double>{1, 1, 1});
  CHECK(s.mean_interval == doctest::Approx(1.0));
}

TEST_CASE("no exceedances is an error carrying the count") {
  try {
    extract_intervals(normalized_series({1, 1, 1}), 2.0);
    FAIL("expected insufficient_sample_error");
  } catch (const insufficient_sample_error& e) {
    CHECK(e.count == 0);
  }
  CHECK_THROWS_AS(extract_intervals(normalized_series({1, 3, 1}), 2.0),
                  insufficient_sample_error);
}

TEST_CASE("exceedance is strict") {
  CHECK_THROWS_AS(extract_intervals(normalized_series({2, 2, 2}), 2.0),
                  insufficient_sample_error);
}

TEST_CASE("conservation of time") {
  Rng rng(11);
  std::vector<double> values(5000);
  for (double& v : values) v = std::exp(rng.normal());
  const double q = 1.5;
  const IntervalSample s = extract_intervals(normalized_series(values), q);
  std::size_t first = 0;
  while (values[first] <= q) ++first;
  std::size_t last = values.size() - 1;
  while (values[last] <= q) --last;
  double sum = 0;
  for (double v : s.intervals) sum += v;
  CHECK(first + static_cast<std::size_t>(sum) + (values.size() - 1 - last) ==
        values.size() - 1);
}

TEST_CASE("iid exceedances give geometric intervals with mean 1/p") {
  Rng rng(23);
  const std::size_t n = 200000;
  std::vector<double> values(n);
  for (double& v : values) v = rng.uniform();
  const double q = 0.9;  // p = 0.1
  const IntervalSample s = extract_intervals(normalized_series(values), q);
  const double p = 0.1;
  const double expected_mean = 1.0 / p;
  // Geometric sd ~ sqrt(1-p)/p; 3 standard errors of the sample mean.
  const double se = std::sqrt(1.0 - p) / p / std::sqrt(static_cast<double>(s.size()));
  CHECK(std::fabs(s.mean_interval - expected_mean) < 3.0 * se);
}

TEST_CASE("empirical_pdf point mass") {
  const IntervalSample s = make_interval_sample(2.0, {7, 7, 7, 7});
  const EmpiricalDistribution d = empirical_pdf(s, 20);
  REQUIRE(d.pdf_points.size() == 1);
  const auto& p = d.pdf_points[0];
  CHECK(p.density * (p.hi - p.lo) == doctest::Approx(1.0));
  CHECK(p.count == 4);
}

TEST_CASE("empirical_pdf integrates to one over occupied bins") {
  Rng rng(5);
  std::vector<double> intervals(20000);
  for (double& v : intervals) v = std::ceil(-30.0 * std::log(rng.uniform()));
  const EmpiricalDistribution d = empirical_pdf(make_interval_sample(2, intervals), 20);
  double integral = 0.0;
  for (const auto& p : d.pdf_points) integral += p.density * (p.hi - p.lo);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("empirical_pdf matches exponential closed form") {
  Rng rng(17);
  std::vector<double> draws(100000);
  for (double& v : draws) v = -std::log(rng.uniform());
  const EmpiricalDistribution d = empirical_pdf_values(draws, 10);
  const double n = static_cast<double>(draws.size());
  int checked = 0;
  for (const auto& p : d.pdf_points) {
    if (p.count < 30) continue;  // binomial error band needs counts
    const double prob = std::exp(-p.lo) - std::exp(-p.hi);
    const double se = std::sqrt(prob * (1 - prob) / n) / (p.hi - p.lo);
    CHECK(std::fabs(p.density - prob / (p.hi - p.lo)) < 3.5 * se);
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("scaled pdf is invariant under doubling all intervals") {
  Rng rng(3);
  std::vector<double> intervals(5000);
  for (double& v : intervals) v = std::ceil(-10.0 * std::log(rng.uniform()));
  std::vector<double> doubled = intervals;
  for (double& v : doubled) v *= 2.0;
  const EmpiricalDistribution a = empirical_pdf(make_interval_sample(2, intervals), 20);
  const EmpiricalDistribution b = empirical_pdf(make_interval_sample(2, doubled), 20);
  REQUIRE(a.pdf_points.size() == b.pdf_points.size());
  for (std::size_t i = 0; i < a.pdf_points.size(); ++i) {
    CHECK(a.pdf_points[i].x == doctest::Approx(b.pdf_points[i].x).epsilon(1e-12));
    CHECK(a.pdf_points[i].density == doctest::Approx(b.pdf_points[i].density).epsilon(1e-12));
  }
}

TEST_CASE("empirical_cdf hand example") {
  const IntervalSample s = make_interval_sample(2.0, {2, 2, 4});
  const EmpiricalDistribution d = empirical_cdf(s, /*scaled=*/true);
  CHECK(s.mean_interval == doctest::Approx(8.0 / 3.0));
  CHECK(d.cdf(0.74) == doctest::Approx(0.0));
  CHECK(d.cdf(0.75) == doctest::Approx(2.0 / 3.0));
  CHECK(d.cdf(1.49) == doctest::Approx(2.0 / 3.0));
  CHECK(d.cdf(1.5) == doctest::Approx(1.0));
  CHECK(d.cdf(100.0) == doctest::Approx(1.0));
  CHECK(d.cdf_left(0.75) == doctest::Approx(0.0));
}

TEST_CASE("single interval is a unit step") {
  const EmpiricalDistribution d = empirical_cdf(make_interval_sample(2.0, {5}), false);
  CHECK(d.cdf(4.999) == 0.0);
  CHECK(d.cdf(5.0) == 1.0);
}

TEST_CASE("interval and pdf csv output") {
  const IntervalSample s = make_interval_sample(2.0, {2, 3});
  std::ostringstream os;
  write_intervals_csv(os, s);
  CHECK(os.str() == "q,interval\n2,2\n2,3\n");
}
