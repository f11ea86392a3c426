#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rivol/errors.hpp"
#include "rivol/rng.hpp"
#include "rivol/synth.hpp"
#include "rivol/tick_series.hpp"
#include "rivol/volatility.hpp"

using namespace rivol;

namespace {

const std::vector<SessionWindow> kMorning = parse_session_spec({"09:30-11:30"});

TickSeries ticks_from(const std::string& body,
                      const std::vector<SessionWindow>& sessions = kMorning) {
  std::istringstream in("timestamp,price\n" + body);
  return parse_ticks(in, sessions);
}

// Ticks exactly at successive minute marks from 09:30 on one day.
TickSeries ticks_at_marks(const std::vector<double>& prices) {
  std::string body;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "2004-01-05T09:%02zu:00,%.6f\n", 30 + i, prices[i]);
    body += buf;
  }
  return ticks_from(body);
}

}  // namespace

TEST_CASE("parse_ticks basic rows") {
  const TickSeries t = ticks_from("2004-01-05T09:31:05,100.0\n2004-01-05T09:31:12,100.5\n");
  CHECK(t.size() == 2);
  CHECK(t.ticks[0].price == doctest::Approx(100.0));
  CHECK(t.ticks[1].sec_of_day == 9 * 3600 + 31 * 60 + 12);
}

TEST_CASE("parse_ticks rejects nonpositive price") {
  CHECK_THROWS_AS(ticks_from("2004-01-05T09:31:05,-1\n"), data_error);
  CHECK_THROWS_AS(ticks_from("2004-01-05T09:31:05,0\n"), data_error);
}

TEST_CASE("parse_ticks malformed rows carry line numbers") {
  try {
    ticks_from("2004-01-05T09:31:05,100.0\nnot a row\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("parse_ticks out-of-session policy") {
  const std::string body = "2004-01-05T08:00:00,99.0\n2004-01-05T09:31:00,100.0\n";
  CHECK_THROWS_AS(ticks_from(body), data_error);
  std::istringstream in("timestamp,price\n" + body);
  const TickSeries t = parse_ticks(in, kMorning, OutOfSessionPolicy::drop);
  CHECK(t.size() == 1);
}

TEST_CASE("minute_close_volatility hand values") {
  // Marks at 09:30..: prices 100, 101 -> one value ln(1.01).
  // Marks run to the session close; the price carries forward after the
  // last tick, so every later mark contributes a zero.
  const VolatilitySeries v = minute_close_volatility(ticks_at_marks({100.0, 101.0}));
  REQUIRE(v.size() == 120);
  CHECK(v.values[0] == doctest::Approx(std::log(1.01)).epsilon(1e-12));
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v.values[i] == 0.0);
  CHECK(v.stage == Stage::raw);
  CHECK(v.minute_of_day[0] == 9 * 60 + 31);
  CHECK(v.minute_of_day.back() == 11 * 60 + 30);
  CHECK(v.gaps == 0);
}

TEST_CASE("minute_close_volatility constant prices are zero") {
  const VolatilitySeries v = minute_close_volatility(ticks_at_marks({100, 100, 100, 100}));
  for (double x : v.values) CHECK(x == 0.0);
}

TEST_CASE("minute_close_volatility up-down path") {
  const VolatilitySeries v = minute_close_volatility(ticks_at_marks({100.0, 100.5, 100.0}));
  REQUIRE(v.size() == 120);
  CHECK(v.values[0] == doctest::Approx(0.004988).epsilon(1e-3));
  CHECK(v.values[1] == doctest::Approx(0.004988).epsilon(1e-3));
  for (std::size_t i = 2; i < v.size(); ++i) CHECK(v.values[i] == 0.0);
}

TEST_CASE("minute with no carry-forward source becomes a gap") {
  // First tick after the open second: the 09:31 mark has no previous price.
  const TickSeries t = ticks_from("2004-01-05T09:30:10,100.0\n2004-01-05T09:31:30,101.0\n");
  const VolatilitySeries v = minute_close_volatility(t);
  CHECK(v.gaps == 1);                 // the 09:31 mark
  CHECK(v.size() == 119);             // remaining marks carry forward
}

TEST_CASE("realized_volatility sums intra-minute magnitudes") {
  // 100 -> 100.5 -> 100 inside one minute: R2 = 2 ln(1.005), R1 sees 0.
  const TickSeries t = ticks_from(
      "2004-01-05T09:30:00,100.0\n"
      "2004-01-05T09:30:20,100.5\n"
      "2004-01-05T09:30:40,100.0\n");
  const VolatilitySeries r2 = realized_volatility(t);
  CHECK(r2.values[0] == doctest::Approx(2 * std::log(1.005)).epsilon(1e-12));
  const VolatilitySeries r1 = minute_close_volatility(t);
  CHECK(r1.values[0] == 0.0);
}

TEST_CASE("one tick per minute at marks makes R1 and R2 coincide") {
  const std::vector<double> prices = {100, 101, 100.5, 102, 101.5, 103};
  const VolatilitySeries r1 = minute_close_volatility(ticks_at_marks(prices));
  const VolatilitySeries r2 = realized_volatility(ticks_at_marks(prices));
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i)
    CHECK(r1.values[i] == doctest::Approx(r2.values[i]).epsilon(1e-14));
}

TEST_CASE("monotone ticks within a minute telescope") {
  const TickSeries t = ticks_from(
      "2004-01-05T09:30:00,100.0\n"
      "2004-01-05T09:30:15,100.2\n"
      "2004-01-05T09:30:30,100.7\n"
      "2004-01-05T09:30:45,101.0\n");
  const VolatilitySeries r2 = realized_volatility(t);
  CHECK(r2.values[0] == doctest::Approx(std::log(101.0 / 100.0)).epsilon(1e-12));
}

TEST_CASE("empty minutes yield zero realized volatility") {
  const TickSeries t = ticks_from("2004-01-05T09:30:00,100.0\n2004-01-05T09:35:30,101.0\n");
  const VolatilitySeries r2 = realized_volatility(t);
  for (std::size_t i = 0; i + 1 < 5; ++i) CHECK(r2.values[i] == 0.0);
  CHECK(r2.values[5] == doctest::Approx(std::log(1.01)));
}

TEST_CASE("intraday_pattern means and errors") {
  VolatilitySeries v;
  v.stage = Stage::raw;
  // 2 days, 2 minutes: minute 571 has values 1 and 3 -> mean 2.
  v.values = {1.0, 5.0, 3.0, 7.0};
  v.minute_of_day = {571, 572, 571, 572};
  v.day_index = {0, 0, 1, 1};
  const IntradayPattern p = intraday_pattern(v);
  CHECK(p.at(571) == doctest::Approx(2.0));
  CHECK(p.at(572) == doctest::Approx(6.0));
  CHECK_THROWS_AS(p.at(999), mismatch_error);

  VolatilitySeries one_day = v;
  one_day.day_index = {0, 0, 0, 0};
  CHECK_THROWS_AS(intraday_pattern(one_day), data_error);

  VolatilitySeries zeros = v;
  zeros.values = {0.0, 1.0, 0.0, 1.0};
  CHECK_THROWS_AS(intraday_pattern(zeros), degenerate_input_error);
}

TEST_CASE("deseasonalize makes per-minute means one") {
  // Planted pattern times noise; output minute means must be ~1 exactly.
  Rng rng(42);
  VolatilitySeries v;
  v.stage = Stage::raw;
  const int days = 7, mpd = 5;
  for (int d = 0; d < days; ++d)
    for (int m = 0; m < mpd; ++m) {
      const double pattern = 1.0 + 0.5 * std::sin(m);
      v.values.push_back(pattern * std::exp(0.3 * rng.normal()));
      v.minute_of_day.push_back(m);
      v.day_index.push_back(d);
    }
  const VolatilitySeries out = deseasonalize(v, intraday_pattern(v));
  CHECK(out.stage == Stage::deseasonalized);
  for (int m = 0; m < mpd; ++m) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out.minute_of_day[i] == m) {
        sum += out.values[i];
        ++count;
      }
    CHECK(sum / count == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Stage gate: pattern estimation is a raw-series operation only.
  CHECK_THROWS_AS(intraday_pattern(out), data_error);
}

TEST_CASE("normalize fixes population sigma to one") {
  VolatilitySeries v;
  v.stage = Stage::deseasonalized;
  v.values = {0.0, 2.0};
  v.minute_of_day = {571, 572};
  v.day_index = {0, 0};
  const VolatilitySeries out = normalize(v);
  CHECK(out.values[0] == doctest::Approx(0.0));
  CHECK(out.values[1] == doctest::Approx(2.0));  // sigma of {0,2} is already 1

  VolatilitySeries big = v;
  big.values = {1.0, 4.0, 2.0, 8.0};
  big.minute_of_day = {1, 2, 3, 4};
  big.day_index = {0, 0, 0, 0};
  const VolatilitySeries n = normalize(big);
  double mean = 0, var = 0;
  for (double x : n.values) mean += x;
  mean /= n.size();
  for (double x : n.values) var += (x - mean) * (x - mean);
  var /= n.size();
  CHECK(std::sqrt(var) == doctest::Approx(1.0).epsilon(1e-12));
  // Pure rescaling preserves ratios.
  CHECK(n.values[3] / n.values[0] == doctest::Approx(8.0).epsilon(1e-12));

  VolatilitySeries constant = v;
  constant.values = {3.0, 3.0};
  CHECK_THROWS_AS(normalize(constant), degenerate_input_error);
  CHECK_THROWS_AS(normalize(VolatilitySeries{}), data_error);
}

TEST_CASE("stage order is enforced") {
  VolatilitySeries v;
  v.stage = Stage::raw;
  v.values = {1.0, 2.0};
  v.minute_of_day = {1, 2};
  v.day_index = {0, 0};
  CHECK_THROWS_AS(normalize(v), data_error);  // must deseasonalize first
  VolatilitySeries d = v;
  d.stage = Stage::deseasonalized;
  CHECK_THROWS_AS(intraday_pattern(d), data_error);
  CHECK_THROWS_AS(deseasonalize(d, IntradayPattern{}), data_error);
}

TEST_CASE("realized volatility dominates the minute-aggregated return") {
  TickPathSpec spec;
  spec.sessions = kMorning;
  spec.days = 3;
  spec.seed = 7;
  const TickSeries t = gen_tick_path(spec);
  const VolatilitySeries r1 = minute_close_volatility(t);
  const VolatilitySeries r2 = realized_volatility(t);
  // Compare only minutes R1 kept (R2 has no gaps).
  std::size_t j = 0;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    while (j < r2.size() && (r2.day_index[j] != r1.day_index[i] ||
                             r2.minute_of_day[j] != r1.minute_of_day[i]))
      ++j;
    REQUIRE(j < r2.size());
    CHECK(r2.values[j] >= r1.values[i] - 1e-12);
  }
}

TEST_CASE("lunch-break session structure survives the pipeline") {
  TickPathSpec spec;
  spec.sessions = parse_session_spec({"09:30-11:30", "13:00-15:00"});
  spec.days = 12;
  spec.seed = 99;
  const TickSeries t = gen_tick_path(spec);
  const VolatilitySeries raw = realized_volatility(t);
  CHECK(raw.size() == static_cast<std::size_t>(12 * 240));
  const VolatilitySeries out = normalize(deseasonalize(raw, intraday_pattern(raw)));
  for (double x : out.values) CHECK(std::isfinite(x));
  CHECK(out.size() == raw.size());
}

TEST_CASE("volatility csv round trip") {
  VolatilitySeries v;
  v.stage = Stage::normalized;
  v.values = {0.5, 1.25, 3.0};
  v.minute_of_day = {571, 572, 573};
  v.day_index = {0, 0, 1};
  std::ostringstream os;
  write_volatility_csv(os, v);
  std::istringstream in(os.str());
  const VolatilitySeries back = read_volatility_csv(in);
  CHECK(back.stage == Stage::normalized);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.values[i] == v.values[i]);
    CHECK(back.minute_of_day[i] == v.minute_of_day[i]);
    CHECK(back.day_index[i] == v.day_index[i]);
  }
}
