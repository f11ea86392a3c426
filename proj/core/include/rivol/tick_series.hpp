#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rivol {

// One intraday trading window, in seconds from midnight. [open, close]
struct SessionWindow {
  int open_sec = 0;
  int close_sec = 0;
};

// Parses "HH:MM-HH:MM" windows, e.g. {"09:30-11:30", "13:00-15:00"};
// each entry may itself be a comma-joined list.
std::vector<SessionWindow> parse_session_spec(const std::vector<std::string>& windows);

struct Tick {
  std::int32_t day = 0;      // 0-based index of the calendar day within the file
  std::int32_t sec_of_day = 0;
  double price = 0.0;
};

struct TickSeries {
  std::vector<Tick> ticks;               // ordered by (day, sec_of_day)
  std::vector<SessionWindow> sessions;   // the daily session layout
  std::vector<std::string> dates;        // ISO date per day index

  std::size_t size() const { return ticks.size(); }
  int minutes_per_day() const;
};

enum class OutOfSessionPolicy { reject, drop };

// Reads the tick CSV wire format: header "timestamp,price", ISO-8601
// timestamps at second resolution. Throws parse_error / data_error.
TickSeries parse_ticks(std::istream& source,
                       const std::vector<SessionWindow>& sessions,
                       OutOfSessionPolicy policy = OutOfSessionPolicy::reject);

void write_ticks_csv(std::ostream& out, const TickSeries& ticks);

}  // namespace rivol
