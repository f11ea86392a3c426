#include "rivol/tick_series.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rivol/errors.hpp"

namespace rivol {

namespace {

int parse_hhmm(const std::string& s, std::size_t pos) {
  if (pos + 5 > s.size() || s[pos + 2] != ':') throw config_error("bad HH:MM in session spec: " + s);
  const int h = (s[pos] - '0') * 10 + (s[pos + 1] - '0');
  const int m = (s[pos + 3] - '0') * 10 + (s[pos + 4] - '0');
  if (h < 0 || h > 23 || m < 0 || m > 59) throw config_error("bad HH:MM in session spec: " + s);
  return (h * 60 + m) * 60;
}

bool in_session(const std::vector<SessionWindow>& sessions, int sec) {
  return std::any_of(sessions.begin(), sessions.end(), [sec](const SessionWindow& w) {
    return sec >= w.open_sec && sec <= w.close_sec;
  });
}

}  // namespace

std::vector<SessionWindow> parse_session_spec(const std::vector<std::string>& windows) {
  if (windows.empty()) throw config_error("session spec is empty");
  std::vector<std::string> flat;
  for (const auto& entry : windows) {
    std::stringstream ss(entry);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) flat.push_back(item);
  }
  std::vector<SessionWindow> out;
  for (const auto& w : flat) {
    if (w.size() != 11 || w[5] != '-') throw config_error("bad session window: " + w);
    SessionWindow sw{parse_hhmm(w, 0), parse_hhmm(w, 6)};
    if (sw.close_sec <= sw.open_sec) throw config_error("session window not increasing: " + w);
    if (sw.open_sec % 60 != 0 || sw.close_sec % 60 != 0)
      throw config_error("session boundaries must be whole minutes: " + w);
    out.push_back(sw);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.open_sec < b.open_sec; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].open_sec < out[i - 1].close_sec)
      throw config_error("session windows overlap");
  return out;
}

int TickSeries::minutes_per_day() const {
  int total = 0;
  for (const auto& w : sessions) total += (w.close_sec - w.open_sec) / 60;
  return total;
}

TickSeries parse_ticks(std::istream& source,
                       const std::vector<SessionWindow>& sessions,
                       OutOfSessionPolicy policy) {
  TickSeries out;
  out.sessions = sessions;

  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(source, line)) throw parse_error("empty input", 0);
  ++lineno;
  if (line.size() && line.back() == '\r') line.pop_back();
  if (line != "timestamp,price") throw parse_error("expected header 'timestamp,price'", lineno);

  std::string last_date;
  int last_sec = -1;
  while (std::getline(source, line)) {
    ++lineno;
    if (line.size() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    // timestamp: YYYY-MM-DD[T ]HH:MM:SS
    if (comma == std::string::npos || comma != 19)
      throw parse_error("malformed row: " + line, lineno);
    const std::string ts = line.substr(0, comma);
    if (ts[4] != '-' || ts[7] != '-' || (ts[10] != 'T' && ts[10] != ' ') ||
        ts[13] != ':' || ts[16] != ':')
      throw parse_error("malformed timestamp: " + ts, lineno);
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u, 11u, 12u, 14u, 15u, 17u, 18u})
      if (ts[i] < '0' || ts[i] > '9') throw parse_error("malformed timestamp: " + ts, lineno);
    const std::string date = ts.substr(0, 10);
    const int hh = std::stoi(ts.substr(11, 2));
    const int mm = std::stoi(ts.substr(14, 2));
    const int ss = std::stoi(ts.substr(17, 2));
    if (hh > 23 || mm > 59 || ss > 59) throw parse_error("malformed timestamp: " + ts, lineno);
    const int sec = hh * 3600 + mm * 60 + ss;

    double price = 0.0;
    const char* b = line.data() + comma + 1;
    const char* e = line.data() + line.size();
    const auto [p, ec] = std::from_chars(b, e, price);
    if (ec != std::errc() || p != e) throw parse_error("malformed price: " + line, lineno);
    if (!(price > 0.0)) throw data_error("nonpositive price at line " + std::to_string(lineno));

    if (date != last_date) {
      if (!out.dates.empty() && date < out.dates.back())
        throw parse_error("dates out of order: " + date, lineno);
      out.dates.push_back(date);
      last_date = date;
      last_sec = -1;
    }
    if (sec <= last_sec)
      throw parse_error("timestamps not strictly increasing within day", lineno);
    last_sec = sec;

    if (!in_session(sessions, sec)) {
      if (policy == OutOfSessionPolicy::reject)
        throw data_error("tick outside declared sessions at line " + std::to_string(lineno));
      continue;
    }
    out.ticks.push_back({static_cast<std::int32_t>(out.dates.size() - 1), sec, price});
  }
  return out;
}

void write_ticks_csv(std::ostream& out, const TickSeries& ticks) {
  out << "timestamp,price\n";
  char buf[64];
  for (const auto& t : ticks.ticks) {
    const int h = t.sec_of_day / 3600, m = (t.sec_of_day / 60) % 60, s = t.sec_of_day % 60;
    std::snprintf(buf, sizeof(buf), "%s %02d:%02d:%02d,%.17g",
                  ticks.dates.at(t.day).c_str(), h, m, s, t.price);
    out << buf << '\n';
  }
}

}  // namespace rivol
