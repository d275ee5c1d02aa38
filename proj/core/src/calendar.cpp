#include "statrules/calendar.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace statrules {

namespace {

// Howard Hinnant's civil-date algorithms.
long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

void civil_from_days(long z, int& y, int& m, int& d) {
  z += 719468;
  const long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long yr = static_cast<long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yr + (m <= 2));
}

}  // namespace

long day_number(int ymd) {
  return days_from_civil(ymd / 10000, (ymd / 100) % 100, ymd % 100);
}

int ymd_from_day_number(long days) {
  int y, m, d;
  civil_from_days(days, y, m, d);
  return y * 10000 + m * 100 + d;
}

int weekday(int ymd) {
  long z = day_number(ymd);
  return static_cast<int>(((z % 7) + 10) % 7);  // 1970-01-01 was a Thursday
}

bool is_valid_ymd(int ymd) {
  int y = ymd / 10000, m = (ymd / 100) % 100, d = ymd % 100;
  if (y < 1900 || y > 2200 || m < 1 || m > 12 || d < 1) return false;
  return ymd_from_day_number(days_from_civil(y, m, d)) == ymd;
}

int next_weekday(int ymd) {
  long z = day_number(ymd);
  do {
    ++z;
  } while (((z % 7) + 10) % 7 >= 5);
  return ymd_from_day_number(z);
}

SessionCalendar::SessionCalendar(std::vector<CalendarEntry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("calendar: no entries");
  std::sort(entries_.begin(), entries_.end(),
            [](const CalendarEntry& a, const CalendarEntry& b) {
              return a.effective_date < b.effective_date;
            });
  for (const auto& e : entries_) {
    if (e.windows.empty())
      throw std::invalid_argument("calendar: entry without session windows");
    int prev_close = -1;
    for (const auto& w : e.windows) {
      if (w.open >= w.close || w.open < 0 || w.close > 86400)
        throw std::invalid_argument("calendar: bad session window");
      if (w.open <= prev_close)
        throw std::invalid_argument("calendar: overlapping session windows");
      prev_close = w.close;
    }
  }
}

const std::vector<SessionWindow>& SessionCalendar::windows_for(int ymd) const {
  const CalendarEntry* best = nullptr;
  for (const auto& e : entries_) {
    if (e.effective_date <= ymd) best = &e;
  }
  if (!best)
    throw std::out_of_range("calendar: no entry effective on date " +
                            std::to_string(ymd));
  return best->windows;
}

bool SessionCalendar::in_session(int ymd, int sec) const {
  for (const auto& w : windows_for(ymd))
    if (sec >= w.open && sec <= w.close) return true;
  return false;
}

int SessionCalendar::session_seconds(int ymd) const {
  int total = 0;
  for (const auto& w : windows_for(ymd)) total += w.close - w.open;
  return total;
}

SessionCalendar SessionCalendar::csi300_default() {
  auto hm = [](int h, int m) { return h * 3600 + m * 60; };
  return SessionCalendar({
      {19000101, {{hm(9, 15), hm(11, 30)}, {hm(13, 0), hm(15, 15)}}},
      {20160101, {{hm(9, 30), hm(11, 30)}, {hm(13, 0), hm(15, 0)}}},
  });
}

int parse_hhmm(const std::string& s) {
  int h = 0, m = 0, sec = 0;
  int n = std::sscanf(s.c_str(), "%d:%d:%d", &h, &m, &sec);
  if (n < 2 || h < 0 || h > 24 || m < 0 || m > 59 || sec < 0 || sec > 59)
    throw std::invalid_argument("bad time of day: " + s);
  return h * 3600 + m * 60 + sec;
}

std::string format_time(int sec) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", sec / 3600,
                (sec / 60) % 60, sec % 60);
  return buf;
}

}  // namespace statrules
