#pragma once

#include <string>
#include <vector>

namespace statrules {

// Dates are plain yyyymmdd integers; intraday times are seconds after midnight.

/// Days since 1970-01-01 for a yyyymmdd date.
long day_number(int ymd);

/// Inverse of day_number.
int ymd_from_day_number(long days);

/// 0 = Monday ... 6 = Sunday.
int weekday(int ymd);

bool is_valid_ymd(int ymd);

/// Next calendar date that falls on a weekday (Mon-Fri), strictly after `ymd`.
int next_weekday(int ymd);

/// One contiguous trading window, [open, close] in seconds of day.
struct SessionWindow {
  int open = 0;
  int close = 0;
};

struct CalendarEntry {
  int effective_date = 0;  // applies from this date onward
  std::vector<SessionWindow> windows;
};

// Effective-dated session windows. Exactly one entry applies to any date:
// the latest entry whose effective_date <= date.
class SessionCalendar {
 public:
  SessionCalendar() = default;
  explicit SessionCalendar(std::vector<CalendarEntry> entries);

  const std::vector<SessionWindow>& windows_for(int ymd) const;
  bool in_session(int ymd, int sec) const;
  int session_seconds(int ymd) const;

  const std::vector<CalendarEntry>& entries() const { return entries_; }

  // 09:15-11:30 & 13:00-15:15 before 2016-01-01, 09:30-11:30 & 13:00-15:00 after.
  static SessionCalendar csi300_default();

 private:
  std::vector<CalendarEntry> entries_;
};

int parse_hhmm(const std::string& s);
std::string format_time(int sec);

}  // namespace statrules
