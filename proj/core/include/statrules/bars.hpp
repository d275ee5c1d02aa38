#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "statrules/calendar.hpp"

namespace statrules {

struct Timestamp {
  int date = 0;  // yyyymmdd
  int sec = 0;   // seconds of day

  friend bool operator==(const Timestamp&, const Timestamp&) = default;
  friend auto operator<=>(const Timestamp& a, const Timestamp& b) {
    if (auto c = a.date <=> b.date; c != 0) return c;
    return a.sec <=> b.sec;
  }
};

std::string format_timestamp(const Timestamp& ts);

enum class TimestampFormat { Auto, Iso8601, Compact };  // Compact: "yyyyMMdd HHmmss"

Timestamp parse_timestamp(const std::string& s, TimestampFormat fmt);

// Timestamps mark bar END: a bar stamped t covers (t - frequency, t].
struct Bar {
  Timestamp ts;
  double price = 0.0;
};

struct BarSeries {
  int frequency = 0;  // seconds per bar
  std::vector<Bar> bars;
  std::vector<std::size_t> day_start;  // index of first bar of each trading day

  std::size_t size() const { return bars.size(); }
  std::size_t day_count() const { return day_start.size(); }
  // [first, last) bar index range of day d
  std::pair<std::size_t, std::size_t> day_range(std::size_t d) const {
    return {day_start[d],
            d + 1 < day_start.size() ? day_start[d + 1] : bars.size()};
  }
};

enum class MissingBarPolicy { Reject, ForwardFill };

struct ParseOptions {
  int frequency = 15;
  SessionCalendar calendar = SessionCalendar::csi300_default();
  TimestampFormat timestamp_format = TimestampFormat::Auto;
  MissingBarPolicy missing = MissingBarPolicy::Reject;
  std::string timestamp_column = "timestamp";
  std::string price_column = "price";
};

// Expected bar-end slots for one date: open+f, open+2f, ..., close per window.
std::vector<int> bar_slots(const SessionCalendar& cal, int ymd, int frequency);

BarSeries parse_bars(const std::string& path, const ParseOptions& opts);
BarSeries parse_bars(std::istream& in, const ParseOptions& opts,
                     const std::string& name = "<stream>");

void write_bars_csv(const BarSeries& series, const std::string& path);

// Last price in each target bucket; target must be a multiple of the source
// frequency. Partial trailing buckets within a session window are dropped.
BarSeries resample(const BarSeries& series, int target_frequency,
                   const SessionCalendar& cal);

// Per-bar log returns. values[i] = ln P_i - ln P_{i-1}; the first bar of each
// trading day has no return (NaN) so overnight gaps never enter the series.
struct LogReturnSeries {
  std::vector<double> values;  // aligned with bars
  std::vector<std::size_t> day_start;

  bool defined(std::size_t i) const;
};

LogReturnSeries log_returns(const BarSeries& series);

}  // namespace statrules
