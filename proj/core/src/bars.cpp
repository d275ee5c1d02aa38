#include "statrules/bars.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace statrules {

std::string format_timestamp(const Timestamp& ts) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d",
                ts.date / 10000, (ts.date / 100) % 100, ts.date % 100,
                ts.sec / 3600, (ts.sec / 60) % 60, ts.sec % 60);
  return buf;
}

Timestamp parse_timestamp(const std::string& s, TimestampFormat fmt) {
  int y, mo, d, h, mi, sec;
  if (fmt == TimestampFormat::Iso8601 || fmt == TimestampFormat::Auto) {
    char sep;
    if (std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h,
                    &mi, &sec) == 7 &&
        (sep == 'T' || sep == ' ')) {
      Timestamp ts{y * 10000 + mo * 100 + d, h * 3600 + mi * 60 + sec};
      if (!is_valid_ymd(ts.date) || ts.sec < 0 || ts.sec >= 86400)
        throw std::invalid_argument("bad timestamp: " + s);
      return ts;
    }
    if (fmt == TimestampFormat::Iso8601)
      throw std::invalid_argument("bad ISO-8601 timestamp: " + s);
  }
  int date, tod;
  if (std::sscanf(s.c_str(), "%d %d", &date, &tod) == 2) {
    Timestamp ts{date, (tod / 10000) * 3600 + ((tod / 100) % 100) * 60 +
                           tod % 100};
    if (!is_valid_ymd(ts.date) || tod % 100 >= 60 || (tod / 100) % 100 >= 60 ||
        tod / 10000 >= 24)
      throw std::invalid_argument("bad timestamp: " + s);
    return ts;
  }
  throw std::invalid_argument("unrecognized timestamp: " + s);
}

std::vector<int> bar_slots(const SessionCalendar& cal, int ymd, int frequency) {
  std::vector<int> slots;
  for (const auto& w : cal.windows_for(ymd))
    for (int t = w.open + frequency; t <= w.close; t += frequency)
      slots.push_back(t);
  return slots;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& f : out) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(0, 1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
  }
  return out;
}

[[noreturn]] void row_error(const std::string& name, std::size_t line_no,
                            const std::string& what) {
  throw std::runtime_error(name + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

BarSeries parse_bars(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bar file: " + path);
  return parse_bars(in, opts, path);
}

BarSeries parse_bars(std::istream& in, const ParseOptions& opts,
                     const std::string& name) {
  if (opts.frequency < 1)
    throw std::invalid_argument("parse_bars: frequency must be positive");

  BarSeries series;
  series.frequency = opts.frequency;

  std::string line;
  std::size_t line_no = 0;
  int ts_col = 0, price_col = 1;
  bool first_data_line = true;

  int cur_date = -1;
  std::vector<int> slots;          // slot grid of cur_date
  long cur_slot = -1;              // index into slots of last accepted bar
  double last_price = std::nan("");

  auto begin_day = [&](int date) {
    cur_date = date;
    slots = bar_slots(opts.calendar, date, opts.frequency);
    cur_slot = -1;
    series.day_start.push_back(series.bars.size());
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv(line);

    if (first_data_line) {
      first_data_line = false;
      // Optional header: locate configured column names.
      bool header = false;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == opts.timestamp_column) {
          ts_col = static_cast<int>(i);
          header = true;
        }
        if (fields[i] == opts.price_column) {
          price_col = static_cast<int>(i);
          header = true;
        }
      }
      if (header) continue;
    }

    if (static_cast<int>(fields.size()) <= std::max(ts_col, price_col))
      row_error(name, line_no, "malformed row (expected timestamp,price)");

    Timestamp ts;
    try {
      ts = parse_timestamp(fields[ts_col], opts.timestamp_format);
    } catch (const std::exception& e) {
      row_error(name, line_no, e.what());
    }

    double price;
    try {
      std::size_t used = 0;
      price = std::stod(fields[price_col], &used);
      if (used != fields[price_col].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      row_error(name, line_no, "malformed price: " + fields[price_col]);
    }
    if (!(price > 0.0) || !std::isfinite(price))
      row_error(name, line_no,
                "non-positive price: " + fields[price_col]);

    if (!series.bars.empty() && ts <= series.bars.back().ts)
      row_error(name, line_no, "non-monotone timestamp " + format_timestamp(ts));

    if (ts.date != cur_date) begin_day(ts.date);

    auto it = std::lower_bound(slots.begin(), slots.end(), ts.sec);
    if (it == slots.end() || *it != ts.sec) {
      if (!opts.calendar.in_session(ts.date, ts.sec))
        row_error(name, line_no,
                  "timestamp outside session windows: " + format_timestamp(ts));
      row_error(name, line_no, "timestamp not on the " +
                                   std::to_string(opts.frequency) +
                                   "s bar grid: " + format_timestamp(ts));
    }
    long slot_idx = it - slots.begin();

    if (cur_slot >= 0 && slot_idx != cur_slot + 1) {
      if (opts.missing == MissingBarPolicy::Reject)
        row_error(name, line_no,
                  "missing bar(s) before " + format_timestamp(ts));
      for (long s = cur_slot + 1; s < slot_idx; ++s)
        series.bars.push_back(
            {{cur_date, slots[static_cast<std::size_t>(s)]}, last_price});
    }

    series.bars.push_back({ts, price});
    cur_slot = slot_idx;
    last_price = price;
  }

  return series;
}

void write_bars_csv(const BarSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "timestamp,price\n";
  char buf[64];
  for (const auto& b : series.bars) {
    std::snprintf(buf, sizeof(buf), "%.10f", b.price);
    out << format_timestamp(b.ts) << ',' << buf << '\n';
  }
}

BarSeries resample(const BarSeries& series, int target_frequency,
                   const SessionCalendar& cal) {
  if (target_frequency < series.frequency ||
      target_frequency % series.frequency != 0)
    throw std::invalid_argument(
        "resample: target frequency must be a multiple of source frequency");
  if (target_frequency == series.frequency) return series;

  BarSeries out;
  out.frequency = target_frequency;

  for (std::size_t d = 0; d < series.day_count(); ++d) {
    auto [first, last] = series.day_range(d);
    int date = series.bars[first].ts.date;
    out.day_start.push_back(out.bars.size());

    auto slots = bar_slots(cal, date, target_frequency);
    std::size_t i = first;
    for (int slot : slots) {
      const Bar* pick = nullptr;
      while (i < last && series.bars[i].ts.sec <= slot) {
        pick = &series.bars[i];
        ++i;
      }
      if (pick && pick->ts.sec > slot - target_frequency)
        out.bars.push_back({{date, slot}, pick->price});
    }
    if (out.day_start.back() == out.bars.size()) out.day_start.pop_back();
  }
  return out;
}

bool LogReturnSeries::defined(std::size_t i) const {
  return i < values.size() && std::isfinite(values[i]);
}

LogReturnSeries log_returns(const BarSeries& series) {
  if (series.size() < 2)
    throw std::invalid_argument("log_returns: need at least 2 bars");
  LogReturnSeries out;
  out.values.assign(series.size(), std::nan(""));
  out.day_start = series.day_start;
  for (std::size_t d = 0; d < series.day_count(); ++d) {
    auto [first, last] = series.day_range(d);
    for (std::size_t i = first + 1; i < last; ++i)
      out.values[i] =
          std::log(series.bars[i].price) - std::log(series.bars[i - 1].price);
  }
  return out;
}

}  // namespace statrules
