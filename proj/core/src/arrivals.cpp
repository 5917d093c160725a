#include "lockperiod/arrivals.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "lockperiod/rational.hpp"

namespace lockperiod {

namespace {

bool before(const ArrivalRecord& a, const ArrivalRecord& b) {
  const auto da = std::chrono::sys_days(a.date);
  const auto db = std::chrono::sys_days(b.date);
  if (da != db) return da < db;
  return a.minute_of_day < b.minute_of_day;
}

template <typename Int>
bool read_int(std::string_view text, Int& value) {
  if (text.empty()) return false;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc{} && ptr == last;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Date read_date(std::string_view text) {
  // YYYY-MM-DD
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw std::invalid_argument("malformed date '" + std::string(text) + "'");
  }
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  if (!read_int(text.substr(0, 4), y) || !read_int(text.substr(5, 2), m) ||
      !read_int(text.substr(8, 2), d)) {
    throw std::invalid_argument("malformed date '" + std::string(text) + "'");
  }
  const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) throw std::invalid_argument("invalid calendar date '" + std::string(text) + "'");
  return date;
}

ArrivalRecord read_record(std::string_view timestamp, std::string_view direction) {
  if (timestamp.size() < 16) throw std::invalid_argument("malformed timestamp");
  const char sep = timestamp[10];
  if (sep != 'T' && sep != ' ') throw std::invalid_argument("malformed timestamp");
  ArrivalRecord rec;
  rec.date = read_date(timestamp.substr(0, 10));

  auto clock = timestamp.substr(11);
  if (!clock.empty() && (clock.back() == 'Z' || clock.back() == 'z')) clock.remove_suffix(1);
  int hh = 0;
  int mm = 0;
  if (clock.size() < 5 || clock[2] != ':' || !read_int(clock.substr(0, 2), hh) ||
      !read_int(clock.substr(3, 2), mm)) {
    throw std::invalid_argument("malformed time of day");
  }
  if (clock.size() > 5) {
    // :SS with optional fraction; seconds are validated then truncated away.
    int ss = 0;
    if (clock[5] != ':' || clock.size() < 8 || !read_int(clock.substr(6, 2), ss) || ss > 60) {
      throw std::invalid_argument("malformed seconds");
    }
    if (clock.size() > 8) {
      if (clock[8] != '.' || clock.size() == 9) throw std::invalid_argument("malformed seconds");
      for (char c : clock.substr(9)) {
        if (c < '0' || c > '9') throw std::invalid_argument("malformed seconds");
      }
    }
  }
  if (hh < 0 || hh > 23 || mm < 0 || mm > 59) throw std::invalid_argument("time out of range");
  rec.minute_of_day = hh * 60 + mm;
  rec.direction = parse_direction(direction);
  return rec;
}

}  // namespace

ArrivalDataset::ArrivalDataset(std::vector<ArrivalRecord> records) : records_(std::move(records)) {
  std::stable_sort(records_.begin(), records_.end(), before);
}

std::vector<Date> ArrivalDataset::days() const {
  std::vector<Date> out;
  for (const auto& r : records_) {
    if (out.empty() || out.back() != r.date) out.push_back(r.date);
  }
  return out;
}

void MatchingInstance::validate() const {
  if (horizon < 1) throw std::invalid_argument("matching instance horizon must be positive");
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    if (arrivals[i] < 1 || arrivals[i] > horizon) {
      throw std::invalid_argument("arrival outside [1, T]");
    }
    if (i > 0 && arrivals[i] < arrivals[i - 1]) {
      throw std::invalid_argument("arrivals must be sorted");
    }
  }
}

ArrivalDataset parse_arrivals(std::istream& in) {
  std::vector<ArrivalRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = trim(line);
    if (row.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (row != "timestamp,direction") {
        throw ParseError(line_no, "expected header 'timestamp,direction'");
      }
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected two fields");
    }
    try {
      records.push_back(read_record(trim(row.substr(0, comma)), trim(row.substr(comma + 1))));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return ArrivalDataset(std::move(records));
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

Date parse_date(const std::string& text) { return read_date(trim(text)); }

void write_arrivals(std::ostream& out, const ArrivalDataset& dataset) {
  out << "timestamp,direction\n";
  char clock[32];
  for (const auto& r : dataset.records()) {
    std::snprintf(clock, sizeof clock, "T%02d:%02d:00", r.minute_of_day / 60, r.minute_of_day % 60);
    out << format_date(r.date) << clock << ',' << to_char(r.direction) << '\n';
  }
}

ArrivalDataset load_arrivals(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_arrivals(in);
}

void save_arrivals(const std::string& path, const ArrivalDataset& dataset) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_arrivals(out, dataset);
}

MatchingInstance extract_instance(const ArrivalDataset& dataset, const Date& day,
                                  Direction direction, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  MatchingInstance inst;
  for (const auto& r : dataset.records()) {
    if (r.date != day || r.direction != direction) continue;
    inst.arrivals.push_back(r.minute_index());
    if (inst.size() == n) break;
  }
  if (inst.arrivals.empty()) {
    throw std::invalid_argument("no " + std::string(1, to_char(direction)) + " arrivals on " +
                                format_date(day));
  }
  inst.horizon = inst.arrivals.back();
  return inst;
}

PeriodArrivals bucket_to_periods(const ArrivalDataset& dataset, const Date& day,
                                 std::int64_t period_minutes, std::int64_t horizon_periods) {
  if (period_minutes < 1) throw std::invalid_argument("period_minutes must be >= 1");
  PeriodArrivals out(horizon_periods);
  for (const auto& r : dataset.records()) {
    if (r.date != day) continue;
    const auto period = ceil_div(r.minute_index(), period_minutes);
    if (period <= horizon_periods) out.add(period, r.direction);
  }
  return out;
}

}  // namespace lockperiod
