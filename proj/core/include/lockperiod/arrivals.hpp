#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lockperiod/types.hpp"

namespace lockperiod {

using Date = std::chrono::year_month_day;

/// A single vessel arrival, truncated to the minute.
struct ArrivalRecord {
  Date date;
  int minute_of_day = 0;  // [0, 1439], minutes since midnight, truncated
  Direction direction = Direction::Down;

  /// 1-based minute index within the day; the first minute of the day maps to 1.
  int minute_index() const noexcept { return minute_of_day < 1 ? 1 : minute_of_day; }

  friend bool operator==(const ArrivalRecord&, const ArrivalRecord&) = default;
};

/// Arrival records sorted by (date, minute); ties keep input order.
class ArrivalDataset {
 public:
  ArrivalDataset() = default;
  explicit ArrivalDataset(std::vector<ArrivalRecord> records);

  const std::vector<ArrivalRecord>& records() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }
  std::size_t size() const noexcept { return records_.size(); }

  /// Distinct calendar days present, ascending.
  std::vector<Date> days() const;

  friend bool operator==(const ArrivalDataset&, const ArrivalDataset&) = default;

 private:
  std::vector<ArrivalRecord> records_;
};

/// One day, one direction: sorted arrival minutes on [1, horizon].
struct MatchingInstance {
  std::vector<std::int64_t> arrivals;
  std::int64_t horizon = 0;

  std::int64_t size() const noexcept { return static_cast<std::int64_t>(arrivals.size()); }

  /// Throws std::invalid_argument unless arrivals are sorted and lie in [1, horizon].
  void validate() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads `timestamp,direction` CSV. Timestamps are ISO-8601 date-times
/// (`YYYY-MM-DDTHH:MM[:SS[.fff]][Z]`, a space is accepted in place of `T`).
ArrivalDataset parse_arrivals(std::istream& in);

/// Writes the dataset in the same CSV format, seconds always `00`.
void write_arrivals(std::ostream& out, const ArrivalDataset& dataset);

ArrivalDataset load_arrivals(const std::string& path);
void save_arrivals(const std::string& path, const ArrivalDataset& dataset);

std::string format_date(const Date& date);
Date parse_date(const std::string& text);

/// First min(n, available) arrivals of that day and direction; horizon is the last one's minute.
MatchingInstance extract_instance(const ArrivalDataset& dataset, const Date& day,
                                  Direction direction, std::int64_t n);

/// Buckets a day's arrivals into periods of `period_minutes`; minute m lands in ceil(m / period_minutes).
PeriodArrivals bucket_to_periods(const ArrivalDataset& dataset, const Date& day,
                                 std::int64_t period_minutes, std::int64_t horizon_periods);

}  // namespace lockperiod
