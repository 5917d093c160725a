#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lockperiod {

/// Side of the lock a vessel arrives on, and the side the lock is aligned to.
enum class Direction : std::uint8_t { Down = 0, Up = 1 };

constexpr Direction flip(Direction d) noexcept {
  return d == Direction::Down ? Direction::Up : Direction::Down;
}

constexpr char to_char(Direction d) noexcept { return d == Direction::Down ? 'D' : 'U'; }

inline Direction parse_direction(std::string_view token) {
  if (token == "D" || token == "d") return Direction::Down;
  if (token == "U" || token == "u") return Direction::Up;
  throw std::invalid_argument("unknown direction token '" + std::string(token) + "'");
}

constexpr std::size_t index_of(Direction d) noexcept { return static_cast<std::size_t>(d); }

/// Arrivals observed in one period, per side.
struct ArrivalCounts {
  std::int64_t down = 0;
  std::int64_t up = 0;

  constexpr std::int64_t on(Direction d) const noexcept {
    return d == Direction::Down ? down : up;
  }
  constexpr std::int64_t total() const noexcept { return down + up; }
  friend constexpr bool operator==(const ArrivalCounts&, const ArrivalCounts&) = default;
};

/// Per-period arrival counts on a finite grid. Period t (1-based) is stored at index t-1;
/// periods outside [1, horizon()] carry no arrivals.
class PeriodArrivals {
 public:
  PeriodArrivals() = default;
  explicit PeriodArrivals(std::int64_t horizon)
      : down_(static_cast<std::size_t>(horizon), 0), up_(static_cast<std::size_t>(horizon), 0) {
    if (horizon < 0) throw std::invalid_argument("negative horizon");
  }

  std::int64_t horizon() const noexcept { return static_cast<std::int64_t>(down_.size()); }

  ArrivalCounts at(std::int64_t t) const noexcept {
    if (t < 1 || t > horizon()) return {};
    const auto i = static_cast<std::size_t>(t - 1);
    return {down_[i], up_[i]};
  }

  void add(std::int64_t t, Direction d, std::int64_t count = 1) {
    if (t < 1 || t > horizon()) throw std::out_of_range("period outside horizon");
    auto& side = d == Direction::Down ? down_ : up_;
    side[static_cast<std::size_t>(t - 1)] += count;
  }

  std::int64_t total() const noexcept {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < down_.size(); ++i) sum += down_[i] + up_[i];
    return sum;
  }

  friend bool operator==(const PeriodArrivals&, const PeriodArrivals&) = default;

 private:
  std::vector<std::int64_t> down_;
  std::vector<std::int64_t> up_;
};

}  // namespace lockperiod
