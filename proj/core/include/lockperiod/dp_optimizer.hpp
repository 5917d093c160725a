#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lockperiod/rational.hpp"
#include "lockperiod/schedule.hpp"

namespace lockperiod {

/// Lock state between periods under single-wait schedules: current alignment, waits spent
/// on this alignment since the last switch, and waits spent on the opposite alignment
/// during its last visit.
struct LockState {
  Direction alignment = Direction::Down;
  int own_waits = 0;    // 0 or 1
  int other_waits = 0;  // 0 or 1

  constexpr std::size_t index() const noexcept {
    return (index_of(alignment) << 2) | (static_cast<std::size_t>(own_waits) << 1) |
           static_cast<std::size_t>(other_waits);
  }
  static constexpr LockState from_index(std::size_t i) noexcept {
    return {(i >> 2) ? Direction::Up : Direction::Down, static_cast<int>((i >> 1) & 1u),
            static_cast<int>(i & 1u)};
  }
  friend constexpr bool operator==(const LockState&, const LockState&) = default;
};

inline constexpr std::size_t kLockStates = 8;

/// States that can precede `s` one period earlier. A state with own_waits == 0 was entered
/// by a switch; the state before it was on the opposite alignment and its own wait count
/// becomes `s.other_waits`. Otherwise the previous period was a wait.
std::vector<LockState> predecessors(const LockState& s);

enum class CostMode {
  /// Batch processed at period t holds arrivals from (t - w, t]; an arrival at t waits 0.
  Canonical,
  /// Window shifted one period back: weights (i - 1) on arrivals at t - i, i = 1..w.
  Literal,
};

/// Waiting charged to the transition prev -> next at period t. Zero for a wait; for a
/// switch, the batch of side prev.alignment spanning w = 2 + prev.own_waits + prev.other_waits
/// periods. Throws std::invalid_argument when prev is not a predecessor of next.
std::int64_t transition_cost(const PeriodicInstance& instance, std::int64_t t, const LockState& prev,
                             const LockState& next, CostMode mode = CostMode::Canonical);

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::int64_t required, std::int64_t cap)
      : std::runtime_error("schedule horizon " + std::to_string(required) + " exceeds cap " +
                           std::to_string(cap) + "; use the rolling approximation instead"),
        required_(required) {}
  std::int64_t required() const noexcept { return required_; }

 private:
  std::int64_t required_;
};

struct DpOptions {
  CostMode mode = CostMode::Canonical;
  std::int64_t cap = 1'000'000;  // maximum schedule length 8 * lcm
  unsigned jobs = 1;             // lanes (initial states) solved concurrently
};

struct OptimalResult {
  Rational avg_cost;          // vessel-periods per period
  std::int64_t total_cost = 0;
  std::int64_t horizon = 0;   // 8 * hyper_period
  std::int64_t hyper_period = 0;
  Schedule schedule;
  LockState initial_state;    // state of the lock entering period 1
  CostMode mode = CostMode::Canonical;
};

/// Optimal periodic schedule of length 8 * lcm(lambda) over single-wait lock states.
/// In canonical mode the reconstructed schedule is re-simulated and must reproduce
/// avg_cost exactly; a mismatch throws std::logic_error.
OptimalResult solve(const PeriodicInstance& instance, const DpOptions& options = {});

}  // namespace lockperiod
