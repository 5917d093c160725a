#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lockperiod/rational.hpp"
#include "lockperiod/types.hpp"

namespace lockperiod {

/// One stream of the scheduling problem, in lock-period units: arrivals at t = mu (mod lambda).
struct PeriodicStream {
  Direction direction = Direction::Down;
  std::int64_t lambda = 1;
  std::int64_t mu = 1;

  friend bool operator==(const PeriodicStream&, const PeriodicStream&) = default;
};

struct PeriodicInstance {
  std::vector<PeriodicStream> streams;

  /// Throws std::invalid_argument unless k >= 1, lambda >= 1 and 1 <= mu <= lambda.
  void validate() const;

  friend bool operator==(const PeriodicInstance&, const PeriodicInstance&) = default;
};

/// Arrivals per side in period t. Defined for every integer t, which gives the cyclic
/// extension to t <= 0 for free.
ArrivalCounts arrival_at(const PeriodicInstance& instance, std::int64_t t);

/// lcm of all periodicities. Throws std::overflow_error when it does not fit in 63 bits.
std::int64_t lcm_period(const PeriodicInstance& instance);

/// Overflow-checked lcm helper shared by the optimizers.
std::int64_t checked_lcm(std::int64_t a, std::int64_t b);

enum class Action : std::uint8_t { ProcessDown, ProcessUp, Wait };

constexpr Action process(Direction d) noexcept {
  return d == Direction::Down ? Action::ProcessDown : Action::ProcessUp;
}
constexpr bool is_processing(Action a) noexcept { return a != Action::Wait; }
/// Side served by a processing action.
constexpr Direction served_side(Action a) noexcept {
  return a == Action::ProcessDown ? Direction::Down : Direction::Up;
}
char to_char(Action a) noexcept;
Action parse_action(char c);
std::string to_string(std::span<const Action> actions);

/// A finite action sequence, repeated cyclically: sigma(t) = actions[(t - 1) mod period].
struct Schedule {
  std::vector<Action> actions;
  Direction initial_alignment = Direction::Down;

  std::int64_t period() const noexcept { return static_cast<std::int64_t>(actions.size()); }
  Action at(std::int64_t t) const { return actions[static_cast<std::size_t>(mod_pos(t - 1, period()))]; }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// True iff processing actions alternate from `initial` over the finite trace.
bool is_feasible_trace(std::span<const Action> actions, Direction initial);

/// True iff the schedule alternates when repeated forever: the trace is feasible from the
/// initial alignment and every cycle returns the lock to it.
bool is_feasible(const Schedule& schedule);

/// No two cyclically consecutive waits.
bool is_single_wait(const Schedule& schedule);

/// Replaces every Wait,Wait pair by processing the current side then the other one.
/// The lock ends up aligned the same way and no queue grows.
std::vector<Action> remove_double_waits(std::span<const Action> actions, Direction initial);

struct QueueState {
  std::int64_t down = 0;
  std::int64_t up = 0;

  std::int64_t on(Direction d) const noexcept { return d == Direction::Down ? down : up; }
  std::int64_t total() const noexcept { return down + up; }
  friend bool operator==(const QueueState&, const QueueState&) = default;
};

class InfeasibleAction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Queue recurrence for one lock: a processing action empties its side (including that
/// period's arrivals) and flips the alignment; the waiting cost of a period is the number
/// of vessels still queued at its end.
class LockSimulator {
 public:
  explicit LockSimulator(Direction alignment, QueueState queues = {})
      : alignment_(alignment), queues_(queues) {}

  /// Applies one period. Throws InfeasibleAction when processing the side the lock is not on.
  std::int64_t step(Action action, ArrivalCounts arrivals);

  Direction alignment() const noexcept { return alignment_; }
  const QueueState& queues() const noexcept { return queues_; }

 private:
  Direction alignment_;
  QueueState queues_;
};

struct SimulationResult {
  std::int64_t horizon = 0;
  std::vector<std::int64_t> per_period_cost;
  std::int64_t total_wait = 0;   // vessel-periods
  std::int64_t arrivals = 0;     // vessels arriving within the horizon
  Rational avg_wait_per_period;  // total_wait / horizon
  Rational avg_wait_per_vessel;  // total_wait / arrivals, 0 when nothing arrived
};

using ArrivalFn = std::function<ArrivalCounts(std::int64_t)>;

/// Runs periods first_period .. first_period + horizon - 1 from empty queues. The action
/// sequence is applied cyclically; pass exactly `horizon` actions for a plain trace.
SimulationResult simulate(const ArrivalFn& arrivals, std::span<const Action> actions,
                          Direction initial_alignment, std::int64_t horizon,
                          std::int64_t first_period = 1);

SimulationResult simulate(const PeriodicInstance& instance, const Schedule& schedule,
                          std::int64_t horizon);
SimulationResult simulate(const PeriodArrivals& arrivals, const Schedule& schedule,
                          std::int64_t horizon);

/// Long-run average waiting per period of a feasible schedule on periodic arrivals.
/// Empty when a side with arrivals is never processed (the average diverges).
std::optional<Rational> steady_state_average(const PeriodicInstance& instance,
                                             const Schedule& schedule);

/// Total waiting on periods [first, last] once the cyclic schedule is in steady state.
std::int64_t steady_state_cost(const PeriodicInstance& instance, const Schedule& schedule,
                               std::int64_t first, std::int64_t last);

}  // namespace lockperiod
