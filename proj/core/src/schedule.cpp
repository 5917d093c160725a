#include "lockperiod/schedule.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace lockperiod {

void PeriodicInstance::validate() const {
  if (streams.empty()) throw std::invalid_argument("instance needs at least one stream");
  for (const auto& s : streams) {
    if (s.lambda < 1) throw std::invalid_argument("lambda must be >= 1");
    if (s.mu < 1 || s.mu > s.lambda) throw std::invalid_argument("mu must lie in [1, lambda]");
  }
}

ArrivalCounts arrival_at(const PeriodicInstance& instance, std::int64_t t) {
  ArrivalCounts out;
  for (const auto& s : instance.streams) {
    if (mod_pos(t - s.mu, s.lambda) != 0) continue;
    (s.direction == Direction::Down ? out.down : out.up) += 1;
  }
  return out;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const auto g = std::gcd(a, b);
  const auto q = a / g;
  if (q != 0 && b > std::numeric_limits<std::int64_t>::max() / q) {
    throw std::overflow_error("lcm overflows 64-bit integers");
  }
  return q * b;
}

std::int64_t lcm_period(const PeriodicInstance& instance) {
  std::int64_t l = 1;
  for (const auto& s : instance.streams) l = checked_lcm(l, s.lambda);
  return l;
}

char to_char(Action a) noexcept {
  switch (a) {
    case Action::ProcessDown: return 'D';
    case Action::ProcessUp: return 'U';
    case Action::Wait: break;
  }
  return 'W';
}

Action parse_action(char c) {
  switch (c) {
    case 'D':
    case 'd': return Action::ProcessDown;
    case 'U':
    case 'u': return Action::ProcessUp;
    case 'W':
    case 'w': return Action::Wait;
    default: throw std::invalid_argument(std::string("unknown action '") + c + "'");
  }
}

std::string to_string(std::span<const Action> actions) {
  std::string s;
  s.reserve(actions.size());
  for (auto a : actions) s.push_back(to_char(a));
  return s;
}

bool is_feasible_trace(std::span<const Action> actions, Direction initial) {
  auto align = initial;
  for (auto a : actions) {
    if (!is_processing(a)) continue;
    if (served_side(a) != align) return false;
    align = flip(align);
  }
  return true;
}

bool is_feasible(const Schedule& schedule) {
  if (schedule.actions.empty()) return false;
  if (!is_feasible_trace(schedule.actions, schedule.initial_alignment)) return false;
  std::size_t processed = 0;
  for (auto a : schedule.actions) processed += is_processing(a) ? 1 : 0;
  return processed % 2 == 0;
}

bool is_single_wait(const Schedule& schedule) {
  const auto p = schedule.actions.size();
  if (p == 0) return false;
  for (std::size_t i = 0; i < p; ++i) {
    if (schedule.actions[i] == Action::Wait && schedule.actions[(i + 1) % p] == Action::Wait) return false;
  }
  return true;
}

std::vector<Action> remove_double_waits(std::span<const Action> actions, Direction initial) {
  std::vector<Action> out(actions.begin(), actions.end());
  auto align = initial;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == Action::Wait && i + 1 < out.size() && out[i + 1] == Action::Wait) {
      out[i] = process(align);
      out[i + 1] = process(flip(align));
      ++i;
      continue;
    }
    if (is_processing(out[i])) align = flip(align);
  }
  return out;
}

std::int64_t LockSimulator::step(Action action, ArrivalCounts arrivals) {
  queues_.down += arrivals.down;
  queues_.up += arrivals.up;
  if (is_processing(action)) {
    const auto side = served_side(action);
    if (side != alignment_) {
      throw InfeasibleAction(std::string("cannot process side ") + lockperiod::to_char(side) +
                             " while aligned " + lockperiod::to_char(alignment_));
    }
    (side == Direction::Down ? queues_.down : queues_.up) = 0;
    alignment_ = flip(alignment_);
  }
  return queues_.total();
}

SimulationResult simulate(const ArrivalFn& arrivals, std::span<const Action> actions,
                          Direction initial_alignment, std::int64_t horizon,
                          std::int64_t first_period) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (actions.empty()) throw std::invalid_argument("empty action sequence");
  SimulationResult res;
  res.horizon = horizon;
  res.per_period_cost.reserve(static_cast<std::size_t>(horizon));
  LockSimulator sim(initial_alignment);
  const auto p = static_cast<std::int64_t>(actions.size());
  for (std::int64_t i = 0; i < horizon; ++i) {
    const auto a = arrivals(first_period + i);
    res.arrivals += a.total();
    const auto c = sim.step(actions[static_cast<std::size_t>(i % p)], a);
    res.per_period_cost.push_back(c);
    res.total_wait += c;
  }
  res.avg_wait_per_period = Rational(res.total_wait, horizon);
  res.avg_wait_per_vessel = res.arrivals == 0 ? Rational(0) : Rational(res.total_wait, res.arrivals);
  return res;
}

SimulationResult simulate(const PeriodicInstance& instance, const Schedule& schedule,
                          std::int64_t horizon) {
  return simulate([&](std::int64_t t) { return arrival_at(instance, t); }, schedule.actions,
                  schedule.initial_alignment, horizon);
}

SimulationResult simulate(const PeriodArrivals& arrivals, const Schedule& schedule,
                          std::int64_t horizon) {
  return simulate([&](std::int64_t t) { return arrivals.at(t); }, schedule.actions,
                  schedule.initial_alignment, horizon);
}

std::int64_t steady_state_cost(const PeriodicInstance& instance, const Schedule& schedule,
                               std::int64_t first, std::int64_t last) {
  if (!is_feasible(schedule)) throw InfeasibleAction("schedule is not cyclically feasible");
  const auto m = checked_lcm(lcm_period(instance), schedule.period());
  // One full joint cycle of warm-up; the schedule's alignment at any multiple of its
  // period before period 1 equals the initial alignment.
  const auto start = first - m - mod_pos(first - 1, schedule.period());
  LockSimulator sim(schedule.initial_alignment);
  std::int64_t total = 0;
  for (std::int64_t t = start; t <= last; ++t) {
    const auto c = sim.step(schedule.at(t), arrival_at(instance, t));
    if (t >= first) total += c;
  }
  return total;
}

std::optional<Rational> steady_state_average(const PeriodicInstance& instance,
                                             const Schedule& schedule) {
  bool serves[2] = {false, false};
  for (auto a : schedule.actions) {
    if (is_processing(a)) serves[index_of(served_side(a))] = true;
  }
  for (const auto& s : instance.streams) {
    if (!serves[index_of(s.direction)]) return std::nullopt;
  }
  const auto m = checked_lcm(lcm_period(instance), schedule.period());
  return Rational(steady_state_cost(instance, schedule, 1, m), m);
}

}  // namespace lockperiod
