#include "lockperiod/policies.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>

namespace lockperiod {

std::string to_string(PolicyId id) {
  switch (id) {
    case PolicyId::Alternating: return "alternating";
    case PolicyId::Fifo: return "fifo";
    case PolicyId::AdvFifo: return "advfifo";
    case PolicyId::RealizedPeriodic: return "realized";
  }
  return "?";
}

PolicyId parse_policy(const std::string& name) {
  std::string s;
  for (char c : name) {
    if (c != '_' && c != '-') s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (s == "alternating") return PolicyId::Alternating;
  if (s == "fifo") return PolicyId::Fifo;
  if (s == "advfifo") return PolicyId::AdvFifo;
  if (s == "realized" || s == "realizedperiodic" || s == "realisedperiodic") return PolicyId::RealizedPeriodic;
  throw std::invalid_argument("unknown policy '" + name + "'");
}

ArrivalFn arrivals_fn(const PeriodArrivals& arrivals) {
  return [arrivals](std::int64_t t) { return arrivals.at(t); };
}

ArrivalFn arrivals_fn(const PeriodicInstance& instance) {
  return [instance](std::int64_t t) { return arrival_at(instance, t); };
}

namespace {

void require_horizon(std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
}

PolicyRun finish(PolicyId id, const ArrivalFn& arrivals, std::vector<Action> trace, Direction initial) {
  PolicyRun run;
  run.policy = id;
  run.initial_alignment = initial;
  const auto horizon = static_cast<std::int64_t>(trace.size());
  run.result = simulate(arrivals, trace, initial, horizon);
  run.trace = std::move(trace);
  return run;
}

PolicyRun reactive(PolicyId id, const ArrivalFn& arrivals, std::int64_t horizon, Direction initial,
                   bool lookahead) {
  require_horizon(horizon);
  std::vector<Action> trace;
  trace.reserve(static_cast<std::size_t>(horizon));
  LockSimulator sim(initial);
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const auto now = arrivals(t);
    const bool busy = sim.queues().total() > 0 || now.total() > 0;
    const auto side = sim.alignment();
    Action a = Action::Wait;
    if (busy) {
      a = process(side);
    } else if (lookahead && t < horizon && arrivals(t + 1).on(flip(side)) > 0) {
      a = process(side);
    }
    sim.step(a, now);
    trace.push_back(a);
  }
  return finish(id, arrivals, std::move(trace), initial);
}

}  // namespace

PolicyRun alternating(const ArrivalFn& arrivals, std::int64_t horizon) {
  require_horizon(horizon);
  std::optional<PolicyRun> best;
  for (auto first : {Direction::Down, Direction::Up}) {
    std::vector<Action> trace(static_cast<std::size_t>(horizon));
    auto side = first;
    for (auto& a : trace) {
      a = process(side);
      side = flip(side);
    }
    auto run = finish(PolicyId::Alternating, arrivals, std::move(trace), first);
    if (!best || run.result.total_wait < best->result.total_wait) best = std::move(run);
  }
  return std::move(*best);
}

PolicyRun fifo(const ArrivalFn& arrivals, std::int64_t horizon, Direction initial) {
  return reactive(PolicyId::Fifo, arrivals, horizon, initial, false);
}

PolicyRun fifo_best_of_two(const ArrivalFn& arrivals, std::int64_t horizon) {
  auto down = fifo(arrivals, horizon, Direction::Down);
  auto up = fifo(arrivals, horizon, Direction::Up);
  return up.result.total_wait < down.result.total_wait ? up : down;
}

PolicyRun adv_fifo(const ArrivalFn& arrivals, std::int64_t horizon, Direction initial) {
  return reactive(PolicyId::AdvFifo, arrivals, horizon, initial, true);
}

PolicyRun realized_periodic(const Schedule& schedule, const ArrivalFn& arrivals, std::int64_t horizon) {
  require_horizon(horizon);
  if (!is_feasible(schedule)) throw std::invalid_argument("schedule is not feasible");
  std::vector<Action> trace(static_cast<std::size_t>(horizon));
  for (std::int64_t t = 1; t <= horizon; ++t) trace[static_cast<std::size_t>(t - 1)] = schedule.at(t);
  return finish(PolicyId::RealizedPeriodic, arrivals, std::move(trace), schedule.initial_alignment);
}

}  // namespace lockperiod
