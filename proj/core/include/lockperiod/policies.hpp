#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lockperiod/schedule.hpp"

namespace lockperiod {

enum class PolicyId : std::uint8_t { Alternating, Fifo, AdvFifo, RealizedPeriodic };

std::string to_string(PolicyId id);
/// Accepts alternating, fifo, advfifo, realized (and realizedperiodic).
PolicyId parse_policy(const std::string& name);

struct PolicyRun {
  PolicyId policy = PolicyId::Alternating;
  std::vector<Action> trace;  // periods 1..horizon
  SimulationResult result;
  Direction initial_alignment = Direction::Down;

  /// Average wait per vessel in minutes.
  Rational minutes_per_vessel(std::int64_t period_minutes) const {
    return result.avg_wait_per_vessel * period_minutes;
  }
};

/// Arrival lookups holding their own copy of the data.
ArrivalFn arrivals_fn(const PeriodArrivals& arrivals);
ArrivalFn arrivals_fn(const PeriodicInstance& instance);

/// Better of the two strict alternations D,U,D,... and U,D,U,...; Down first on a tie.
PolicyRun alternating(const ArrivalFn& arrivals, std::int64_t horizon);

/// Processes whenever a vessel waits or arrives on either side, otherwise waits.
PolicyRun fifo(const ArrivalFn& arrivals, std::int64_t horizon, Direction initial = Direction::Down);

/// fifo from both alignments, keeping the cheaper run (Down on a tie).
PolicyRun fifo_best_of_two(const ArrivalFn& arrivals, std::int64_t horizon);

/// fifo, plus an empty lockage when idle and a vessel arrives next period on the other side.
PolicyRun adv_fifo(const ArrivalFn& arrivals, std::int64_t horizon, Direction initial = Direction::Down);

/// Replays a periodic schedule from period 1 as published; no rotation or re-anchoring.
PolicyRun realized_periodic(const Schedule& schedule, const ArrivalFn& arrivals, std::int64_t horizon);

}  // namespace lockperiod
