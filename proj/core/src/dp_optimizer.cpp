#include "lockperiod/dp_optimizer.hpp"

#include <algorithm>
#include <limits>
#include <thread>

namespace lockperiod {

std::vector<LockState> predecessors(const LockState& s) {
  if (s.own_waits == 0) {
    const auto other = flip(s.alignment);
    return {{other, s.other_waits, 0}, {other, s.other_waits, 1}};
  }
  return {{s.alignment, s.own_waits - 1, s.other_waits}};
}

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

bool is_predecessor(const LockState& prev, const LockState& next) {
  const auto preds = predecessors(next);
  return std::find(preds.begin(), preds.end(), prev) != preds.end();
}

// Arrivals per side over one cycle of length T, index t - 1 for t in [1, T].
class CyclicArrivals {
 public:
  CyclicArrivals(const PeriodicInstance& instance, std::int64_t cycle) : cycle_(cycle) {
    for (auto& side : by_side_) side.resize(static_cast<std::size_t>(cycle));
    for (std::int64_t t = 1; t <= cycle; ++t) {
      const auto a = arrival_at(instance, t);
      by_side_[0][static_cast<std::size_t>(t - 1)] = a.down;
      by_side_[1][static_cast<std::size_t>(t - 1)] = a.up;
    }
  }

  std::int64_t at(Direction d, std::int64_t t) const {
    return by_side_[index_of(d)][static_cast<std::size_t>(mod_pos(t - 1, cycle_))];
  }

 private:
  std::int64_t cycle_;
  std::array<std::vector<std::int64_t>, 2> by_side_;
};

template <typename ArrivalLookup>
std::int64_t window_cost(const ArrivalLookup& a, std::int64_t t, const LockState& prev,
                         const LockState& next, CostMode mode) {
  if (next.own_waits == 1) return 0;
  const auto side = prev.alignment;
  const int w = 2 + prev.own_waits + prev.other_waits;
  std::int64_t cost = 0;
  if (mode == CostMode::Canonical) {
    for (int i = 1; i < w; ++i) cost += i * a(side, t - i);
  } else {
    for (int i = 2; i <= w; ++i) cost += (i - 1) * a(side, t - i);
  }
  return cost;
}

struct Lane {
  std::int64_t best = kInf;
  std::size_t final_state = 0;
  std::vector<std::uint8_t> back;  // (t - 1) * 8 + state -> index into predecessors
};

using PredTable = std::array<std::vector<LockState>, kLockStates>;

Lane run_lane(const CyclicArrivals& arr, std::int64_t horizon, std::size_t start, CostMode mode,
              const PredTable& preds) {
  auto lookup = [&](Direction d, std::int64_t t) { return arr.at(d, t); };
  Lane lane;
  lane.back.assign(static_cast<std::size_t>(horizon) * kLockStates, 0);
  std::array<std::int64_t, kLockStates> cur;
  cur.fill(kInf);
  cur[start] = 0;
  for (std::int64_t t = 2; t <= horizon; ++t) {
    std::array<std::int64_t, kLockStates> nxt;
    nxt.fill(kInf);
    for (std::size_t s = 0; s < kLockStates; ++s) {
      const auto state = LockState::from_index(s);
      const auto& ps = preds[s];
      for (std::size_t j = 0; j < ps.size(); ++j) {
        const auto from = cur[ps[j].index()];
        if (from >= kInf) continue;
        const auto v = from + window_cost(lookup, t, ps[j], state, mode);
        if (v < nxt[s]) {
          nxt[s] = v;
          lane.back[static_cast<std::size_t>(t - 1) * kLockStates + s] = static_cast<std::uint8_t>(j);
        }
      }
    }
    cur = nxt;
  }
  // Close the cycle: the state after period T must lead into the start state at period 1.
  const auto start_state = LockState::from_index(start);
  for (const auto& last : preds[start]) {
    if (cur[last.index()] >= kInf) continue;
    const auto v = cur[last.index()] + window_cost(lookup, 1, last, start_state, mode);
    if (v < lane.best) {
      lane.best = v;
      lane.final_state = last.index();
    }
  }
  return lane;
}

}  // namespace

std::int64_t transition_cost(const PeriodicInstance& instance, std::int64_t t, const LockState& prev,
                             const LockState& next, CostMode mode) {
  if (!is_predecessor(prev, next)) throw std::invalid_argument("state is not a predecessor");
  auto lookup = [&](Direction d, std::int64_t u) { return arrival_at(instance, u).on(d); };
  return window_cost(lookup, t, prev, next, mode);
}

OptimalResult solve(const PeriodicInstance& instance, const DpOptions& options) {
  instance.validate();
  const auto hyper = lcm_period(instance);
  if (hyper > options.cap / 8) {
    const auto required = hyper > std::numeric_limits<std::int64_t>::max() / 8
                              ? std::numeric_limits<std::int64_t>::max()
                              : 8 * hyper;
    throw CapExceeded(required, options.cap);
  }
  const auto horizon = 8 * hyper;
  const CyclicArrivals arr(instance, horizon);

  PredTable preds;
  for (std::size_t s = 0; s < kLockStates; ++s) preds[s] = predecessors(LockState::from_index(s));

  std::vector<Lane> lanes(kLockStates);
  if (options.jobs > 1) {
    std::vector<std::jthread> pool;
    for (std::size_t s = 0; s < kLockStates; ++s) {
      pool.emplace_back([&, s] { lanes[s] = run_lane(arr, horizon, s, options.mode, preds); });
    }
  } else {
    for (std::size_t s = 0; s < kLockStates; ++s) lanes[s] = run_lane(arr, horizon, s, options.mode, preds);
  }

  std::size_t best_start = 0;
  for (std::size_t s = 1; s < kLockStates; ++s) {
    if (lanes[s].best < lanes[best_start].best) best_start = s;
  }
  const auto& lane = lanes[best_start];
  if (lane.best >= kInf) throw std::logic_error("no feasible cyclic state sequence");

  // states[t] is the state after period t; states[0] is the same as states[T].
  std::vector<std::size_t> states(static_cast<std::size_t>(horizon) + 1);
  states[static_cast<std::size_t>(horizon)] = lane.final_state;
  for (std::int64_t t = horizon; t >= 2; --t) {
    const auto s = states[static_cast<std::size_t>(t)];
    const auto j = lane.back[static_cast<std::size_t>(t - 1) * kLockStates + s];
    states[static_cast<std::size_t>(t - 1)] = preds[s][j].index();
  }
  if (states[1] != best_start) throw std::logic_error("backtrace did not reach the start state");
  states[0] = states[static_cast<std::size_t>(horizon)];

  OptimalResult res;
  res.mode = options.mode;
  res.hyper_period = hyper;
  res.horizon = horizon;
  res.total_cost = lane.best;
  res.avg_cost = Rational(lane.best, horizon);
  res.initial_state = LockState::from_index(states[0]);
  res.schedule.initial_alignment = res.initial_state.alignment;
  res.schedule.actions.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const auto prev = LockState::from_index(states[static_cast<std::size_t>(t - 1)]);
    const auto next = LockState::from_index(states[static_cast<std::size_t>(t)]);
    res.schedule.actions.push_back(next.own_waits == 1 ? Action::Wait : process(prev.alignment));
  }

  if (options.mode == CostMode::Canonical) {
    const auto simulated = steady_state_average(instance, res.schedule);
    if (!simulated || *simulated != res.avg_cost) {
      throw std::logic_error("re-simulated schedule cost differs from the optimum");
    }
  }
  return res;
}

}  // namespace lockperiod
