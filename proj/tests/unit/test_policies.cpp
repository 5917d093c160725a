#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <tuple>

#include "lockperiod/dp_optimizer.hpp"
#include "lockperiod/policies.hpp"
#include "oracles.hpp"

using namespace lockperiod;

namespace {

constexpr auto Dn = Direction::Down;
constexpr auto Up = Direction::Up;

PeriodArrivals buckets(std::int64_t horizon, std::vector<std::tuple<std::int64_t, Direction, std::int64_t>> items) {
  PeriodArrivals p(horizon);
  for (auto [t, d, c] : items) p.add(t, d, c);
  return p;
}

PeriodArrivals random_buckets(oracle::Gen& g, std::int64_t horizon) {
  PeriodArrivals p(horizon);
  for (std::int64_t t = 1; t <= horizon; ++t) {
    if (g.range(0, 2) == 0) p.add(t, Dn, g.range(1, 2));
    if (g.range(0, 3) == 0) p.add(t, Up, 1);
  }
  return p;
}

// fifo's preemption rule, evaluated on fifo's own trace.
bool preemption_would_fire(const PeriodArrivals& arr, const PolicyRun& run) {
  LockSimulator sim(run.initial_alignment);
  const auto h = static_cast<std::int64_t>(run.trace.size());
  for (std::int64_t t = 1; t <= h; ++t) {
    const bool idle = sim.queues().total() == 0 && arr.at(t).total() == 0;
    if (idle && t < h && arr.at(t + 1).on(flip(sim.alignment())) > 0) return true;
    sim.step(run.trace[static_cast<std::size_t>(t - 1)], arr.at(t));
  }
  return false;
}

}  // namespace

TEST(Policies, AlternatingExamples) {
  const PeriodicInstance alt{{{Dn, 2, 1}, {Up, 2, 2}}};
  const auto r = alternating(arrivals_fn(alt), 30);
  EXPECT_EQ(r.result.total_wait, 0);
  EXPECT_EQ(r.initial_alignment, Dn);

  const PeriodicInstance every{{{Dn, 1, 1}}};
  for (std::int64_t h : {1, 2, 9, 10}) EXPECT_EQ(alternating(arrivals_fn(every), h).result.total_wait, h / 2);

  const PeriodArrivals none(12);
  EXPECT_EQ(alternating(arrivals_fn(none), 12).result.total_wait, 0);
}

TEST(Policies, AlternatingIsBestOfTwo) {
  oracle::Gen g(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto arr = random_buckets(g, g.range(1, 60));
    const auto h = arr.horizon();
    const auto r = alternating(arrivals_fn(arr), h);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (auto first : {Dn, Up}) {
      std::vector<Action> trace;
      for (std::int64_t t = 0; t < h; ++t) trace.push_back(process(t % 2 == 0 ? first : flip(first)));
      best = std::min(best, simulate(arrivals_fn(arr), trace, first, h).total_wait);
    }
    EXPECT_EQ(r.result.total_wait, best);
  }
}

TEST(Policies, FifoExamples) {
  EXPECT_EQ(fifo(arrivals_fn(buckets(4, {{1, Dn, 1}})), 4, Dn).result.total_wait, 0);
  const auto both = fifo(arrivals_fn(buckets(4, {{1, Dn, 1}, {1, Up, 1}})), 4, Dn);
  EXPECT_EQ(both.result.total_wait, 1);
  EXPECT_EQ(both.trace[0], Action::ProcessDown);
  EXPECT_EQ(both.trace[1], Action::ProcessUp);
  const auto opposite = fifo(arrivals_fn(buckets(4, {{1, Up, 1}})), 4, Dn);
  EXPECT_EQ(opposite.result.total_wait, 1);
  EXPECT_EQ(opposite.trace[0], Action::ProcessDown);
}

TEST(Policies, AdvFifoExamples) {
  const auto next_up = buckets(4, {{2, Up, 1}});
  EXPECT_EQ(adv_fifo(arrivals_fn(next_up), 4, Dn).result.total_wait, 0);
  EXPECT_EQ(fifo(arrivals_fn(next_up), 4, Dn).result.total_wait, 1);

  const PeriodicInstance alt{{{Dn, 2, 1}, {Up, 2, 2}}};
  const auto a = adv_fifo(arrivals_fn(alt), 20, Dn);
  EXPECT_EQ(a.result.total_wait, 0);
  EXPECT_EQ(a.trace, alternating(arrivals_fn(alt), 20).trace);

  const auto idle = adv_fifo(arrivals_fn(PeriodArrivals(6)), 6, Dn);
  EXPECT_EQ(idle.result.total_wait, 0);
  for (auto act : idle.trace) EXPECT_EQ(act, Action::Wait);
}

TEST(Policies, AdvFifoServesSingleStreamOnArrival) {
  for (std::int64_t lambda = 2; lambda <= 9; ++lambda) {
    for (std::int64_t mu = 1; mu <= lambda; ++mu) {
      for (auto dir : {Dn, Up}) {
        const PeriodicInstance inst{{{dir, lambda, mu}}};
        // Aligned with the stream when its first vessel arrives.
        const auto initial = mu == 1 ? dir : flip(dir);
        EXPECT_EQ(adv_fifo(arrivals_fn(inst), 5 * lambda, initial).result.total_wait, 0)
            << lambda << ' ' << mu << ' ' << to_char(dir);
      }
    }
  }
}

TEST(Policies, FifoNeverIdlesWithWaitingVessels) {
  oracle::Gen g(42);
  for (int trial = 0; trial < 100; ++trial) {
    const auto arr = random_buckets(g, g.range(1, 60));
    for (auto initial : {Dn, Up}) {
      const auto run = fifo(arrivals_fn(arr), arr.horizon(), initial);
      LockSimulator sim(initial);
      for (std::int64_t t = 1; t <= arr.horizon(); ++t) {
        const auto act = run.trace[static_cast<std::size_t>(t - 1)];
        if (sim.queues().total() + arr.at(t).total() > 0) EXPECT_NE(act, Action::Wait);
        sim.step(act, arr.at(t));
      }
    }
  }
}

TEST(Policies, AdvFifoEqualsFifoWithoutPreemption) {
  oracle::Gen g(43);
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto arr = random_buckets(g, g.range(1, 30));
    const auto initial = g.coin() ? Up : Dn;
    const auto f = fifo(arrivals_fn(arr), arr.horizon(), initial);
    if (preemption_would_fire(arr, f)) continue;
    ++compared;
    EXPECT_EQ(adv_fifo(arrivals_fn(arr), arr.horizon(), initial).trace, f.trace);
  }
  EXPECT_GT(compared, 10);
}

TEST(Policies, RunsAreFeasibleReproducibleAndDeterministic) {
  oracle::Gen g(44);
  for (int trial = 0; trial < 60; ++trial) {
    const auto arr = random_buckets(g, g.range(1, 70));
    const auto h = arr.horizon();
    const auto fn = arrivals_fn(arr);
    const auto inst = oracle::random_instance(g, 2, 4);
    const auto sched = solve(inst).schedule;
    for (const auto& run : {alternating(fn, h), fifo(fn, h), fifo_best_of_two(fn, h), adv_fifo(fn, h),
                            realized_periodic(sched, fn, h)}) {
      EXPECT_TRUE(is_feasible_trace(run.trace, run.initial_alignment));
      EXPECT_EQ(run.trace.size(), static_cast<std::size_t>(h));
      const auto again = simulate(fn, run.trace, run.initial_alignment, h);
      EXPECT_EQ(again.total_wait, run.result.total_wait);
      auto pair_fn = [&](std::int64_t t) { return std::pair{arr.at(t).down, arr.at(t).up}; };
      EXPECT_EQ(oracle::per_vessel_total_wait(pair_fn, run.trace, run.initial_alignment), run.result.total_wait);
    }
    EXPECT_EQ(adv_fifo(fn, h).trace, adv_fifo(fn, h).trace);
    EXPECT_LE(fifo_best_of_two(fn, h).result.total_wait, fifo(fn, h).result.total_wait);
  }
}

TEST(Policies, RealizedPeriodicReplaysSchedule) {
  const PeriodicInstance inst{{{Dn, 3, 1}, {Up, 4, 2}}};
  const auto opt = solve(inst);
  const auto run = realized_periodic(opt.schedule, arrivals_fn(inst), 8 * 12);
  EXPECT_EQ(run.initial_alignment, opt.schedule.initial_alignment);
  for (std::int64_t t = 1; t <= 96; ++t) EXPECT_EQ(run.trace[static_cast<std::size_t>(t - 1)], opt.schedule.at(t));

  const PeriodicInstance alt{{{Dn, 2, 1}, {Up, 2, 2}}};
  const Schedule du{{Action::ProcessDown, Action::ProcessUp}, Dn};
  EXPECT_EQ(realized_periodic(du, arrivals_fn(alt), 30).result.total_wait,
            alternating(arrivals_fn(alt), 30).result.total_wait);
  EXPECT_EQ(realized_periodic(du, arrivals_fn(PeriodArrivals(5)), 5).minutes_per_vessel(21), 0);
  EXPECT_THROW(realized_periodic({{Action::ProcessDown}, Dn}, arrivals_fn(alt), 4), std::invalid_argument);
}

TEST(Policies, MinutesScaleExactly) {
  const auto run = fifo(arrivals_fn(buckets(4, {{1, Dn, 1}, {1, Up, 1}})), 4, Dn);
  EXPECT_EQ(run.result.avg_wait_per_vessel, Rational(1, 2));
  EXPECT_EQ(run.minutes_per_vessel(21), Rational(21, 2));
}

TEST(Policies, ParseNames) {
  EXPECT_EQ(parse_policy("advfifo"), PolicyId::AdvFifo);
  EXPECT_EQ(parse_policy("adv_fifo"), PolicyId::AdvFifo);
  EXPECT_EQ(parse_policy("realized"), PolicyId::RealizedPeriodic);
  EXPECT_EQ(parse_policy("FIFO"), PolicyId::Fifo);
  EXPECT_THROW(parse_policy("lifo"), std::invalid_argument);
}
