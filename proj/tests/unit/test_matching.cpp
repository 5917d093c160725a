#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "lockperiod/matching.hpp"
#include "oracles.hpp"

using namespace lockperiod;

namespace {

Stream stream(Rational mu, Rational lambda, std::int64_t count) { return {mu, lambda, count}; }

std::vector<Rational> times(const StreamSet& s) {
  std::vector<Rational> out;
  for (const auto& p : matching_points(s)) out.push_back(p.time);
  return out;
}

std::vector<Rational> r(std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

MatchingInstance random_matching_instance(oracle::Gen& g, std::int64_t max_n, std::int64_t max_t) {
  MatchingInstance inst;
  const auto n = g.range(1, max_n);
  inst.horizon = g.range(n, max_t);
  for (std::int64_t i = 0; i < n; ++i) inst.arrivals.push_back(g.range(1, inst.horizon));
  std::sort(inst.arrivals.begin(), inst.arrivals.end());
  inst.horizon = inst.arrivals.back();
  return inst;
}

}  // namespace

TEST(Matching, PointsOfOneStream) {
  EXPECT_EQ(times({12, {stream(3, 4, 3)}}), r({3, 7, 11}));
}

TEST(Matching, PointsInterleave) {
  EXPECT_EQ(times({12, {stream(1, 4, 3), stream(2, 4, 3)}}), r({1, 2, 5, 6, 9, 10}));
}

TEST(Matching, CoincidingPointsKept) {
  const auto pts = matching_points({8, {stream(2, 4, 2), stream(2, 4, 2)}});
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[0].time, pts[1].time);
  EXPECT_EQ(pts[0].stream, 0u);
  EXPECT_EQ(pts[1].stream, 1u);
}

TEST(Matching, AssignmentCostExamples) {
  EXPECT_EQ(assignment_cost({{3, 7, 11}, 12}, {12, {stream(3, 4, 3)}}).cost, 0);
  EXPECT_EQ(assignment_cost({{2, 5, 9}, 12}, {12, {stream(1, 4, 3)}}).cost, 1);
  EXPECT_EQ(assignment_cost({{2, 5, 9}, 12}, {12, {stream(2, 4, 3)}}).cost, 2);
  EXPECT_THROW(assignment_cost({{2, 5}, 12}, {12, {stream(2, 4, 3)}}), std::invalid_argument);
}

TEST(Matching, BijectionOracleExamples) {
  EXPECT_EQ(oracle::min_bijection_cost_factorial(r({1, 5, 9}), {2, 5, 9}), 1);
  EXPECT_EQ(oracle::min_bijection_cost(r({1, 5, 9}), {2, 5, 9}), 1);
  EXPECT_EQ(oracle::min_bijection_cost(r({4, 8, 15}), {4, 8, 15}), 0);
}

TEST(Matching, AnchoredStreamExamples) {
  const MatchingInstance inst{{3, 5}, 12};
  const std::vector<std::int64_t> c3{3};
  auto s = anchored_streams(inst, c3, std::vector<std::size_t>{1});
  EXPECT_EQ(s.streams[0].lambda, 4);
  EXPECT_EQ(s.streams[0].mu, 1);
  s = anchored_streams(inst, c3, std::vector<std::size_t>{0});
  EXPECT_EQ(s.streams[0].mu, 3);

  const MatchingInstance edge{{4}, 4};
  s = anchored_streams(edge, std::vector<std::int64_t>{2}, std::vector<std::size_t>{0});
  EXPECT_EQ(s.streams[0].lambda, 2);
  EXPECT_EQ(s.streams[0].mu, 2);
}

TEST(Matching, SolveExamples) {
  const auto two = solve_matching({{1, 2, 5, 6, 9, 10}, 12}, 2);
  EXPECT_EQ(two.cost, 0);
  ASSERT_EQ(two.streams.streams.size(), 2u);
  EXPECT_EQ(two.streams.streams[0].lambda, 4);
  EXPECT_EQ(two.streams.streams[1].lambda, 4);
  std::vector<Rational> mus{two.streams.streams[0].mu, two.streams.streams[1].mu};
  std::sort(mus.begin(), mus.end());
  EXPECT_EQ(mus, r({1, 2}));

  const auto one = solve_matching({{2, 5, 9}, 12}, 1);
  EXPECT_EQ(one.cost, 1);
  EXPECT_EQ(one.streams.streams[0].mu, 1);
  EXPECT_EQ(one.streams.streams[0].lambda, 4);
}

TEST(Matching, RejectsBadK) {
  EXPECT_THROW(solve_matching({{2, 5, 9}, 12}, 0), std::invalid_argument);
  EXPECT_THROW(solve_matching({{2, 5, 9}, 12}, 4), std::invalid_argument);
}

TEST(Matching, OrderPreservingIsOptimal) {
  oracle::Gen g(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_matching_instance(g, 7, 30);
    const auto k = g.range(1, std::min<std::int64_t>(3, inst.size()));
    // Random composition and anchors.
    std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 1);
    for (auto left = inst.size() - k; left > 0; --left) counts[static_cast<std::size_t>(g.range(0, k - 1))]++;
    std::vector<std::size_t> anchors;
    for (std::int64_t i = 0; i < k; ++i) anchors.push_back(static_cast<std::size_t>(g.range(0, inst.size() - 1)));
    const auto set = anchored_streams(inst, counts, anchors);
    const auto sol = assignment_cost(inst, set);
    std::vector<Rational> pts;
    for (const auto& p : matching_points(set)) pts.push_back(p.time);
    EXPECT_EQ(sol.cost, oracle::min_bijection_cost_factorial(pts, inst.arrivals));
  }
}

TEST(Matching, AssignmentIsBijectionWithStatedCost) {
  oracle::Gen g(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_matching_instance(g, 8, 40);
    const auto k = g.range(1, std::min<std::int64_t>(3, inst.size()));
    const auto sol = solve_matching(inst, k);
    ASSERT_EQ(sol.assignment.size(), inst.arrivals.size());
    std::set<std::pair<std::size_t, std::int64_t>> used;
    Rational total(0);
    for (std::size_t i = 0; i < sol.assignment.size(); ++i) {
      const auto& a = sol.assignment[i];
      const auto& s = sol.streams.streams[a.stream];
      ASSERT_LT(a.occurrence, s.count);
      used.insert({a.stream, a.occurrence});
      const Rational d = s.mu + s.lambda * a.occurrence - inst.arrivals[i];
      total += d < 0 ? -d : d;
    }
    EXPECT_EQ(static_cast<std::int64_t>(used.size()), inst.size());
    EXPECT_EQ(total, sol.cost);
    EXPECT_NO_THROW(sol.streams.validate());
  }
}

// Order-preserving assignment may pair the anchor arrival with a neighbouring occurrence at equal
// cost, so the check is that some point of the stream sits exactly on an arrival.
TEST(Matching, EveryStreamAnchored) {
  oracle::Gen g(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_matching_instance(g, 8, 40);
    const auto k = g.range(1, std::min<std::int64_t>(3, inst.size()));
    const auto sol = solve_matching(inst, k);
    for (std::size_t si = 0; si < sol.streams.streams.size(); ++si) {
      const auto& s = sol.streams.streams[si];
      bool hit = false;
      for (std::int64_t occ = 0; occ < s.count && !hit; ++occ) {
        const Rational p = s.mu + s.lambda * occ;
        for (auto a : inst.arrivals) hit = hit || p == a;
      }
      EXPECT_TRUE(hit) << "stream " << si << " of trial " << trial;
    }
  }
}

TEST(Matching, AgreesWithExhaustiveSearch) {
  oracle::Gen g(77);
  for (int trial = 0; trial < 120; ++trial) {
    const auto inst = random_matching_instance(g, 7, 30);
    const auto k = g.range(1, std::min<std::int64_t>(3, inst.size()));
    EXPECT_EQ(solve_matching(inst, k).cost, oracle::exhaustive_matching(inst.arrivals, inst.horizon, k))
        << "trial " << trial;
  }
}

TEST(Matching, PruningIsSound) {
  oracle::Gen g(3);
  for (int trial = 0; trial < 80; ++trial) {
    const auto inst = random_matching_instance(g, 8, 40);
    const auto k = g.range(1, std::min<std::int64_t>(3, inst.size()));
    const auto pruned = solve_matching(inst, k, {true, 1});
    const auto full = solve_matching(inst, k, {false, 1});
    EXPECT_EQ(pruned.cost, full.cost);
  }
}

TEST(Matching, ParallelSearchIsDeterministic) {
  oracle::Gen g(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_matching_instance(g, 8, 40);
    const auto k = g.range(1, std::min<std::int64_t>(3, inst.size()));
    const auto a = solve_matching(inst, k, {true, 1});
    const auto b = solve_matching(inst, k, {true, 4});
    EXPECT_EQ(a.cost, b.cost);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.anchors, b.anchors);
    EXPECT_EQ(a.streams, b.streams);
  }
}

// With lambda_i = T / n_i a k-stream fit cannot always emulate a (k-1)-stream one: a stream
// with an odd count does not split into two streams of equal periodicity.
TEST(Matching, MoreStreamsCanFitWorse) {
  const MatchingInstance inst{{1, 2, 3}, 3};
  EXPECT_EQ(solve_matching(inst, 1).cost, 0);
  EXPECT_EQ(solve_matching(inst, 2).cost, Rational(1, 2));
  EXPECT_EQ(oracle::exhaustive_matching(inst.arrivals, inst.horizon, 2), Rational(1, 2));
}

TEST(Matching, HorizonBeyondLastArrival) {
  const auto sol = solve_matching({{3, 7, 11}, 12}, 1);
  EXPECT_EQ(sol.cost, 0);
  EXPECT_EQ(sol.streams.streams[0].mu, 3);
}
