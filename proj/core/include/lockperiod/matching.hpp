#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lockperiod/arrivals.hpp"
#include "lockperiod/rational.hpp"

namespace lockperiod {

/// A periodic stream on [1, T]: points mu, mu + lambda, ..., mu + (count - 1) * lambda.
struct Stream {
  Rational mu;
  Rational lambda;
  std::int64_t count = 0;

  friend bool operator==(const Stream&, const Stream&) = default;
};

struct StreamSet {
  std::int64_t horizon = 0;
  std::vector<Stream> streams;

  std::int64_t total_count() const noexcept;
  /// Throws std::invalid_argument unless 0 < mu <= lambda and count * lambda == T for every stream.
  void validate() const;

  friend bool operator==(const StreamSet&, const StreamSet&) = default;
};

struct MatchingPoint {
  Rational time;
  std::size_t stream = 0;
  std::int64_t occurrence = 0;
};

/// Point matched to arrival i: stream index and occurrence within the stream.
struct Assignment {
  std::size_t stream = 0;
  std::int64_t occurrence = 0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct MatchingSolution {
  StreamSet streams;
  std::vector<Assignment> assignment;  // indexed like the instance's arrivals
  Rational cost;
  // The (counts, anchors) tuple that generated the streams, when produced by solve_matching.
  std::vector<std::int64_t> counts;
  std::vector<std::size_t> anchors;
};

/// All matching points sorted by time, stream index breaking ties.
std::vector<MatchingPoint> matching_points(const StreamSet& streams);

/// Order-preserving assignment: the i-th smallest point goes to the i-th smallest arrival.
MatchingSolution assignment_cost(const MatchingInstance& instance, const StreamSet& streams);

/// Streams with lambda_i = T / counts[i], each anchored so that one of its points equals
/// the arrival at index anchors[i]. The offset uses the largest multiple of lambda strictly
/// below the anchor time, which keeps mu in (0, lambda].
StreamSet anchored_streams(const MatchingInstance& instance, std::span<const std::int64_t> counts,
                           std::span<const std::size_t> anchors);

struct MatchingOptions {
  /// Enumerate only non-decreasing (count, offset) tuples. Disable to check pruning soundness.
  bool prune_symmetric = true;
  unsigned jobs = 1;
};

/// Exact minimum-cost fit of k anchored periodic streams, by enumeration of stream counts
/// and anchor vessels. Equal costs resolve to the lexicographically smallest (counts, anchors).
MatchingSolution solve_matching(const MatchingInstance& instance, std::int64_t k,
                                const MatchingOptions& options = {});

}  // namespace lockperiod
