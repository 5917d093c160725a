#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lockperiod/schedule.hpp"

namespace lockperiod {

/// Lock position at a chunk boundary: free (either alignment, chosen by the optimizer) or fixed.
struct Position {
  std::optional<Direction> fixed;

  static Position free() { return {}; }
  static Position at(Direction d) { return {d}; }
  bool is_free() const noexcept { return !fixed.has_value(); }
  friend bool operator==(const Position&, const Position&) = default;
};

std::string to_string(const Position& p);
Position parse_position(const std::string& text);

/// Exact optimum of one window.
struct WindowResult {
  std::int64_t cost = 0;  // simulated waiting over the window, entry queues included
  std::vector<Action> actions;
  Direction start_alignment = Direction::Down;
  std::vector<QueueState> queues_after;  // queues at the end of each period
};

/// Minimum simulated waiting over single-wait action sequences on [first, last], starting from
/// `entry` queues and the given position (free = best of both alignments).
/// Throws CapExceeded when the window is longer than `cap` periods.
WindowResult windowed_optimum(const PeriodicInstance& instance, std::int64_t first, std::int64_t last,
                              Position position, QueueState entry = {},
                              std::int64_t cap = 1'000'000);

/// Window length used when none is given: 40 k^2 / epsilon rounded up to an even integer, at least 4.
std::int64_t default_window(std::size_t k, double epsilon);

struct ChunkRequest {
  std::int64_t start = 1;
  std::int64_t window = 4;
  Position position;
  double epsilon = 1.0;
  QueueState entry;  // vessels already waiting when the chunk starts
  std::int64_t cap = 1'000'000;

  void validate() const;
};

enum class ChunkCase : std::uint8_t {
  Gap,       // window has two consecutive periods without arrivals; chunk ends with that stretch
  Cheap,     // window cost <= 2k / epsilon; first half plus one period, position handed over
  Reorient,  // otherwise; whole window plus two periods to free the lock
};

std::string to_string(ChunkCase c);

struct Chunk {
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::int64_t next_start = 0;
  Position next_position;
  ChunkCase kind = ChunkCase::Cheap;
  Direction start_alignment = Direction::Down;
  Position position;            // as requested
  std::vector<Action> actions;  // periods start..end
  /// Number of trailing actions that only reorient the lock (0 or 2). They are realized
  /// towards the next chunk's alignment when chunks are chained.
  std::int64_t free_tail = 0;
  std::int64_t cost = 0;         // simulated waiting on start..end from the entry queues
  std::int64_t window_cost = 0;  // optimum of the full window from the same entry
  QueueState entry;
  QueueState exit;
  // Lock state right before the free tail.
  Direction tail_alignment = Direction::Down;
  QueueState tail_entry;
};

/// One step of the rolling scheme.
Chunk next_chunk(const PeriodicInstance& instance, const ChunkRequest& request);

/// Rewrites the free tail of `chunk` so that the lock ends aligned with `target`, picking the
/// cheaper of the two feasible two-period realizations. Updates actions, cost and exit queues.
void realize_tail(const PeriodicInstance& instance, Chunk& chunk, Direction target);

struct RollingResult {
  Direction initial_alignment = Direction::Down;
  std::vector<Action> actions;  // from t_start on
  std::vector<Chunk> chunks;
  std::int64_t total_cost = 0;
};

/// Chains `n_chunks` chunks from t_start with empty queues and a free lock. `window` <= 0 selects
/// default_window.
RollingResult generate(const PeriodicInstance& instance, std::int64_t t_start, std::int64_t n_chunks,
                       double epsilon, std::int64_t window = 0, std::int64_t cap = 1'000'000);

}  // namespace lockperiod
