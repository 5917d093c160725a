#include "lockperiod/rolling.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lockperiod/dp_optimizer.hpp"

namespace lockperiod {

std::string to_string(const Position& p) {
  if (p.is_free()) return "free";
  return std::string(1, to_char(*p.fixed));
}

Position parse_position(const std::string& text) {
  if (text == "free" || text == "Free") return Position::free();
  return Position::at(parse_direction(text));
}

std::string to_string(ChunkCase c) {
  switch (c) {
    case ChunkCase::Gap: return "gap";
    case ChunkCase::Cheap: return "cheap";
    case ChunkCase::Reorient: return "reorient";
  }
  return "?";
}

std::int64_t default_window(std::size_t k, double epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  const double raw = 40.0 * static_cast<double>(k) * static_cast<double>(k) / epsilon;
  auto w = static_cast<std::int64_t>(std::llround(raw));
  if (std::abs(raw - static_cast<double>(w)) > 1e-9 * raw) w = static_cast<std::int64_t>(std::ceil(raw));
  if (w % 2 != 0) ++w;
  return std::max<std::int64_t>(w, 4);
}

void ChunkRequest::validate() const {
  if (start < 1) throw std::invalid_argument("chunk start must be >= 1");
  if (window < 4) throw std::invalid_argument("window must be >= 4");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (entry.down < 0 || entry.up < 0) throw std::invalid_argument("negative entry queue");
}

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Window DP state after a period. `status` tracks which sides were processed inside the
// window: 0 none, 1 only the side opposite the alignment, 2/3 both with the aligned side's
// last batch 1/2 periods before the opposite side's.
struct WState {
  Direction align;
  int waited;
  int status;

  std::size_t index() const { return (index_of(align) << 3) | (static_cast<std::size_t>(waited) << 2) | static_cast<std::size_t>(status); }
  static WState from(std::size_t i) {
    return {(i >> 3) ? Direction::Up : Direction::Down, static_cast<int>((i >> 2) & 1u), static_cast<int>(i & 3u)};
  }
};
constexpr std::size_t kWStates = 16;

struct Run {
  std::int64_t cost = 0;
  QueueState exit;
  std::vector<QueueState> after;
};

Run run_actions(const PeriodicInstance& instance, std::int64_t first, Direction alignment, QueueState entry,
                const std::vector<Action>& actions) {
  LockSimulator sim(alignment, entry);
  Run r;
  r.after.reserve(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const auto t = first + static_cast<std::int64_t>(i);
    r.cost += sim.step(actions[i], arrival_at(instance, t));
    r.after.push_back(sim.queues());
  }
  r.exit = sim.queues();
  return r;
}

Direction alignment_after(Direction start, const std::vector<Action>& actions) {
  for (auto a : actions) {
    if (is_processing(a)) start = flip(start);
  }
  return start;
}

}  // namespace

WindowResult windowed_optimum(const PeriodicInstance& instance, std::int64_t first, std::int64_t last,
                              Position position, QueueState entry, std::int64_t cap) {
  instance.validate();
  if (first > last) throw std::invalid_argument("window is empty");
  const std::int64_t len = last - first + 1;
  if (len > cap) throw CapExceeded(len, cap);

  const auto n = static_cast<std::size_t>(len);
  // prefix[d][j] = arrivals of side d in the first j periods of the window.
  std::array<std::vector<std::int64_t>, 2> prefix{std::vector<std::int64_t>(n + 1, 0),
                                                  std::vector<std::int64_t>(n + 1, 0)};
  for (std::size_t j = 1; j <= n; ++j) {
    const auto a = arrival_at(instance, first + static_cast<std::int64_t>(j) - 1);
    prefix[0][j] = prefix[0][j - 1] + a.down;
    prefix[1][j] = prefix[1][j - 1] + a.up;
  }
  const std::array<std::int64_t, 2> entry_q{entry.down, entry.up};

  // Queue of side d at the end of period j when its last batch was at period `last_batch`
  // (window-relative, 1-based), or never.
  auto queue = [&](Direction d, std::size_t j, std::optional<std::size_t> last_batch) {
    const auto i = index_of(d);
    if (!last_batch) return entry_q[i] + prefix[i][j];
    return prefix[i][j] - prefix[i][*last_batch];
  };

  std::array<std::int64_t, kWStates> value;
  value.fill(kInf);
  for (auto d : {Direction::Down, Direction::Up}) {
    if (position.is_free() || *position.fixed == d) value[WState{d, 0, 0}.index()] = 0;
  }
  std::vector<std::array<std::uint8_t, kWStates>> back(n);

  for (std::size_t j = 0; j < n; ++j) {
    std::array<std::int64_t, kWStates> next;
    next.fill(kInf);
    auto relax = [&](std::size_t to, std::int64_t v, std::size_t from) {
      if (v < next[to]) {
        next[to] = v;
        back[j][to] = static_cast<std::uint8_t>(from);
      }
    };
    for (std::size_t i = 0; i < kWStates; ++i) {
      if (value[i] >= kInf) continue;
      const auto s = WState::from(i);
      const auto other = flip(s.align);
      std::optional<std::size_t> last_other, last_own;
      if (s.status >= 1) last_other = j - static_cast<std::size_t>(s.waited);
      if (s.status >= 2) last_own = *last_other - static_cast<std::size_t>(s.status - 1);
      const auto q_other = queue(other, j + 1, last_other);
      if (s.waited == 0) {
        const auto q_own = queue(s.align, j + 1, last_own);
        relax(WState{s.align, 1, s.status}.index(), value[i] + q_own + q_other, i);
      }
      const int status = s.status == 0 ? 1 : 2 + s.waited;
      relax(WState{other, 0, status}.index(), value[i] + q_other, i);
    }
    value = next;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < kWStates; ++i) {
    if (value[i] < value[best]) best = i;
  }

  WindowResult out;
  out.cost = value[best];
  out.actions.resize(n);
  std::size_t cur = best;
  for (std::size_t j = n; j-- > 0;) {
    const std::size_t prev = back[j][cur];
    const auto pa = WState::from(prev).align;
    out.actions[j] = pa == WState::from(cur).align ? Action::Wait : process(pa);
    cur = prev;
  }
  out.start_alignment = WState::from(cur).align;

  auto r = run_actions(instance, first, out.start_alignment, entry, out.actions);
  if (r.cost != out.cost) throw std::logic_error("window optimum does not re-simulate");
  out.queues_after = std::move(r.after);
  return out;
}

void realize_tail(const PeriodicInstance& instance, Chunk& chunk, Direction target) {
  if (chunk.free_tail != 2) throw std::invalid_argument("chunk has no free tail");
  const auto body = chunk.actions.size() - 2;
  if (body == 0 && chunk.position.is_free()) {
    chunk.start_alignment = target;
    chunk.tail_alignment = target;
  }
  const auto a = chunk.tail_alignment;
  const auto t1 = chunk.end - 1;
  const std::array<std::array<Action, 2>, 2> options =
      a == target ? std::array<std::array<Action, 2>, 2>{{{Action::Wait, Action::Wait}, {process(a), process(flip(a))}}}
                  : std::array<std::array<Action, 2>, 2>{{{Action::Wait, process(a)}, {process(a), Action::Wait}}};
  std::int64_t best_cost = kInf;
  std::array<Action, 2> best{};
  for (const auto& opt : options) {
    LockSimulator sim(a, chunk.tail_entry);
    std::int64_t c = sim.step(opt[0], arrival_at(instance, t1));
    c += sim.step(opt[1], arrival_at(instance, t1 + 1));
    if (c < best_cost) {
      best_cost = c;
      best = opt;
    }
  }
  chunk.actions[body] = best[0];
  chunk.actions[body + 1] = best[1];
  const auto r = run_actions(instance, chunk.start, chunk.start_alignment, chunk.entry, chunk.actions);
  chunk.cost = r.cost;
  chunk.exit = r.exit;
}

Chunk next_chunk(const PeriodicInstance& instance, const ChunkRequest& request) {
  instance.validate();
  request.validate();
  const auto k = static_cast<std::int64_t>(instance.streams.size());
  const auto first = request.start;
  const auto last = request.start + request.window - 1;

  Chunk c;
  c.start = first;
  c.position = request.position;
  c.entry = request.entry;

  // First stretch of at least two arrival-free periods, extended as far as the window allows.
  std::optional<std::int64_t> gap_end;
  for (std::int64_t t = first; t < last; ++t) {
    if (arrival_at(instance, t).total() == 0 && arrival_at(instance, t + 1).total() == 0) {
      auto e = t + 1;
      while (e < last && arrival_at(instance, e + 1).total() == 0) ++e;
      gap_end = e;
      break;
    }
  }

  const auto full = windowed_optimum(instance, first, last, request.position, request.entry, request.cap);
  c.window_cost = full.cost;

  if (gap_end) {
    c.kind = ChunkCase::Gap;
    c.end = *gap_end;
    const auto body_last = *gap_end - 2;
    if (body_last >= first) {
      auto body = windowed_optimum(instance, first, body_last, request.position, request.entry, request.cap);
      c.start_alignment = body.start_alignment;
      c.tail_alignment = alignment_after(body.start_alignment, body.actions);
      c.tail_entry = body.queues_after.back();
      c.actions = std::move(body.actions);
    } else {
      c.start_alignment = request.position.fixed.value_or(Direction::Down);
      c.tail_alignment = c.start_alignment;
      c.tail_entry = request.entry;
    }
  } else if (static_cast<double>(full.cost) * request.epsilon <= static_cast<double>(2 * k)) {
    c.kind = ChunkCase::Cheap;
    const auto len = request.window / 2 + 1;
    c.end = first + len - 1;
    c.start_alignment = full.start_alignment;
    c.actions.assign(full.actions.begin(), full.actions.begin() + len);
    c.cost = run_actions(instance, first, c.start_alignment, c.entry, c.actions).cost;
    c.exit = full.queues_after[static_cast<std::size_t>(len - 1)];
    c.next_start = c.end + 1;
    c.next_position = Position::at(alignment_after(c.start_alignment, c.actions));
    return c;
  } else {
    c.kind = ChunkCase::Reorient;
    c.end = last + 2;
    c.start_alignment = full.start_alignment;
    c.tail_alignment = alignment_after(full.start_alignment, full.actions);
    c.tail_entry = full.queues_after.back();
    c.actions = full.actions;
  }

  c.free_tail = 2;
  c.actions.push_back(Action::Wait);
  c.actions.push_back(Action::Wait);
  c.next_start = c.end + 1;
  c.next_position = Position::free();
  realize_tail(instance, c, c.tail_alignment);
  return c;
}

RollingResult generate(const PeriodicInstance& instance, std::int64_t t_start, std::int64_t n_chunks,
                       double epsilon, std::int64_t window, std::int64_t cap) {
  if (n_chunks < 1) throw std::invalid_argument("need at least one chunk");
  if (window <= 0) window = default_window(instance.streams.size(), epsilon);

  RollingResult out;
  for (std::int64_t i = 0; i < n_chunks; ++i) {
    if (out.chunks.empty()) {
      out.chunks.push_back(next_chunk(instance, {t_start, window, Position::free(), epsilon, {}, cap}));
      continue;
    }
    const Chunk& prev = out.chunks.back();
    if (prev.free_tail == 0) {
      out.chunks.push_back(next_chunk(instance, {prev.next_start, window, prev.next_position, epsilon, prev.exit, cap}));
      continue;
    }
    // Free lock: try both alignments for the next window, paying for the reorientation.
    std::optional<std::pair<Chunk, Chunk>> best;
    std::int64_t best_score = 0;
    for (auto d : {Direction::Down, Direction::Up}) {
      Chunk p = prev;
      realize_tail(instance, p, d);
      Chunk cand = next_chunk(instance, {p.next_start, window, Position::at(d), epsilon, p.exit, cap});
      const auto score = p.cost + cand.window_cost;
      if (!best || score < best_score) {
        best_score = score;
        best.emplace(std::move(p), std::move(cand));
      }
    }
    out.chunks.back() = std::move(best->first);
    out.chunks.push_back(std::move(best->second));
  }

  out.initial_alignment = out.chunks.front().start_alignment;
  for (const auto& c : out.chunks) {
    out.actions.insert(out.actions.end(), c.actions.begin(), c.actions.end());
    out.total_cost += c.cost;
  }
  return out;
}

}  // namespace lockperiod
