#include "lockperiod/matching.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace lockperiod {

std::int64_t StreamSet::total_count() const noexcept {
  std::int64_t sum = 0;
  for (const auto& s : streams) sum += s.count;
  return sum;
}

void StreamSet::validate() const {
  if (horizon < 1) throw std::invalid_argument("stream set horizon must be positive");
  for (const auto& s : streams) {
    if (s.count < 1) throw std::invalid_argument("stream count must be positive");
    if (s.lambda <= 0) throw std::invalid_argument("stream lambda must be positive");
    if (s.mu <= 0 || s.mu > s.lambda) throw std::invalid_argument("stream mu must lie in (0, lambda]");
    if (s.lambda * s.count != Rational(horizon)) {
      throw std::invalid_argument("stream count * lambda must equal T");
    }
  }
}

std::vector<MatchingPoint> matching_points(const StreamSet& streams) {
  std::vector<MatchingPoint> points;
  points.reserve(static_cast<std::size_t>(streams.total_count()));
  for (std::size_t i = 0; i < streams.streams.size(); ++i) {
    const auto& s = streams.streams[i];
    for (std::int64_t l = 0; l < s.count; ++l) points.push_back({s.mu + s.lambda * l, i, l});
  }
  std::stable_sort(points.begin(), points.end(), [](const MatchingPoint& a, const MatchingPoint& b) {
    return std::tie(a.time, a.stream, a.occurrence) < std::tie(b.time, b.stream, b.occurrence);
  });
  return points;
}

MatchingSolution assignment_cost(const MatchingInstance& instance, const StreamSet& streams) {
  if (streams.total_count() != instance.size()) {
    throw std::invalid_argument("stream counts must sum to the number of arrivals");
  }
  const auto points = matching_points(streams);
  MatchingSolution sol;
  sol.streams = streams;
  sol.assignment.reserve(points.size());
  Rational cost = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sol.assignment.push_back({points[i].stream, points[i].occurrence});
    cost += abs(points[i].time - Rational(instance.arrivals[i]));
  }
  sol.cost = cost;
  return sol;
}

namespace {

// mu * count for a stream of `count` points anchored at arrival time t on [1, T].
std::int64_t scaled_offset(std::int64_t t, std::int64_t count, std::int64_t horizon) {
  const std::int64_t j = ceil_div(t * count, horizon) - 1;
  return t * count - j * horizon;
}

}  // namespace

StreamSet anchored_streams(const MatchingInstance& instance, std::span<const std::int64_t> counts,
                           std::span<const std::size_t> anchors) {
  if (counts.size() != anchors.size()) throw std::invalid_argument("counts/anchors size mismatch");
  StreamSet set;
  set.horizon = instance.horizon;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 1) throw std::invalid_argument("stream count must be positive");
    if (anchors[i] >= instance.arrivals.size()) throw std::invalid_argument("anchor out of range");
    const auto c = counts[i];
    const auto t = instance.arrivals[anchors[i]];
    set.streams.push_back({Rational(scaled_offset(t, c, instance.horizon), c),
                           Rational(instance.horizon, c), c});
  }
  return set;
}

namespace {

__extension__ using Wide = __int128;

struct Candidate {
  std::int64_t count;
  std::size_t anchor;
  std::int64_t mu_scaled;  // mu * count
};

struct Best {
  bool found = false;
  std::int64_t cost_scaled = 0;
  std::int64_t scale = 1;
  std::vector<std::int64_t> counts;
  std::vector<std::size_t> anchors;

  // Strict "a better than b" under (cost, counts, anchors).
  bool improves_on(const Best& other) const {
    if (!other.found) return found;
    if (!found) return false;
    const auto lhs = static_cast<Wide>(cost_scaled) * other.scale;
    const auto rhs = static_cast<Wide>(other.cost_scaled) * scale;
    if (lhs != rhs) return lhs < rhs;
    return std::tie(counts, anchors) < std::tie(other.counts, other.anchors);
  }
};

class Evaluator {
 public:
  explicit Evaluator(const MatchingInstance& inst) : inst_(inst) {}

  // Total deviation scaled by lcm(counts); returns {cost_scaled, scale}.
  std::pair<std::int64_t, std::int64_t> operator()(std::span<const Candidate* const> chosen) {
    std::int64_t scale = 1;
    for (const auto* c : chosen) scale = std::lcm(scale, c->count);
    const auto k = chosen.size();
    next_.assign(k, 0);
    step_.resize(k);
    left_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto mult = scale / chosen[i]->count;
      next_[i] = chosen[i]->mu_scaled * mult;
      step_[i] = inst_.horizon * mult;
      left_[i] = chosen[i]->count;
    }
    std::int64_t cost = 0;
    for (const auto t : inst_.arrivals) {
      std::size_t pick = k;
      for (std::size_t i = 0; i < k; ++i) {
        if (left_[i] > 0 && (pick == k || next_[i] < next_[pick])) pick = i;
      }
      const auto target = t * scale;
      cost += next_[pick] > target ? next_[pick] - target : target - next_[pick];
      next_[pick] += step_[pick];
      --left_[pick];
    }
    return {cost, scale};
  }

 private:
  const MatchingInstance& inst_;
  std::vector<std::int64_t> next_, step_, left_;
};

class Search {
 public:
  Search(const MatchingInstance& inst, std::int64_t k, bool prune)
      : inst_(inst), k_(k), prune_(prune), by_count_(static_cast<std::size_t>(inst.size() + 1)) {
    const auto n = inst.size();
    for (std::int64_t c = 1; c <= n - k + 1; ++c) {
      auto& list = by_count_[static_cast<std::size_t>(c)];
      std::unordered_map<std::int64_t, bool> seen;
      for (std::size_t a = 0; a < inst.arrivals.size(); ++a) {
        const auto mu = scaled_offset(inst.arrivals[a], c, inst.horizon);
        // Anchors giving the same offset give the same stream; keep the first.
        if (prune_ && !seen.emplace(mu, true).second) continue;
        list.push_back({c, a, mu});
      }
    }
  }

  // First-level choices, each an independent unit of work.
  std::vector<const Candidate*> roots() const {
    std::vector<const Candidate*> out;
    const auto n = inst_.size();
    for (std::int64_t c = 1; c <= n - k_ + 1; ++c) {
      if (prune_ && c * k_ > n) break;
      for (const auto& cand : by_count_[static_cast<std::size_t>(c)]) out.push_back(&cand);
    }
    return out;
  }

  Best run_from(const Candidate* root) const {
    Worker w{*this, Evaluator(inst_), {}, {}};
    w.chosen.push_back(root);
    w.descend(inst_.size() - root->count);
    return std::move(w.best);
  }

 private:
  struct Worker {
    const Search& s;
    Evaluator eval;
    std::vector<const Candidate*> chosen;
    Best best;

    void descend(std::int64_t remaining) {
      const auto depth = static_cast<std::int64_t>(chosen.size());
      if (depth == s.k_) {
        if (remaining == 0) score();
        return;
      }
      const auto streams_left = s.k_ - depth;
      const Candidate* prev = chosen.back();
      const std::int64_t c_min = s.prune_ ? prev->count : 1;
      for (std::int64_t c = c_min; c <= remaining - (streams_left - 1); ++c) {
        if (streams_left == 1 && c != remaining) continue;
        if (s.prune_ && c * streams_left > remaining) break;
        for (const auto& cand : s.by_count_[static_cast<std::size_t>(c)]) {
          if (s.prune_ && c == prev->count && cand.anchor < prev->anchor) continue;
          chosen.push_back(&cand);
          descend(remaining - c);
          chosen.pop_back();
        }
      }
    }

    void score() {
      Best cur;
      cur.found = true;
      std::tie(cur.cost_scaled, cur.scale) = eval(chosen);
      if (best.found) {
        const auto lhs = static_cast<Wide>(cur.cost_scaled) * best.scale;
        const auto rhs = static_cast<Wide>(best.cost_scaled) * cur.scale;
        if (lhs > rhs) return;
        if (lhs == rhs) {
          fill_key(cur);
          if (!(std::tie(cur.counts, cur.anchors) < std::tie(best.counts, best.anchors))) return;
          best = std::move(cur);
          return;
        }
      }
      fill_key(cur);
      best = std::move(cur);
    }

    void fill_key(Best& b) const {
      b.counts.clear();
      b.anchors.clear();
      for (const auto* c : chosen) {
        b.counts.push_back(c->count);
        b.anchors.push_back(c->anchor);
      }
    }
  };

  const MatchingInstance& inst_;
  std::int64_t k_;
  bool prune_;
  std::vector<std::vector<Candidate>> by_count_;
};

}  // namespace

MatchingSolution solve_matching(const MatchingInstance& instance, std::int64_t k,
                                const MatchingOptions& options) {
  instance.validate();
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (k > instance.size()) throw std::invalid_argument("k must not exceed the number of arrivals");

  const Search search(instance, k, options.prune_symmetric);
  const auto roots = search.roots();
  std::vector<Best> results(roots.size());

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(roots.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < roots.size(); ++i) results[i] = search.run_from(roots[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < roots.size(); i = next++) results[i] = search.run_from(roots[i]);
      });
    }
  }

  Best best;
  for (auto& r : results) {
    if (r.improves_on(best)) best = std::move(r);
  }
  if (!best.found) throw std::logic_error("no feasible stream configuration");

  auto sol = assignment_cost(instance, anchored_streams(instance, best.counts, best.anchors));
  if (sol.cost != Rational(best.cost_scaled, best.scale)) {
    throw std::logic_error("scaled and exact matching costs disagree");
  }
  sol.counts = std::move(best.counts);
  sol.anchors = std::move(best.anchors);
  return sol;
}

}  // namespace lockperiod
