#include "oracles.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace oracle {

std::pair<std::int64_t, std::int64_t> arrivals(const lockperiod::PeriodicInstance& inst, std::int64_t t) {
  std::int64_t d = 0, u = 0;
  for (const auto& s : inst.streams) {
    if (((t - s.mu) % s.lambda + s.lambda) % s.lambda == 0) (s.direction == Direction::Down ? d : u) += 1;
  }
  return {d, u};
}

namespace {

Rational abs_diff(const Rational& p, std::int64_t a) {
  const Rational d = p - a;
  return d < 0 ? -d : d;
}

}  // namespace

Rational min_bijection_cost(const std::vector<Rational>& points, const std::vector<std::int64_t>& arr) {
  const auto n = points.size();
  if (n != arr.size()) throw std::invalid_argument("size mismatch");
  if (n > 20) throw std::invalid_argument("too large for subset DP");
  // best[mask]: arrivals 0..popcount(mask)-1 matched to the points in mask.
  std::vector<std::optional<Rational>> best(std::size_t{1} << n);
  best[0] = Rational(0);
  for (std::size_t mask = 0; mask < best.size(); ++mask) {
    if (!best[mask]) continue;
    const auto i = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (i == n) continue;
    for (std::size_t p = 0; p < n; ++p) {
      if (mask & (std::size_t{1} << p)) continue;
      const auto nm = mask | (std::size_t{1} << p);
      const auto v = *best[mask] + abs_diff(points[p], arr[i]);
      if (!best[nm] || v < *best[nm]) best[nm] = v;
    }
  }
  return *best.back();
}

Rational min_bijection_cost_factorial(const std::vector<Rational>& points, const std::vector<std::int64_t>& arr) {
  if (points.size() != arr.size()) throw std::invalid_argument("size mismatch");
  if (points.size() > 9) throw std::invalid_argument("too large for factorial enumeration");
  std::vector<std::size_t> perm(points.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Rational> best;
  do {
    Rational c(0);
    for (std::size_t i = 0; i < perm.size(); ++i) c += abs_diff(points[perm[i]], arr[i]);
    if (!best || c < *best) best = c;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best.value_or(Rational(0));
}

namespace {

// All placements of a stream with `count` points on [0, T] that hit some arrival exactly.
std::vector<Rational> placements(const std::vector<std::int64_t>& arr, std::int64_t horizon, std::int64_t count) {
  const Rational lambda(horizon, count);
  std::vector<Rational> mus;
  for (auto a : arr) {
    for (std::int64_t q = 0; q < count; ++q) {
      const Rational mu = Rational(a) - lambda * q;
      if (mu > 0 && mu <= lambda && std::find(mus.begin(), mus.end(), mu) == mus.end()) mus.push_back(mu);
    }
  }
  return mus;
}

void compositions(std::int64_t n, std::int64_t k, std::vector<std::int64_t>& cur,
                  std::vector<std::vector<std::int64_t>>& out) {
  if (k == 1) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::int64_t c = 1; c <= n - (k - 1); ++c) {
    cur.push_back(c);
    compositions(n - c, k - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Rational exhaustive_matching(const std::vector<std::int64_t>& arr, std::int64_t horizon, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(arr.size());
  std::vector<std::vector<std::int64_t>> comps;
  std::vector<std::int64_t> cur;
  compositions(n, k, cur, comps);
  std::optional<Rational> best;
  for (const auto& counts : comps) {
    std::vector<std::vector<Rational>> options;
    for (auto c : counts) options.push_back(placements(arr, horizon, c));
    std::vector<std::size_t> pick(counts.size(), 0);
    while (true) {
      std::vector<Rational> pts;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        const Rational lambda(horizon, counts[i]);
        for (std::int64_t q = 0; q < counts[i]; ++q) pts.push_back(options[i][pick[i]] + lambda * q);
      }
      const auto c = min_bijection_cost(pts, arr);
      if (!best || c < *best) best = c;
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  return *best;
}

std::optional<Rational> cyclic_average(const lockperiod::PeriodicInstance& inst, const std::vector<Action>& actions,
                                       Direction initial) {
  const auto p = static_cast<std::int64_t>(actions.size());
  std::int64_t lam = 1;
  for (const auto& s : inst.streams) lam = std::lcm(lam, s.lambda);
  const auto m = std::lcm(lam, p);

  bool served[2] = {false, false};
  bool arrives[2] = {false, false};
  auto align = initial;
  for (auto a : actions) {
    if (a == Action::Wait) continue;
    const auto side = a == Action::ProcessDown ? Direction::Down : Direction::Up;
    if (side != align) return std::nullopt;
    served[side == Direction::Down ? 0 : 1] = true;
    align = align == Direction::Down ? Direction::Up : Direction::Down;
  }
  if (align != initial) return std::nullopt;
  for (const auto& s : inst.streams) arrives[s.direction == Direction::Down ? 0 : 1] = true;
  if ((arrives[0] && !served[0]) || (arrives[1] && !served[1])) return std::nullopt;

  std::int64_t q[2] = {0, 0};
  std::int64_t second = 0;
  for (std::int64_t t = 1; t <= 2 * m; ++t) {
    const auto [d, u] = arrivals(inst, t);
    q[0] += d;
    q[1] += u;
    const auto a = actions[static_cast<std::size_t>((t - 1) % p)];
    if (a == Action::ProcessDown) q[0] = 0;
    if (a == Action::ProcessUp) q[1] = 0;
    if (t > m) second += q[0] + q[1];
  }
  return Rational(second, m);
}

std::optional<Rational> brute_force_optimal(const lockperiod::PeriodicInstance& inst, int period) {
  if (period < 1 || period > 20) throw std::invalid_argument("period out of oracle range");
  std::optional<Rational> best;
  std::vector<Action> seq(static_cast<std::size_t>(period));
  for (auto initial : {Direction::Down, Direction::Up}) {
    for (std::uint32_t mask = 0; mask < (1u << period); ++mask) {
      if (__builtin_popcount(mask) % 2 != 0) continue;
      auto align = initial;
      for (int i = 0; i < period; ++i) {
        if (mask & (1u << i)) {
          seq[static_cast<std::size_t>(i)] = align == Direction::Down ? Action::ProcessDown : Action::ProcessUp;
          align = align == Direction::Down ? Direction::Up : Direction::Down;
        } else {
          seq[static_cast<std::size_t>(i)] = Action::Wait;
        }
      }
      const auto v = cyclic_average(inst, seq, initial);
      if (v && (!best || *v < *best)) best = v;
    }
  }
  return best;
}

BruteForce brute_force_upto(const lockperiod::PeriodicInstance& inst, int max_period) {
  BruteForce out;
  for (int p = 1; p <= max_period; ++p) {
    const auto v = brute_force_optimal(inst, p);
    if (v && (!out.best || *v < *out.best)) {
      out.best = v;
      out.period = p;
    }
  }
  return out;
}

std::int64_t per_vessel_total_wait(const std::function<std::pair<std::int64_t, std::int64_t>(std::int64_t)>& arr,
                                   const std::vector<Action>& trace, Direction initial) {
  std::vector<std::int64_t> queue[2];  // arrival periods of waiting vessels
  auto align = initial;
  std::int64_t total = 0;
  const auto horizon = static_cast<std::int64_t>(trace.size());
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const auto [d, u] = arr(t);
    for (std::int64_t i = 0; i < d; ++i) queue[0].push_back(t);
    for (std::int64_t i = 0; i < u; ++i) queue[1].push_back(t);
    const auto a = trace[static_cast<std::size_t>(t - 1)];
    if (a == Action::Wait) continue;
    const auto side = a == Action::ProcessDown ? Direction::Down : Direction::Up;
    if (side != align) throw std::logic_error("trace not alternating");
    auto& q = queue[side == Direction::Down ? 0 : 1];
    for (auto arrived : q) total += t - arrived;
    q.clear();
    align = align == Direction::Down ? Direction::Up : Direction::Down;
  }
  for (auto& q : queue) {
    for (auto arrived : q) total += horizon - arrived + 1;
  }
  return total;
}

std::uint64_t Gen::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t Gen::range(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(next() % span);
}

lockperiod::PeriodicInstance random_instance(Gen& g, int k, std::int64_t max_lambda, std::int64_t min_lambda) {
  lockperiod::PeriodicInstance inst;
  for (int i = 0; i < k; ++i) {
    const auto lambda = g.range(min_lambda, max_lambda);
    inst.streams.push_back({g.coin() ? Direction::Up : Direction::Down, lambda, g.range(1, lambda)});
  }
  return inst;
}

}  // namespace oracle
