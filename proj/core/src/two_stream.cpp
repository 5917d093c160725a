#include "lockperiod/two_stream.hpp"

#include <numeric>
#include <stdexcept>

namespace lockperiod {

std::int64_t TwoStreamParams::hyper_period() const { return checked_lcm(lambda_down, lambda_up); }

PeriodicInstance TwoStreamParams::instance() const {
  return PeriodicInstance{{{Direction::Down, lambda_down, mu_down}, {Direction::Up, lambda_up, mu_up}}};
}

void TwoStreamParams::validate() const {
  if (lambda_down < 1 || lambda_up < 1) throw std::invalid_argument("lambda must be >= 1");
  if (mu_down < 1 || mu_down > lambda_down || mu_up < 1 || mu_up > lambda_up) {
    throw std::invalid_argument("mu must lie in [1, lambda]");
  }
}

TwoStreamParams TwoStreamParams::from_instance(const PeriodicInstance& instance) {
  if (instance.streams.size() != 2 || instance.streams[0].direction == instance.streams[1].direction) {
    throw std::invalid_argument("expected exactly one downstream and one upstream stream");
  }
  TwoStreamParams p;
  for (const auto& s : instance.streams) {
    if (s.direction == Direction::Down) {
      p.mu_down = s.mu;
      p.lambda_down = s.lambda;
    } else {
      p.mu_up = s.mu;
      p.lambda_up = s.lambda;
    }
  }
  p.validate();
  return p;
}

namespace {

void require_no_unit_period(const TwoStreamParams& p) {
  p.validate();
  if (p.lambda_down < 2 || p.lambda_up < 2) {
    throw std::invalid_argument("closed form needs both periodicities >= 2; use lambda_one_schedule");
  }
}

bool arrives(std::int64_t t, std::int64_t mu, std::int64_t lambda) { return mod_pos(t - mu, lambda) == 0; }

// Most recent arrival time at or before t (may precede period 1).
std::int64_t last_arrival(std::int64_t t, std::int64_t mu, std::int64_t lambda) {
  return mu + floor_div(t - mu, lambda) * lambda;
}

}  // namespace

Rational lower_bound(const TwoStreamParams& params) {
  require_no_unit_period(params);
  const auto g = std::gcd(params.lambda_down, params.lambda_up);
  if (mod_pos(params.mu_up - params.mu_down, g) == 0) return Rational(1, params.hyper_period());
  return Rational(0);
}

Action closed_form_action(const TwoStreamParams& params, std::int64_t t) {
  require_no_unit_period(params);
  const auto d1 = params.first();
  const auto d2 = params.second();
  const auto m1 = params.mu(d1), l1 = params.lambda(d1);
  const auto m2 = params.mu(d2), l2 = params.lambda(d2);

  const bool c1 = arrives(t, m1, l1) && !arrives(t - 1, m1, l1);
  if (c1) return process(d1);
  const bool c2 = arrives(t - 1, m1, l1) && arrives(t - 1, m2, l2);
  const bool c3 = !arrives(t, m1, l1) && arrives(t, m2, l2);
  const bool c4 = arrives(t + 1, m1, l1) && last_arrival(t, m1, l1) > last_arrival(t, m2, l2);
  if (c2 || c3 || c4) return process(d2);
  return Action::Wait;
}

Schedule closed_form_schedule(const TwoStreamParams& params) {
  require_no_unit_period(params);
  Schedule s;
  const auto period = params.hyper_period();
  s.actions.reserve(static_cast<std::size_t>(period));
  for (std::int64_t t = 1; t <= period; ++t) s.actions.push_back(closed_form_action(params, t));
  s.initial_alignment = Direction::Down;
  for (auto a : s.actions) {
    if (is_processing(a)) {
      s.initial_alignment = served_side(a);
      break;
    }
  }
  return s;
}

Schedule lambda_one_schedule(const TwoStreamParams& params) {
  params.validate();
  if (params.lambda_down != 1 && params.lambda_up != 1) {
    throw std::invalid_argument("lambda_one_schedule needs a periodicity equal to 1");
  }
  // Relabel so that `every` arrives each period; the other side is served on its parity.
  const auto every = params.lambda_down == 1 ? Direction::Down : Direction::Up;
  const auto other = flip(every);
  const bool odd = params.mu(other) % 2 == 1;
  Schedule s;
  s.actions = odd ? std::vector<Action>{process(other), process(every)}
                  : std::vector<Action>{process(every), process(other)};
  s.initial_alignment = served_side(s.actions.front());
  return s;
}

}  // namespace lockperiod
