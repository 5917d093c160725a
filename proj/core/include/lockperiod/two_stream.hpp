#pragma once

#include <cstdint>

#include "lockperiod/rational.hpp"
#include "lockperiod/schedule.hpp"

namespace lockperiod {

/// One downstream and one upstream stream.
struct TwoStreamParams {
  std::int64_t mu_down = 1;
  std::int64_t mu_up = 1;
  std::int64_t lambda_down = 1;
  std::int64_t lambda_up = 1;

  /// Direction with the smaller periodicity; Down on a tie.
  Direction first() const noexcept { return lambda_up < lambda_down ? Direction::Up : Direction::Down; }
  Direction second() const noexcept { return flip(first()); }
  std::int64_t mu(Direction d) const noexcept { return d == Direction::Down ? mu_down : mu_up; }
  std::int64_t lambda(Direction d) const noexcept {
    return d == Direction::Down ? lambda_down : lambda_up;
  }
  std::int64_t hyper_period() const;
  PeriodicInstance instance() const;
  /// Throws std::invalid_argument unless 1 <= mu <= lambda on both sides.
  void validate() const;

  /// Reads a two-stream instance with one stream per direction.
  static TwoStreamParams from_instance(const PeriodicInstance& instance);
};

/// Least achievable long-run average when both periodicities are at least 2: 1 / lcm if the
/// two streams ever coincide (mu_up - mu_down divisible by the gcd), otherwise 0.
Rational lower_bound(const TwoStreamParams& params);

/// Action of the optimal two-stream schedule at period t, in constant time.
Action closed_form_action(const TwoStreamParams& params, std::int64_t t);

/// closed_form_action over one hyper-period, with the alignment the lock needs at period 1.
Schedule closed_form_schedule(const TwoStreamParams& params);

/// Period-2 schedule when one periodicity is 1. The side with periodicity > 1 is served in
/// the periods of its own parity, so an odd offset opposite the every-period side yields
/// (U, D) and an even one (D, U) when lambda_down == 1.
Schedule lambda_one_schedule(const TwoStreamParams& params);

}  // namespace lockperiod
