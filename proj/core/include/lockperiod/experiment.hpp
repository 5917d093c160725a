#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lockperiod/arrivals.hpp"
#include "lockperiod/dp_optimizer.hpp"
#include "lockperiod/matching.hpp"
#include "lockperiod/policies.hpp"

namespace lockperiod {

/// A fitted stream in minutes, tagged with its direction.
struct DirectedStream {
  Direction direction = Direction::Down;
  Stream stream;
};

/// Minutes to lock periods: lambda' = max(1, round(lambda / pm)), mu' = clamp(round(mu / pm), 1, lambda'),
/// rounding half up on the exact value.
PeriodicInstance rescale_streams(const std::vector<DirectedStream>& streams, std::int64_t period_minutes);

struct SynthStream {
  Direction direction = Direction::Down;
  std::int64_t mu = 1;      // minutes
  std::int64_t lambda = 1;  // minutes
};

struct SynthSpec {
  std::int64_t days = 1;
  std::int64_t horizon = 1439;  // last minute index of a day
  double jitter = 0.0;          // standard deviation in minutes
  std::string start_date = "2019-01-02";
  std::vector<SynthStream> streams;

  void validate() const;
};

/// Periodic streams with i.i.d. rounded normal jitter, clamped to [1, horizon]. Zero jitter
/// gives exactly periodic days.
ArrivalDataset synth_dataset(std::uint64_t seed, const SynthSpec& spec);

struct ExperimentConfig {
  std::string dataset;  // CSV path; ignored when `synthetic` is set
  std::vector<std::int64_t> k_values{2, 3, 4};
  std::vector<std::int64_t> n_values{20, 30, 40, 50};
  std::int64_t period_minutes = 21;
  double epsilon = 1.0;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  std::optional<SynthSpec> synthetic;
  unsigned jobs = 1;
  std::int64_t dp_cap = 1'000'000;
  bool fifo_best_of_two = false;

  void validate() const;
};

/// The configured dataset: generated when `synthetic` is set, otherwise loaded from `dataset`.
ArrivalDataset experiment_dataset(const ExperimentConfig& config);

struct FitRecord {
  Date day;
  Direction direction = Direction::Down;
  std::int64_t k = 0;
  std::int64_t n = 0;
  bool ok = false;
  std::string error;
  double runtime_seconds = 0.0;
  MatchingSolution solution;
  Rational fit_minutes;  // matching cost per vessel
};

struct FitRow {
  std::int64_t k = 0;
  std::int64_t n = 0;
  double runtime_seconds = 0.0;
  Rational fit_minutes;
  std::size_t instances = 0;
};

struct FitReport {
  std::vector<FitRecord> records;
  std::vector<FitRow> rows;
  std::size_t failures = 0;
};

/// Fits every (k, n, day, direction) and averages runtime and fit per (k, n).
FitReport run_fit_experiment(const ExperimentConfig& config, const ArrivalDataset& dataset);

struct ScheduleRecord {
  Date day;
  std::int64_t k = 0;
  std::int64_t n = 0;
  bool ok = false;
  std::string error;
  PeriodicInstance instance;
  OptimalResult optimum;
  // Minutes per vessel.
  Rational periodic_opt, alternating, fifo, adv_fifo, realised_periodic;
};

struct ScheduleRow {
  std::int64_t k = 0;
  std::int64_t n = 0;
  Rational periodic_opt, alternating, fifo, adv_fifo, realised_periodic;
  std::size_t instances = 0;
};

struct ScheduleReport {
  std::vector<ScheduleRecord> records;
  std::vector<ScheduleRow> rows;
  std::size_t failures = 0;
};

/// Evaluation horizon of a day in periods, ceil(1440 / period_minutes).
std::int64_t day_horizon(std::int64_t period_minutes);

/// Pairs each day's two fitted directions into one instance, optimizes it and evaluates every
/// policy on the day's bucketed arrivals.
ScheduleReport run_schedule_experiment(const ExperimentConfig& config, const ArrivalDataset& dataset,
                                       const FitReport& fits);

/// `k,n,Runtime,Fit` with two decimals.
void write_fit_csv(std::ostream& out, const std::vector<FitRow>& rows);
/// `k,n,periodicOpt,alternating,FIFO,advFIFO,realisedPeriodic` with two decimals.
void write_schedule_csv(std::ostream& out, const std::vector<ScheduleRow>& rows);

std::string format_fixed2(double value);

}  // namespace lockperiod
