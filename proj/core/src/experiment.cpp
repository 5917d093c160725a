#include "lockperiod/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "lockperiod/detail/parallel.hpp"

namespace lockperiod {

PeriodicInstance rescale_streams(const std::vector<DirectedStream>& streams, std::int64_t period_minutes) {
  if (streams.empty()) throw std::invalid_argument("no streams to rescale");
  if (period_minutes < 1) throw std::invalid_argument("period_minutes must be >= 1");
  PeriodicInstance out;
  for (const auto& ds : streams) {
    const auto lambda = std::max<std::int64_t>(1, round_half_up(ds.stream.lambda / period_minutes));
    const auto mu = std::clamp<std::int64_t>(round_half_up(ds.stream.mu / period_minutes), 1, lambda);
    out.streams.push_back({ds.direction, lambda, mu});
  }
  return out;
}

void SynthSpec::validate() const {
  if (days < 1) throw std::invalid_argument("synthetic days must be >= 1");
  if (horizon < 1 || horizon > 1439) throw std::invalid_argument("synthetic horizon must lie in [1, 1439]");
  if (!(jitter >= 0)) throw std::invalid_argument("jitter must be >= 0");
  if (streams.empty()) throw std::invalid_argument("synthetic spec needs at least one stream");
  for (const auto& s : streams) {
    if (s.lambda < 1 || s.mu < 1) throw std::invalid_argument("synthetic stream needs mu, lambda >= 1");
  }
  parse_date(start_date);
}

ArrivalDataset synth_dataset(std::uint64_t seed, const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, spec.jitter > 0 ? spec.jitter : 1.0);
  const auto first = std::chrono::sys_days(parse_date(spec.start_date));
  std::vector<ArrivalRecord> records;
  for (std::int64_t d = 0; d < spec.days; ++d) {
    const Date date{first + std::chrono::days(d)};
    for (const auto& s : spec.streams) {
      for (auto t = s.mu; t <= spec.horizon; t += s.lambda) {
        auto m = t;
        if (spec.jitter > 0) m += std::llround(noise(rng));
        m = std::clamp<std::int64_t>(m, 1, spec.horizon);
        records.push_back({date, static_cast<int>(m), s.direction});
      }
    }
  }
  return ArrivalDataset(std::move(records));
}

void ExperimentConfig::validate() const {
  if (k_values.empty() || n_values.empty()) throw std::invalid_argument("k and n lists must be non-empty");
  for (auto k : k_values) {
    if (k < 1) throw std::invalid_argument("k values must be >= 1");
  }
  for (auto n : n_values) {
    if (n < 1) throw std::invalid_argument("n values must be >= 1");
  }
  if (period_minutes < 1) throw std::invalid_argument("period_minutes must be >= 1");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (synthetic) synthetic->validate();
  else if (dataset.empty()) throw std::invalid_argument("config needs a dataset path or a synthetic section");
}

ArrivalDataset experiment_dataset(const ExperimentConfig& config) {
  if (config.synthetic) return synth_dataset(config.seed, *config.synthetic);
  return load_arrivals(config.dataset);
}

std::int64_t day_horizon(std::int64_t period_minutes) { return ceil_div(1440, period_minutes); }

namespace {

std::size_t fit_index(std::size_t ki, std::size_t ni, std::size_t di, Direction dir, std::size_t n_count,
                      std::size_t day_count) {
  return ((ki * n_count + ni) * day_count + di) * 2 + index_of(dir);
}

}  // namespace

FitReport run_fit_experiment(const ExperimentConfig& config, const ArrivalDataset& dataset) {
  config.validate();
  const auto days = dataset.days();
  const auto nk = config.k_values.size(), nn = config.n_values.size(), nd = days.size();

  FitReport report;
  report.records.resize(nk * nn * nd * 2);
  detail::parallel_for(report.records.size(), config.jobs, [&](std::size_t i) {
    const auto dir = (i % 2) ? Direction::Up : Direction::Down;
    const auto di = (i / 2) % nd;
    const auto ni = (i / 2 / nd) % nn;
    const auto ki = i / 2 / nd / nn;
    auto& rec = report.records[i];
    rec.day = days[di];
    rec.direction = dir;
    rec.k = config.k_values[ki];
    rec.n = config.n_values[ni];
    try {
      const auto inst = extract_instance(dataset, rec.day, dir, rec.n);
      const auto start = std::chrono::steady_clock::now();
      rec.solution = solve_matching(inst, rec.k);
      const auto stop = std::chrono::steady_clock::now();
      rec.runtime_seconds = std::chrono::duration<double>(stop - start).count();
      rec.fit_minutes = rec.solution.cost / inst.size();
      rec.ok = true;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  });

  for (std::size_t ki = 0; ki < nk; ++ki) {
    for (std::size_t ni = 0; ni < nn; ++ni) {
      FitRow row{config.k_values[ki], config.n_values[ni], 0.0, Rational(0), 0};
      for (std::size_t di = 0; di < nd; ++di) {
        for (auto dir : {Direction::Down, Direction::Up}) {
          const auto& rec = report.records[fit_index(ki, ni, di, dir, nn, nd)];
          if (!rec.ok) {
            ++report.failures;
            continue;
          }
          row.runtime_seconds += rec.runtime_seconds;
          row.fit_minutes += rec.fit_minutes;
          ++row.instances;
        }
      }
      if (row.instances > 0) {
        row.runtime_seconds /= static_cast<double>(row.instances);
        row.fit_minutes /= static_cast<std::int64_t>(row.instances);
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

ScheduleReport run_schedule_experiment(const ExperimentConfig& config, const ArrivalDataset& dataset,
                                       const FitReport& fits) {
  config.validate();
  const auto days = dataset.days();
  const auto nk = config.k_values.size(), nn = config.n_values.size(), nd = days.size();
  if (fits.records.size() != nk * nn * nd * 2) throw std::invalid_argument("fit report does not match config");
  const auto pm = config.period_minutes;
  const auto horizon = day_horizon(pm);

  ScheduleReport report;
  report.records.resize(nk * nn * nd);
  detail::parallel_for(report.records.size(), config.jobs, [&](std::size_t i) {
    const auto di = i % nd;
    const auto ni = (i / nd) % nn;
    const auto ki = i / nd / nn;
    auto& rec = report.records[i];
    rec.day = days[di];
    rec.k = config.k_values[ki];
    rec.n = config.n_values[ni];
    try {
      std::vector<DirectedStream> paired;
      for (auto dir : {Direction::Down, Direction::Up}) {
        const auto& fit = fits.records[fit_index(ki, ni, di, dir, nn, nd)];
        if (!fit.ok) throw std::runtime_error("missing fit for direction " + std::string(1, to_char(dir)));
        for (const auto& s : fit.solution.streams.streams) paired.push_back({dir, s});
      }
      rec.instance = rescale_streams(paired, pm);
      rec.optimum = solve(rec.instance, {CostMode::Canonical, config.dp_cap, 1});

      const auto periodic = arrivals_fn(rec.instance);
      const auto actual_buckets = bucket_to_periods(dataset, rec.day, pm, horizon);
      const auto actual = arrivals_fn(actual_buckets);

      rec.periodic_opt = realized_periodic(rec.optimum.schedule, periodic, horizon).minutes_per_vessel(pm);
      rec.alternating = alternating(actual, horizon).minutes_per_vessel(pm);
      rec.fifo = (config.fifo_best_of_two ? fifo_best_of_two(actual, horizon) : fifo(actual, horizon))
                     .minutes_per_vessel(pm);
      rec.adv_fifo = adv_fifo(actual, horizon).minutes_per_vessel(pm);
      rec.realised_periodic = realized_periodic(rec.optimum.schedule, actual, horizon).minutes_per_vessel(pm);
      rec.ok = true;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  });

  for (std::size_t ki = 0; ki < nk; ++ki) {
    for (std::size_t ni = 0; ni < nn; ++ni) {
      ScheduleRow row;
      row.k = config.k_values[ki];
      row.n = config.n_values[ni];
      for (std::size_t di = 0; di < nd; ++di) {
        const auto& rec = report.records[(ki * nn + ni) * nd + di];
        if (!rec.ok) {
          ++report.failures;
          continue;
        }
        row.periodic_opt += rec.periodic_opt;
        row.alternating += rec.alternating;
        row.fifo += rec.fifo;
        row.adv_fifo += rec.adv_fifo;
        row.realised_periodic += rec.realised_periodic;
        ++row.instances;
      }
      if (row.instances > 0) {
        const auto c = static_cast<std::int64_t>(row.instances);
        for (auto* v : {&row.periodic_opt, &row.alternating, &row.fifo, &row.adv_fifo, &row.realised_periodic}) {
          *v /= c;
        }
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

std::string format_fixed2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

void write_fit_csv(std::ostream& out, const std::vector<FitRow>& rows) {
  out << "k,n,Runtime,Fit\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.n << ',' << format_fixed2(r.runtime_seconds) << ',' << format_fixed2(to_double(r.fit_minutes))
        << '\n';
  }
}

void write_schedule_csv(std::ostream& out, const std::vector<ScheduleRow>& rows) {
  out << "k,n,periodicOpt,alternating,FIFO,advFIFO,realisedPeriodic\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.n;
    for (const auto& v : {r.periodic_opt, r.alternating, r.fifo, r.adv_fifo, r.realised_periodic}) {
      out << ',' << format_fixed2(to_double(v));
    }
    out << '\n';
  }
}

}  // namespace lockperiod
