#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lockperiod/arrivals.hpp"
#include "lockperiod/dp_optimizer.hpp"
#include "lockperiod/experiment.hpp"
#include "lockperiod/json_io.hpp"
#include "lockperiod/matching.hpp"
#include "lockperiod/policies.hpp"
#include "lockperiod/rolling.hpp"
#include "lockperiod/two_stream.hpp"

using namespace lockperiod;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitPartial = 2;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::optional<std::int64_t> dp_cap;
};

// "-" writes to stdout.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

Schedule load_schedule(const std::string& path) {
  const auto j = read_json_file(path);
  // Accepts a plain schedule or the output of `schedule`.
  return schedule_from_json(j.contains("schedule") ? j.at("schedule") : j);
}

// ---- synth ----

struct SynthArgs {
  std::string config;
  std::vector<std::string> streams;  // DIR:MU:LAMBDA, minutes
  std::int64_t days = 1;
  double jitter = 0.0;
  std::int64_t horizon = 1439;
  std::string start_date = "2019-01-02";
  std::string out = "-";
};

int run_synth(const SynthArgs& a, const Globals& g) {
  SynthSpec spec;
  std::uint64_t seed = 0;
  if (!a.config.empty()) {
    const auto cfg = config_from_json(read_json_file(a.config));
    if (!cfg.synthetic) throw std::invalid_argument("config has no synthetic section");
    spec = *cfg.synthetic;
    seed = cfg.seed;
  } else {
    spec.days = a.days;
    spec.jitter = a.jitter;
    spec.horizon = a.horizon;
    spec.start_date = a.start_date;
    for (const auto& s : a.streams) {
      const auto parts = split(s, ':');
      if (parts.size() != 3) throw std::invalid_argument("stream must be DIR:MU:LAMBDA, got '" + s + "'");
      spec.streams.push_back({parse_direction(parts[0]), std::stoll(parts[1]), std::stoll(parts[2])});
    }
  }
  if (g.seed) seed = *g.seed;
  std::ostringstream os;
  write_arrivals(os, synth_dataset(seed, spec));
  emit(a.out, os.str());
  return kExitOk;
}

// ---- fit ----

struct FitArgs {
  std::string arrivals;
  std::string date;
  std::string direction;
  std::int64_t n = 20;
  std::int64_t k = 2;
  std::string out = "-";
};

int run_fit(const FitArgs& a, const Globals& g) {
  const auto data = load_arrivals(a.arrivals);
  if (data.empty()) throw std::invalid_argument("no arrivals in " + a.arrivals);
  const auto day = a.date.empty() ? data.days().front() : parse_date(a.date);
  const auto dir = parse_direction(a.direction);
  const auto inst = extract_instance(data, day, dir, a.n);
  MatchingOptions opts;
  opts.jobs = g.jobs.value_or(1);
  const auto sol = solve_matching(inst, std::min(a.k, inst.size()), opts);
  const std::vector<Direction> dirs(sol.streams.streams.size(), dir);
  auto j = stream_set_to_json(sol.streams, &dirs);
  j["cost"] = rational_to_json(sol.cost);
  j["fit_minutes"] = rational_to_json(sol.cost / Rational(inst.size()));
  emit(a.out, j.dump(2) + "\n");
  return kExitOk;
}

// ---- schedule ----

struct ScheduleArgs {
  std::string instance;
  std::vector<std::string> streams;
  std::int64_t period_minutes = 21;
  std::string out = "-";
};

PeriodicInstance instance_from_args(const std::string& instance, const std::vector<std::string>& streams,
                                    std::int64_t period_minutes) {
  if (!instance.empty()) return instance_from_json(read_json_file(instance));
  std::vector<DirectedStream> fitted;
  for (const auto& path : streams) {
    const auto part = directed_streams_from_json(read_json_file(path));
    fitted.insert(fitted.end(), part.begin(), part.end());
  }
  if (fitted.empty()) throw std::invalid_argument("need --instance or --streams");
  return rescale_streams(fitted, period_minutes);
}

int run_schedule(const ScheduleArgs& a, const Globals& g) {
  const auto inst = instance_from_args(a.instance, a.streams, a.period_minutes);
  DpOptions opts;
  opts.cap = g.dp_cap.value_or(opts.cap);
  opts.jobs = g.jobs.value_or(1);
  const auto canonical = solve(inst, opts);
  opts.mode = CostMode::Literal;
  const auto literal = solve(inst, opts);
  auto j = optimal_result_to_json(canonical, literal);
  j["instance"] = instance_to_json(inst);
  emit(a.out, j.dump(2) + "\n");
  return kExitOk;
}

// ---- evaluate ----

struct EvaluateArgs {
  std::string policies = "alternating,fifo,advfifo,realized";
  std::string arrivals;
  std::string schedule;
  std::string date;
  std::int64_t period_minutes = 21;
  bool best_of_two = false;
  std::string out = "-";
};

int run_evaluate(const EvaluateArgs& a) {
  std::vector<PolicyId> ids;
  for (const auto& p : split(a.policies, ',')) ids.push_back(parse_policy(p));
  const auto data = load_arrivals(a.arrivals);
  std::optional<Schedule> sched;
  if (!a.schedule.empty()) sched = load_schedule(a.schedule);
  for (auto id : ids) {
    if (id == PolicyId::RealizedPeriodic && !sched) throw std::invalid_argument("realized needs --schedule");
  }
  std::vector<Date> days = a.date.empty() ? data.days() : std::vector<Date>{parse_date(a.date)};
  const auto horizon = day_horizon(a.period_minutes);
  std::ostringstream os;
  os << "date,policy,vessels,wait_periods,minutes_per_vessel\n";
  for (const auto& day : days) {
    const auto fn = arrivals_fn(bucket_to_periods(data, day, a.period_minutes, horizon));
    for (auto id : ids) {
      PolicyRun run;
      switch (id) {
        case PolicyId::Alternating: run = alternating(fn, horizon); break;
        case PolicyId::Fifo: run = a.best_of_two ? fifo_best_of_two(fn, horizon) : fifo(fn, horizon); break;
        case PolicyId::AdvFifo: run = adv_fifo(fn, horizon); break;
        case PolicyId::RealizedPeriodic: run = realized_periodic(*sched, fn, horizon); break;
      }
      os << format_date(day) << ',' << to_string(id) << ',' << run.result.arrivals << ',' << run.result.total_wait
         << ',' << format_fixed2(to_double(run.minutes_per_vessel(a.period_minutes))) << '\n';
    }
  }
  emit(a.out, os.str());
  return kExitOk;
}

// ---- rolling ----

struct RollingArgs {
  std::string instance;
  double epsilon = 1.0;
  std::int64_t start = 1;
  std::int64_t chunks = 10;
  std::int64_t window = 0;
  std::string out = "-";
};

int run_rolling(const RollingArgs& a, const Globals& g) {
  const auto inst = instance_from_json(read_json_file(a.instance));
  const auto res = generate(inst, a.start, a.chunks, a.epsilon, a.window, g.dp_cap.value_or(1'000'000));
  std::ostringstream os;
  for (const auto& c : res.chunks) os << chunk_to_json(c).dump() << '\n';
  emit(a.out, os.str());
  return kExitOk;
}

// ---- experiment ----

struct ExperimentArgs {
  std::string config;
  std::string out_dir;
  bool best_of_two = false;
};

int run_experiment(const ExperimentArgs& a, const Globals& g) {
  auto cfg = config_from_json(read_json_file(a.config));
  if (g.seed) cfg.seed = *g.seed;
  if (g.jobs) cfg.jobs = *g.jobs;
  if (g.dp_cap) cfg.dp_cap = *g.dp_cap;
  if (!a.out_dir.empty()) cfg.output_dir = a.out_dir;
  if (a.best_of_two) cfg.fifo_best_of_two = true;
  cfg.validate();

  const auto data = experiment_dataset(cfg);
  const auto fits = run_fit_experiment(cfg, data);
  const auto sched = run_schedule_experiment(cfg, data, fits);

  std::filesystem::create_directories(cfg.output_dir);
  const auto dir = std::filesystem::path(cfg.output_dir);
  std::ostringstream fit_csv, sched_csv;
  write_fit_csv(fit_csv, fits.rows);
  write_schedule_csv(sched_csv, sched.rows);
  emit((dir / "fit.csv").string(), fit_csv.str());
  emit((dir / "schedule.csv").string(), sched_csv.str());

  for (const auto& r : fits.records) {
    if (!r.ok) {
      std::cerr << "fit failed: " << format_date(r.day) << ' ' << to_char(r.direction) << " k=" << r.k
                << " n=" << r.n << ": " << r.error << '\n';
    }
  }
  for (const auto& r : sched.records) {
    if (!r.ok) std::cerr << "schedule failed: " << format_date(r.day) << " k=" << r.k << " n=" << r.n << ": " << r.error << '\n';
  }
  std::cerr << "wrote " << (dir / "fit.csv").string() << " and " << (dir / "schedule.csv").string() << "; "
            << fits.failures << " fit and " << sched.failures << " schedule failures\n";
  return fits.failures + sched.failures > 0 ? kExitPartial : kExitOk;
}

// ---- policy two-stream ----

struct TwoStreamArgs {
  std::string instance;
  std::int64_t mu_down = 0, mu_up = 0, lambda_down = 0, lambda_up = 0;
  std::vector<std::int64_t> t;
};

int run_two_stream(const TwoStreamArgs& a) {
  TwoStreamParams p;
  if (!a.instance.empty()) {
    p = TwoStreamParams::from_instance(instance_from_json(read_json_file(a.instance)));
  } else {
    p = {a.mu_down, a.mu_up, a.lambda_down, a.lambda_up};
  }
  p.validate();
  for (auto t : a.t) std::cout << t << ' ' << to_char(closed_form_action(p, t)) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic lock scheduling: stream fitting, optimal schedules and policy evaluation"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::int64_t dp_cap = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for synthetic data");
  auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  auto* cap_opt = app.add_option("--dp-cap", dp_cap, "Largest DP horizon in periods")->check(CLI::PositiveNumber);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic arrival CSV");
  synth->add_option("--config", synth_args.config, "Experiment config with a synthetic section");
  synth->add_option("--stream", synth_args.streams, "DIR:MU:LAMBDA in minutes (repeatable)");
  synth->add_option("--days", synth_args.days)->check(CLI::PositiveNumber);
  synth->add_option("--jitter", synth_args.jitter, "Standard deviation in minutes")->check(CLI::NonNegativeNumber);
  synth->add_option("--horizon", synth_args.horizon, "Last minute index of a day");
  synth->add_option("--start-date", synth_args.start_date);
  synth->add_option("--out", synth_args.out);

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit k periodic streams to one day and direction");
  fit->add_option("--arrivals", fit_args.arrivals)->required();
  fit->add_option("--date", fit_args.date, "Day to fit (default: first day)");
  fit->add_option("--direction", fit_args.direction, "U or D")->required();
  fit->add_option("--n", fit_args.n, "Number of arrivals")->check(CLI::PositiveNumber);
  fit->add_option("--k", fit_args.k, "Number of streams")->check(CLI::PositiveNumber);
  fit->add_option("--out", fit_args.out);

  ScheduleArgs schedule_args;
  auto* schedule = app.add_subcommand("schedule", "Optimal periodic schedule by dynamic programming");
  auto* inst_opt = schedule->add_option("--instance", schedule_args.instance, "Instance JSON in lock periods");
  schedule->add_option("--streams", schedule_args.streams, "Fitted stream-set JSON (repeatable)")->excludes(inst_opt);
  schedule->add_option("--period-minutes", schedule_args.period_minutes)->check(CLI::PositiveNumber);
  schedule->add_option("--out", schedule_args.out);

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate policies on bucketed arrival data");
  evaluate->add_option("--policies", eval_args.policies, "Comma-separated: alternating,fifo,advfifo,realized");
  evaluate->add_option("--arrivals", eval_args.arrivals)->required();
  evaluate->add_option("--schedule", eval_args.schedule, "Schedule JSON for the realized policy");
  evaluate->add_option("--date", eval_args.date, "Single day (default: every day)");
  evaluate->add_option("--period-minutes", eval_args.period_minutes)->check(CLI::PositiveNumber);
  evaluate->add_flag("--best-of-two", eval_args.best_of_two, "FIFO from both alignments, keep the cheaper");
  evaluate->add_option("--out", eval_args.out);

  RollingArgs rolling_args;
  auto* rolling = app.add_subcommand("rolling", "Rolling-horizon approximate schedule, one chunk per line");
  rolling->add_option("--instance", rolling_args.instance)->required();
  rolling->add_option("--epsilon", rolling_args.epsilon)->check(CLI::PositiveNumber);
  rolling->add_option("--start", rolling_args.start);
  rolling->add_option("--chunks", rolling_args.chunks)->check(CLI::PositiveNumber);
  rolling->add_option("--window", rolling_args.window, "Window length (default from k and epsilon)");
  rolling->add_option("--out", rolling_args.out);

  ExperimentArgs exp_args;
  auto* experiment = app.add_subcommand("experiment", "Full pipeline: fit table and schedule table");
  experiment->add_option("--config", exp_args.config)->required();
  experiment->add_option("--out-dir", exp_args.out_dir);
  experiment->add_flag("--best-of-two", exp_args.best_of_two);

  TwoStreamArgs ts_args;
  auto* policy = app.add_subcommand("policy", "Policy queries");
  policy->require_subcommand(1);
  auto* two_stream = policy->add_subcommand("two-stream", "Closed-form two-stream action at period t");
  auto* ts_inst = two_stream->add_option("--instance", ts_args.instance);
  two_stream->add_option("--mu-down", ts_args.mu_down)->excludes(ts_inst);
  two_stream->add_option("--mu-up", ts_args.mu_up)->excludes(ts_inst);
  two_stream->add_option("--lambda-down", ts_args.lambda_down)->excludes(ts_inst);
  two_stream->add_option("--lambda-up", ts_args.lambda_up)->excludes(ts_inst);
  two_stream->add_option("--t", ts_args.t, "Period(s) to query")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFatal;
  }
  if (seed_opt->count() > 0) g.seed = seed;
  if (jobs_opt->count() > 0) g.jobs = jobs;
  if (cap_opt->count() > 0) g.dp_cap = dp_cap;

  try {
    if (*synth) return run_synth(synth_args, g);
    if (*fit) return run_fit(fit_args, g);
    if (*schedule) return run_schedule(schedule_args, g);
    if (*evaluate) return run_evaluate(eval_args);
    if (*rolling) return run_rolling(rolling_args, g);
    if (*experiment) return run_experiment(exp_args, g);
    if (*two_stream) return run_two_stream(ts_args);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFatal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFatal;
  }
  return kExitFatal;
}
