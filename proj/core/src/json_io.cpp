#include "lockperiod/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace lockperiod {

namespace {

std::string dir_str(Direction d) { return std::string(1, to_char(d)); }

std::string action_str(Action a) { return std::string(1, to_char(a)); }

Action action_from(const std::string& s) {
  if (s.size() != 1) throw std::invalid_argument("bad action '" + s + "'");
  return parse_action(s[0]);
}

}  // namespace

json rational_to_json(const Rational& r) { return {{"num", r.numerator()}, {"den", r.denominator()}}; }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  const auto den = j.at("den").get<std::int64_t>();
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(j.at("num").get<std::int64_t>(), den);
}

json stream_set_to_json(const StreamSet& set, const std::vector<Direction>* directions) {
  if (directions && directions->size() != set.streams.size()) {
    throw std::invalid_argument("one direction per stream required");
  }
  json streams = json::array();
  for (std::size_t i = 0; i < set.streams.size(); ++i) {
    const auto& s = set.streams[i];
    json js = {{"mu", rational_to_json(s.mu)}, {"lambda", rational_to_json(s.lambda)}, {"count", s.count}};
    if (directions) js["direction"] = dir_str((*directions)[i]);
    streams.push_back(std::move(js));
  }
  return {{"T", set.horizon}, {"streams", std::move(streams)}};
}

StreamSet stream_set_from_json(const json& j) {
  StreamSet set;
  set.horizon = j.at("T").get<std::int64_t>();
  for (const auto& js : j.at("streams")) {
    set.streams.push_back(
        {rational_from_json(js.at("mu")), rational_from_json(js.at("lambda")), js.at("count").get<std::int64_t>()});
  }
  set.validate();
  return set;
}

std::vector<DirectedStream> directed_streams_from_json(const json& j) {
  std::vector<DirectedStream> out;
  const auto set = stream_set_from_json(j);
  const auto& arr = j.at("streams");
  for (std::size_t i = 0; i < set.streams.size(); ++i) {
    out.push_back({parse_direction(arr[i].at("direction").get<std::string>()), set.streams[i]});
  }
  return out;
}

json schedule_to_json(const Schedule& s) {
  json actions = json::array();
  for (auto a : s.actions) actions.push_back(action_str(a));
  return {{"period", s.period()}, {"initial_alignment", dir_str(s.initial_alignment)}, {"actions", std::move(actions)}};
}

Schedule schedule_from_json(const json& j) {
  Schedule s;
  s.initial_alignment = parse_direction(j.at("initial_alignment").get<std::string>());
  for (const auto& a : j.at("actions")) s.actions.push_back(action_from(a.get<std::string>()));
  if (j.contains("period") && j.at("period").get<std::int64_t>() != s.period()) {
    throw std::invalid_argument("schedule period does not match its action count");
  }
  if (s.actions.empty()) throw std::invalid_argument("schedule has no actions");
  return s;
}

json instance_to_json(const PeriodicInstance& inst) {
  json streams = json::array();
  for (const auto& s : inst.streams) {
    streams.push_back({{"direction", dir_str(s.direction)}, {"lambda", s.lambda}, {"mu", s.mu}});
  }
  return {{"streams", std::move(streams)}};
}

PeriodicInstance instance_from_json(const json& j) {
  PeriodicInstance inst;
  for (const auto& js : j.at("streams")) {
    inst.streams.push_back({parse_direction(js.at("direction").get<std::string>()), js.at("lambda").get<std::int64_t>(),
                            js.at("mu").get<std::int64_t>()});
  }
  inst.validate();
  return inst;
}

json optimal_result_to_json(const OptimalResult& canonical, const std::optional<OptimalResult>& literal) {
  json costs = {{"canonical", rational_to_json(canonical.avg_cost)}};
  if (literal) costs["literal"] = rational_to_json(literal->avg_cost);
  const auto& s0 = canonical.initial_state;
  return {{"avg_cost", std::move(costs)},
          {"total_cost", canonical.total_cost},
          {"horizon", canonical.horizon},
          {"hyper_period", canonical.hyper_period},
          {"initial_state",
           {{"alignment", dir_str(s0.alignment)}, {"own_waits", s0.own_waits}, {"other_waits", s0.other_waits}}},
          {"schedule", schedule_to_json(canonical.schedule)}};
}

json chunk_to_json(const Chunk& c) {
  json actions = json::array();
  for (auto a : c.actions) actions.push_back(action_str(a));
  return {{"start", c.start},
          {"end", c.end},
          {"next_start", c.next_start},
          {"position", to_string(c.position)},
          {"next_position", to_string(c.next_position)},
          {"case", to_string(c.kind)},
          {"start_alignment", dir_str(c.start_alignment)},
          {"cost", c.cost},
          {"window_cost", c.window_cost},
          {"free_tail", c.free_tail},
          {"actions", std::move(actions)}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.dataset = j.value("dataset", std::string{});
  if (j.contains("k")) c.k_values = j.at("k").get<std::vector<std::int64_t>>();
  if (j.contains("n")) c.n_values = j.at("n").get<std::vector<std::int64_t>>();
  c.period_minutes = j.value("period_minutes", c.period_minutes);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.output_dir = j.value("output_dir", c.output_dir);
  c.seed = j.value("seed", c.seed);
  c.jobs = j.value("jobs", c.jobs);
  c.dp_cap = j.value("dp_cap", c.dp_cap);
  c.fifo_best_of_two = j.value("fifo_best_of_two", c.fifo_best_of_two);
  if (j.contains("synthetic")) {
    const auto& js = j.at("synthetic");
    SynthSpec s;
    s.days = js.value("days", s.days);
    s.horizon = js.value("horizon", s.horizon);
    s.jitter = js.value("jitter", s.jitter);
    s.start_date = js.value("start_date", s.start_date);
    for (const auto& st : js.at("streams")) {
      s.streams.push_back({parse_direction(st.at("direction").get<std::string>()), st.at("mu").get<std::int64_t>(),
                           st.at("lambda").get<std::int64_t>()});
    }
    c.synthetic = std::move(s);
  }
  c.validate();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j = {{"dataset", c.dataset},   {"k", c.k_values},       {"n", c.n_values},
            {"period_minutes", c.period_minutes}, {"epsilon", c.epsilon}, {"output_dir", c.output_dir},
            {"seed", c.seed},         {"jobs", c.jobs},        {"dp_cap", c.dp_cap},
            {"fifo_best_of_two", c.fifo_best_of_two}};
  if (c.synthetic) {
    json streams = json::array();
    for (const auto& s : c.synthetic->streams) {
      streams.push_back({{"direction", dir_str(s.direction)}, {"mu", s.mu}, {"lambda", s.lambda}});
    }
    j["synthetic"] = {{"days", c.synthetic->days},
                      {"horizon", c.synthetic->horizon},
                      {"jitter", c.synthetic->jitter},
                      {"start_date", c.synthetic->start_date},
                      {"streams", std::move(streams)}};
  }
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace lockperiod
