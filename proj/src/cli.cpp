#include "qmac/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmac/verify.hpp"

namespace qmac::cli {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {"protocol", "protocols",    "stations",  "load",   "loads",
                                                "tau",      "delta",        "slots",     "seed",   "replications",
                                                "trace_cap", "format",      "out",       "check",  "n"};
  return keys;
}

std::vector<std::string> keys_for(const std::string& sub) {
  if (sub == "run") return {"protocol", "stations", "load", "tau", "delta", "slots", "seed", "trace_cap", "format", "out"};
  if (sub == "sweep") {
    return {"protocols", "stations", "loads", "tau", "delta", "slots", "seed", "replications", "format", "out"};
  }
  if (sub == "fairness") return {"stations", "slots", "seed", "replications", "format", "out"};
  return {"check", "n", "out"};
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& field, std::string_view text) {
  const std::string t = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(field, "cannot parse '" + t + "' as a number");
  }
  return value;
}

Protocol parse_protocol_field(const std::string& field, std::string_view text) {
  const auto p = parse_protocol(trim(text));
  if (!p) throw ConfigError(field, "unknown protocol '" + trim(text) + "'");
  return *p;
}

std::string join_protocols(const std::vector<Protocol>& ps) {
  std::string s;
  for (Protocol p : ps) {
    if (!s.empty()) s += ',';
    s += to_string(p);
  }
  return s;
}

std::string join_doubles(const std::vector<double>& xs) {
  std::string s;
  for (double x : xs) {
    if (!s.empty()) s += ',';
    s += format_double(x);
  }
  return s;
}

Json config_json(const Settings& s) {
  Json j = Json::object();
  for (const auto& [k, v] : s.echo()) j[k] = v;
  return j;
}

std::string header_comment(const Settings& s) {
  std::string h = "# " + std::string(kToolName) + " " + std::string(kVersion) + "\n# config:";
  for (const auto& [k, v] : s.echo()) h += " " + k + "=" + v;
  return h + "\n";
}

Json envelope(const Settings& s) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["command"] = s.subcommand;
  j["config"] = config_json(s);
  return j;
}

Json result_to_json(const ExperimentResult& r) {
  Json j;
  j["protocol"] = to_string(r.protocol);
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["offered_load_R"] = r.offered_load_R;
  j["effective_load"] = r.effective_load;
  j["success_rate_S"] = r.success_rate_S;
  j["normalized_throughput_T"] = r.normalized_throughput_T;
  j["cs_slots"] = r.cs_slots;
  j["total_slots"] = r.total_slots;
  j["frames"] = r.frames;
  j["frames_with_collision"] = r.frames_with_collision;
  j["arrivals"] = r.arrivals;
  j["attempts"] = r.attempts;
  j["successes"] = r.successes;
  j["collision_count"] = r.collision_count;
  j["per_station_airtime"] = r.per_station_airtime;
  Json stations = Json::array();
  for (const StationStats& st : r.stations) {
    stations.push_back(Json{{"id", st.id},
                            {"arrivals", st.arrivals},
                            {"attempts", st.attempts},
                            {"successes", st.successes},
                            {"backlog", st.backlog}});
  }
  j["stations"] = std::move(stations);
  const SlotSummary& sum = r.slot_outcomes_summary;
  j["slot_outcomes_summary"] = Json{{"idle", sum.idle},
                                    {"success", sum.success},
                                    {"collision", sum.collision},
                                    {"ap_reclaimed", sum.ap_reclaimed},
                                    {"ap_scheduled", sum.ap_scheduled}};
  return j;
}

Json box_to_json(const BoxSummary& b) {
  return Json{{"min", b.min},
              {"first_quartile", b.first},
              {"median", b.median},
              {"third_quartile", b.third},
              {"max", b.max},
              {"lower_whisker", b.lower_whisker},
              {"upper_whisker", b.upper_whisker},
              {"mean", b.mean},
              {"outliers", b.outliers}};
}

void csv_row(std::ostringstream& out, const ExperimentResult& r, double load, int replication) {
  out << to_string(r.protocol) << ',' << r.n << ',' << format_double(load) << ',' << replication << ',' << r.seed
      << ',' << format_double(r.success_rate_S) << ',' << format_double(r.normalized_throughput_T) << ','
      << r.collision_count << '\n';
}

constexpr std::string_view kSweepColumns = "protocol,n,load,replication,seed,S,T,collisions\n";

// Writes payload to the resolved destination.
void emit(const Settings& s, const std::string& payload, std::ostream& out) {
  std::string path = s.out;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      path = (std::filesystem::path(dir) / (s.subcommand + (s.format == Format::Json ? ".json" : ".csv"))).string();
    }
  }
  if (path.empty() || path == "-") {
    out << payload;
    return;
  }
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << payload;
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

int cmd_run(const Settings& s, std::ostream& out) {
  SimConfig c = s.sim_config(s.protocol);
  c.trace_cap = s.trace_cap;
  const RunOutput result = run(c);
  emit(s, s.format == Format::Json ? run_json(s, result) : run_csv(s, result), out);
  return 0;
}

int cmd_sweep(const Settings& s, std::ostream& out) {
  std::vector<std::pair<Protocol, std::vector<SweepPoint>>> rows;
  for (Protocol p : s.protocols) rows.emplace_back(p, sweep(s.sim_config(p), s.loads, s.replications));
  emit(s, s.format == Format::Json ? sweep_json(s, rows) : sweep_csv(s, rows), out);
  return 0;
}

int cmd_fairness(const Settings& s, std::ostream& out) {
  const FairnessResult f = fairness_experiment(s.stations, s.slots, s.replications, s.seed);
  emit(s, s.format == Format::Json ? fairness_json(s, f) : fairness_csv(s, f), out);
  return 0;
}

int cmd_verify(const Settings& s, std::ostream& out, std::ostream& err) {
  std::vector<CheckReport> reports;
  try {
    reports = run_verify(s.check, s.lehmer_n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("check", e.what());
  }
  std::ostringstream text;
  const CheckReport* first_failure = nullptr;
  for (const CheckReport& r : reports) {
    text << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    if (!r.passed && first_failure == nullptr) first_failure = &r;
  }
  emit(s, text.str(), out);
  if (first_failure != nullptr) {
    err << "verify failed: " << first_failure->name << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

KeyValues parse_config_text(std::string_view text) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config", "line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    for (char& ch : key) {
      if (ch == '-') ch = '_';
    }
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
      throw ConfigError("config", "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    kv[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return kv;
}

std::vector<double> parse_load_list(std::string_view text) {
  const std::string t = trim(text);
  std::vector<double> loads;
  if (t.empty()) return loads;
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(t);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("loads", "range must be start:stop:step");
    const double start = parse_number<double>("loads", parts[0]);
    const double stop = parse_number<double>("loads", parts[1]);
    const double step = parse_number<double>("loads", parts[2]);
    if (!(step > 0.0) || stop < start) throw ConfigError("loads", "range needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      loads.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return loads;
  }
  std::stringstream ss(t);
  for (std::string p; std::getline(ss, p, ',');) {
    if (trim(p).empty()) continue;
    loads.push_back(parse_number<double>("loads", p));
  }
  return loads;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::vector<std::pair<std::string, std::string>> Settings::echo() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("subcommand", subcommand);
  if (subcommand == "run") e.emplace_back("protocol", std::string(to_string(protocol)));
  if (subcommand == "sweep") e.emplace_back("protocols", join_protocols(protocols));
  if (subcommand == "verify") {
    e.emplace_back("check", check);
    e.emplace_back("n", std::to_string(lehmer_n));
    return e;
  }
  e.emplace_back("stations", std::to_string(stations));
  if (subcommand == "run") e.emplace_back("load", format_double(load));
  if (subcommand == "sweep") e.emplace_back("loads", join_doubles(loads));
  if (subcommand != "fairness") {
    e.emplace_back("tau", format_double(tau));
    e.emplace_back("delta", format_double(delta));
  }
  e.emplace_back("slots", std::to_string(slots));
  e.emplace_back("seed", std::to_string(seed));
  if (subcommand != "run") e.emplace_back("replications", std::to_string(replications));
  if (subcommand == "run") e.emplace_back("trace_cap", std::to_string(trace_cap));
  e.emplace_back("format", format == Format::Json ? "json" : "csv");
  return e;
}

SimConfig Settings::sim_config(Protocol p) const {
  SimConfig c;
  c.protocol = p;
  c.n = stations;
  c.tau = tau;
  c.delta = delta;
  c.total_cs_slots = slots;
  c.seed = seed;
  c.set_offered_load(load);
  return c;
}

Settings resolve_settings(const std::string& subcommand, const KeyValues& values) {
  Settings s;
  s.subcommand = subcommand;
  if (subcommand == "fairness") s.replications = 30;
  auto get = [&](const std::string& key) -> const std::string* {
    const auto allowed = keys_for(subcommand);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) return nullptr;
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("protocol")) s.protocol = parse_protocol_field("protocol", *v);
  if (const auto* v = get("protocols")) {
    std::stringstream ss(*v);
    for (std::string p; std::getline(ss, p, ',');) {
      if (!trim(p).empty()) s.protocols.push_back(parse_protocol_field("protocols", p));
    }
  } else if (subcommand == "sweep") {
    s.protocols = {Protocol::TemporalOrdering, Protocol::Aloha};
  }
  if (subcommand == "sweep" && s.protocols.empty()) throw ConfigError("protocols", "at least one protocol is required");
  if (const auto* v = get("stations")) s.stations = parse_number<int>("stations", *v);
  if (const auto* v = get("load")) s.load = parse_number<double>("load", *v);
  if (const auto* v = get("loads")) s.loads = parse_load_list(*v);
  if (subcommand == "sweep" && s.loads.empty()) throw ConfigError("loads", "at least one load value is required");
  if (const auto* v = get("tau")) s.tau = parse_number<double>("tau", *v);
  if (const auto* v = get("delta")) s.delta = parse_number<double>("delta", *v);
  if (const auto* v = get("slots")) s.slots = parse_number<std::uint64_t>("slots", *v);
  if (const auto* v = get("seed")) s.seed = parse_number<std::uint64_t>("seed", *v);
  if (const auto* v = get("replications")) s.replications = parse_number<int>("replications", *v);
  if (const auto* v = get("trace_cap")) s.trace_cap = parse_number<std::size_t>("trace_cap", *v);
  if (const auto* v = get("format")) {
    if (trim(*v) == "csv") {
      s.format = Format::Csv;
    } else if (trim(*v) == "json") {
      s.format = Format::Json;
    } else {
      throw ConfigError("format", "must be csv or json");
    }
  }
  if (const auto* v = get("out")) s.out = *v;
  if (const auto* v = get("check")) s.check = trim(*v);
  if (const auto* v = get("n")) s.lehmer_n = parse_number<int>("n", *v);

  if (subcommand == "verify") {
    if (s.lehmer_n < 1 || s.lehmer_n > 10) throw ConfigError("n", "must be in 1..10");
    return s;
  }
  if (s.stations < 1) throw ConfigError("stations", "must be at least 1, got " + std::to_string(s.stations));
  if (!std::isfinite(s.load) || s.load < 0.0) throw ConfigError("load", "must be non-negative");
  for (double l : s.loads) {
    if (!std::isfinite(l) || l < 0.0) throw ConfigError("loads", "load values must be non-negative");
  }
  if (s.replications < 1) throw ConfigError("replications", "must be at least 1");
  if (subcommand == "run") validate(s.sim_config(s.protocol));
  if (subcommand == "sweep") {
    for (Protocol p : s.protocols) validate(s.sim_config(p));
  }
  if (subcommand == "fairness") {
    SimConfig c = s.sim_config(Protocol::TemporalOrdering);
    c.saturated = true;
    validate(c);
  }
  return s;
}

std::string run_csv(const Settings& s, const RunOutput& out) {
  std::ostringstream o;
  o << header_comment(s) << kSweepColumns;
  csv_row(o, out.result, s.load, 0);
  return o.str();
}

std::string run_json(const Settings& s, const RunOutput& out) {
  Json j = envelope(s);
  j["result"] = result_to_json(out.result);
  if (s.trace_cap > 0) {
    Json trace = Json::array();
    for (const SlotOutcome& t : out.trace) {
      trace.push_back(Json{{"slot", t.slot_index},
                           {"kind", to_string(t.kind)},
                           {"stations", t.stations},
                           {"attempts", t.attempts}});
    }
    j["trace"] = std::move(trace);
  }
  return j.dump(2) + "\n";
}

std::string sweep_csv(const Settings& s, const std::vector<std::pair<Protocol, std::vector<SweepPoint>>>& rows) {
  std::ostringstream o;
  o << header_comment(s) << kSweepColumns;
  for (const auto& [protocol, points] : rows) {
    for (const SweepPoint& p : points) csv_row(o, p.result, p.load, p.replication);
  }
  return o.str();
}

std::string sweep_json(const Settings& s, const std::vector<std::pair<Protocol, std::vector<SweepPoint>>>& rows) {
  Json j = envelope(s);
  Json points = Json::array();
  for (const auto& [protocol, pts] : rows) {
    for (const SweepPoint& p : pts) {
      points.push_back(Json{{"load", p.load}, {"replication", p.replication}, {"result", result_to_json(p.result)}});
    }
  }
  j["points"] = std::move(points);
  return j.dump(2) + "\n";
}

std::string fairness_csv(const Settings& s, const FairnessResult& f) {
  std::ostringstream o;
  o << header_comment(s) << "n,station,replication,airtime_ratio\n";
  for (int r = 0; r < f.replications(); ++r) {
    for (int j = 1; j <= f.n; ++j) {
      o << f.n << ',' << j << ',' << r << ','
        << format_double(f.ratios[static_cast<std::size_t>(r)][static_cast<std::size_t>(j - 1)]) << '\n';
    }
  }
  return o.str();
}

std::string fairness_json(const Settings& s, const FairnessResult& f) {
  Json j = envelope(s);
  j["n"] = f.n;
  j["ideal_ratio"] = 1.0 / static_cast<double>(f.n);
  j["ratios"] = f.ratios;
  j["mean_ratio"] = f.mean_ratio;
  Json boxes = Json::array();
  for (std::size_t i = 0; i < f.per_station.size(); ++i) {
    Json b = box_to_json(f.per_station[i]);
    b["station"] = i + 1;
    boxes.push_back(std::move(b));
  }
  j["per_station"] = std::move(boxes);
  return j.dump(2) + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum-assisted MAC protocol simulator", std::string(kToolName)};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::map<std::string, std::map<std::string, std::pair<CLI::Option*, std::string>>> flags;
  std::map<std::string, std::string> config_paths;
  const std::map<std::string, std::string> descriptions = {
      {"run", "Simulate one configuration"},
      {"sweep", "Throughput versus offered load"},
      {"verify", "Exhaustive protocol checks"},
      {"fairness", "Per-station airtime under saturation"},
  };
  for (const auto& [name, desc] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_paths[name], "key=value configuration file");
    auto& table = flags[name];
    for (const std::string& key : keys_for(name)) {
      std::string flag = "--" + key;
      for (char& ch : flag) {
        if (ch == '_') ch = '-';
      }
      auto& slot = table[key];
      slot.first = sub->add_option(flag, slot.second);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    KeyValues values;
    if (const std::string& path = config_paths[sub]; !path.empty()) {
      std::ifstream file(path);
      if (!file) throw ConfigError("config", "cannot read '" + path + "'");
      std::stringstream buf;
      buf << file.rdbuf();
      values = parse_config_text(buf.str());
    }
    for (const auto& [key, slot] : flags[sub]) {
      if (slot.first->count() > 0) values[key] = slot.second;
    }
    const Settings settings = resolve_settings(sub, values);
    if (sub == "run") return cmd_run(settings, out);
    if (sub == "sweep") return cmd_sweep(settings, out);
    if (sub == "fairness") return cmd_fairness(settings, out);
    return cmd_verify(settings, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qmac::cli
