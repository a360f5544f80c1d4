#pragma once

// Command-line front end: run, sweep, verify and fairness subcommands.
//
// Settings come from an optional key=value file (--config) overridden by
// flags; every key has a flag of the same name with '_' spelled '-'.
//
//   protocol      run: qubit-distribution | transmit-first-election |
//                 temporal-ordering | aloha
//   protocols     sweep: comma-separated protocol list
//   stations      station count n
//   load          run: aggregate offered load R (Erlangs over CS slots)
//   loads         sweep: "a,b,c" or "start:stop:step"
//   tau           packet/slot time in seconds
//   delta         temporal-ordering delay quantum in seconds
//   slots         CS slots per run
//   seed          64-bit base seed
//   replications  runs per sweep point / fairness replications
//   trace_cap     slot outcomes kept in the JSON trace (run only)
//   format        csv | json
//   out           output path; "-" is stdout
//   check, n      verify: check name (or "all") and Lehmer size
//
// Without --out, results go to $QMAC_OUTPUT_DIR/<subcommand>.<format> when
// that variable is set, otherwise to stdout.
//
// Exit codes: 0 success, 1 runtime or verification failure, 2 configuration error.

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qmac/experiments.hpp"
#include "qmac/sim.hpp"

namespace qmac::cli {

inline constexpr std::string_view kToolName = "qmac";
inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr const char* kOutputDirEnv = "QMAC_OUTPUT_DIR";

enum class Format { Csv, Json };

using KeyValues = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment. Throws ConfigError("config", ...)
/// naming the offending line.
KeyValues parse_config_text(std::string_view text);

struct Settings {
  std::string subcommand;
  Protocol protocol = Protocol::TemporalOrdering;
  std::vector<Protocol> protocols;
  int stations = 8;
  double load = 0.5;
  std::vector<double> loads;
  double tau = 1e-3;
  double delta = 1e-6;
  std::uint64_t slots = 100000;
  std::uint64_t seed = 1;
  int replications = 1;
  std::size_t trace_cap = 0;
  Format format = Format::Csv;
  std::string out;
  std::string check = "all";
  int lehmer_n = 7;

  /// Effective configuration as ordered key/value pairs (echoed into outputs).
  std::vector<std::pair<std::string, std::string>> echo() const;
  SimConfig sim_config(Protocol p) const;
};

/// Resolves typed settings for a subcommand from merged key/values.
/// Throws ConfigError naming the first bad field.
Settings resolve_settings(const std::string& subcommand, const KeyValues& values);

/// "a,b,c" or "start:stop:step".
std::vector<double> parse_load_list(std::string_view text);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

std::string run_csv(const Settings& s, const RunOutput& out);
std::string run_json(const Settings& s, const RunOutput& out);
std::string sweep_csv(const Settings& s, const std::vector<std::pair<Protocol, std::vector<SweepPoint>>>& rows);
std::string sweep_json(const Settings& s, const std::vector<std::pair<Protocol, std::vector<SweepPoint>>>& rows);
std::string fairness_csv(const Settings& s, const FairnessResult& f);
std::string fairness_json(const Settings& s, const FairnessResult& f);

/// Entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmac::cli
