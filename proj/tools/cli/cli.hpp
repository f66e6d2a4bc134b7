#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace tpa::cli {

enum ExitCode { kOk = 0, kArgError = 2, kNumericalError = 3, kIoError = 4 };

inline constexpr int kSchemaVersion = 1;

struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value file. '#' starts a comment; blank lines are skipped; keys may use
// '-' or '_' interchangeably and are stored with '-'.
using Settings = std::map<std::string, std::string>;
Settings read_config(const std::filesystem::path& path);
Settings parse_config(const std::string& text, const std::string& origin = "config");
std::string normalize_key(std::string key);

// Resolved parameters: config first, flags on top. Every lookup is recorded so the
// report echoes what was actually used.
class Params {
 public:
  Params() = default;
  explicit Params(Settings s) : values_(std::move(s)) {}

  void set(const std::string& key, const std::string& value) { values_[normalize_key(key)] = value; }
  bool has(const std::string& key) const;
  std::optional<std::string> raw(const std::string& key) const;

  double number(const std::string& key, double fallback);
  double number(const std::string& key);  // required
  // "auto" (or absent with auto_by_default) resolves through the supplied rule.
  double number_or_auto(const std::string& key, const std::function<double()>& rule, bool auto_by_default);
  std::optional<double> optional_number(const std::string& key);
  std::size_t count(const std::string& key, std::size_t fallback);
  std::optional<std::size_t> optional_count(const std::string& key);
  bool flag(const std::string& key, bool fallback = false);
  std::string text(const std::string& key, const std::string& fallback);

  // Keys present in the input that no command looked at.
  std::vector<std::string> unused() const;
  const nlohmann::ordered_json& resolved() const { return resolved_; }
  void record(const std::string& key, nlohmann::ordered_json value) { resolved_[key] = std::move(value); }

 private:
  Settings values_;
  std::map<std::string, bool> used_;
  nlohmann::ordered_json resolved_ = nlohmann::ordered_json::object();
};

struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string command;
  std::string stem;  // JSON file stem; the command name when empty
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json grid = nlohmann::ordered_json::object();
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<std::string> diagnostics;
  double wall_time_ms = 0.0;
  std::vector<Table> tables;
};

enum class Format { Csv, Json, Both };
Format parse_format(const std::string& s);

struct OutputOptions {
  std::optional<std::filesystem::path> out;  // stdout summary only when unset
  Format format = Format::Both;
  bool timing = true;  // wall_time_ms is 0 when off, for byte-identical reruns
};

nlohmann::ordered_json report_json(const Report& r, bool timing);
void write_table_csv(std::ostream& os, const Table& t);
// Writes <command>.json and one CSV per table into opts.out; throws IoError.
void write_outputs(const Report& r, const OutputOptions& opts);

// JSON number at 9 significant digits (non-finite values become strings).
nlohmann::ordered_json num(double v);

// Threads from TPA_NUM_THREADS (default: hardware concurrency, at least 1).
unsigned thread_count();
// Runs f(0..n−1) on thread_count() workers; results stay in index order. The first
// exception thrown by any task is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

struct Sweep {
  std::string name;
  double from = 0.0, to = 0.0;
  std::size_t points = 0;
  bool log = false;
  std::vector<double> values() const;
};
Sweep parse_sweep(const std::vector<std::string>& args, bool log);

Report run_schmidt(Params& p, const std::optional<Sweep>& sweep);
Report run_shape_slm(Params& p, const std::optional<Sweep>& sweep);
Report run_shape_pump(Params& p, const std::optional<Sweep>& sweep);

std::vector<std::string> figure_names();
Report run_figure(const std::string& name, Params& p);

}  // namespace tpa::cli
