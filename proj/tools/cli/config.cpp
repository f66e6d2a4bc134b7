#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "cli/cli.hpp"
#include "tpa/format.hpp"

namespace tpa::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (!v.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || !std::isfinite(out))
    throw ArgumentError("parameter '" + key + "': expected a number, got '" + v + "'");
  return out;
}

}  // namespace

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  return key;
}

Settings parse_config(const std::string& text, const std::string& origin) {
  Settings s;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ArgumentError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = normalize_key(trim(line.substr(0, eq)));
    if (key.empty()) throw ArgumentError(origin + ":" + std::to_string(lineno) + ": empty key");
    s[key] = trim(line.substr(eq + 1));
  }
  return s;
}

Settings read_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path.string());
}

bool Params::has(const std::string& key) const { return values_.count(normalize_key(key)) > 0; }

std::optional<std::string> Params::raw(const std::string& key) const {
  const auto it = values_.find(normalize_key(key));
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double Params::number(const std::string& key, double fallback) {
  const auto v = optional_number(key);
  const double out = v.value_or(fallback);
  record(key, num(out));
  return out;
}

double Params::number(const std::string& key) {
  const auto v = optional_number(key);
  if (!v) throw ArgumentError("missing required parameter '" + key + "'");
  record(key, num(*v));
  return *v;
}

std::optional<double> Params::optional_number(const std::string& key) {
  used_[normalize_key(key)] = true;
  const auto r = raw(key);
  if (!r) return std::nullopt;
  const double v = to_double(key, *r);
  record(key, num(v));
  return v;
}

double Params::number_or_auto(const std::string& key, const std::function<double()>& rule,
                              bool auto_by_default) {
  used_[normalize_key(key)] = true;
  const auto r = raw(key);
  if ((!r && auto_by_default) || (r && *r == "auto")) {
    const double v = rule();
    record(key, num(v));
    record(key + "-auto", true);
    return v;
  }
  return number(key);
}

std::size_t Params::count(const std::string& key, std::size_t fallback) {
  const auto v = optional_count(key);
  const std::size_t out = v.value_or(fallback);
  record(key, out);
  return out;
}

std::optional<std::size_t> Params::optional_count(const std::string& key) {
  used_[normalize_key(key)] = true;
  const auto r = raw(key);
  if (!r) return std::nullopt;
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(r->data(), r->data() + r->size(), out);
  if (ec != std::errc() || ptr != r->data() + r->size() || out == 0)
    throw ArgumentError("parameter '" + key + "': expected a positive integer, got '" + *r + "'");
  record(key, out);
  return out;
}

bool Params::flag(const std::string& key, bool fallback) {
  used_[normalize_key(key)] = true;
  bool out = fallback;
  if (const auto r = raw(key)) {
    const std::string v = normalize_key(*r);
    if (v == "1" || v == "true" || v == "yes" || v == "on" || v.empty())
      out = true;
    else if (v == "0" || v == "false" || v == "no" || v == "off")
      out = false;
    else
      throw ArgumentError("parameter '" + key + "': expected true/false, got '" + *r + "'");
  }
  record(key, out);
  return out;
}

std::string Params::text(const std::string& key, const std::string& fallback) {
  used_[normalize_key(key)] = true;
  const std::string out = raw(key).value_or(fallback);
  record(key, out);
  return out;
}

std::vector<std::string> Params::unused() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_)
    if (!used_.count(k)) out.push_back(k);
  return out;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "both") return Format::Both;
  throw ArgumentError("--format must be csv, json or both");
}

nlohmann::ordered_json num(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  // Round-trip through the 9-digit text so the JSON writer emits exactly that.
  return std::stod(fmt_num(v));
}

unsigned thread_count() {
  if (const char* env = std::getenv("TPA_NUM_THREADS")) {
    unsigned v = 0;
    const std::string s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<double> Sweep::values() const {
  std::vector<double> v(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(points - 1);
    v[k] = log ? std::exp(std::log(from) + t * (std::log(to) - std::log(from))) : from + t * (to - from);
  }
  v.back() = to;
  return v;
}

Sweep parse_sweep(const std::vector<std::string>& args, bool log) {
  if (args.size() != 4) throw ArgumentError("--sweep expects NAME FROM TO POINTS");
  Sweep s;
  s.name = normalize_key(args[0]);
  s.from = to_double("sweep from", args[1]);
  s.to = to_double("sweep to", args[2]);
  double pts = to_double("sweep points", args[3]);
  if (pts < 2 || pts != std::floor(pts)) throw ArgumentError("--sweep needs an integer POINTS >= 2");
  s.points = static_cast<std::size_t>(pts);
  s.log = log;
  if (!(s.from < s.to)) throw ArgumentError("--sweep needs FROM < TO");
  if (log && s.from <= 0) throw ArgumentError("--log sweeps need positive bounds");
  return s;
}

}  // namespace tpa::cli
