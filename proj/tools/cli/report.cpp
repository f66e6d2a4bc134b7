#include <fstream>
#include <ostream>

#include "cli/cli.hpp"
#include "tpa/format.hpp"

namespace tpa::cli {

nlohmann::ordered_json report_json(const Report& r, bool timing) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = r.command;
  j["params"] = r.params;
  j["grid"] = r.grid;
  j["results"] = r.results;
  j["diagnostics"] = r.diagnostics;
  j["wall_time_ms"] = timing ? num(r.wall_time_ms) : nlohmann::ordered_json(0);
  return j;
}

void write_table_csv(std::ostream& os, const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << fmt_num(row[c]);
    os << '\n';
  }
}

void write_outputs(const Report& r, const OutputOptions& opts) {
  if (!opts.out) return;
  std::error_code ec;
  std::filesystem::create_directories(*opts.out, ec);
  if (ec || !std::filesystem::is_directory(*opts.out))
    throw IoError("cannot create output directory " + opts.out->string());

  auto open = [&](const std::string& name) {
    const auto path = *opts.out / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path.string());
    return f;
  };
  if (opts.format != Format::Csv) {
    const std::string name = (r.stem.empty() ? r.command : r.stem) + ".json";
    auto f = open(name);
    f << report_json(r, opts.timing).dump(2) << '\n';
    if (!f) throw IoError("write failed for " + name);
  }
  if (opts.format != Format::Json) {
    for (const auto& t : r.tables) {
      auto f = open(t.name + ".csv");
      write_table_csv(f, t);
      if (!f) throw IoError("write failed for " + t.name + ".csv");
    }
  }
}

}  // namespace tpa::cli
