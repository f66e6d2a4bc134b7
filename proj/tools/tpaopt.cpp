// tpaopt: optimal two-photon states, Schmidt analysis and pulse shaping.
#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "cli/cli.hpp"
#include "tpa/level_system.hpp"

namespace cli = tpa::cli;

namespace {

struct Sub {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::vector<std::string> sweep;
  bool log = false;

  void option(const std::string& name, const std::string& help) {
    app->add_option("--" + name, values[name], help);
  }
  void flag(const std::string& name, const std::string& help) { app->add_flag("--" + name, flags[name], help); }
  void sweepable() {
    app->add_option("--sweep", sweep, "NAME FROM TO POINTS")->expected(4);
    app->add_flag("--log", log, "logarithmic sweep spacing");
  }
  void apply(cli::Params& p) const {
    for (const auto& [k, v] : values)
      if (app->count("--" + k) > 0) p.set(k, v);
    for (const auto& [k, v] : flags)
      if (app->count("--" + k) > 0) p.set(k, v ? "true" : "false");
  }
  std::optional<cli::Sweep> parsed_sweep() const {
    if (sweep.empty()) {
      if (log) throw cli::ArgumentError("--log needs --sweep");
      return std::nullopt;
    }
    return cli::parse_sweep(sweep, log);
  }
};

void add_system(Sub& s) {
  s.option("delta", "detuning Delta in units of gamma_e");
  s.option("dev", "deviation delta of gamma_f = (2 + delta) gamma_e, > -2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal two-photon states for two-photon absorption in a three-level system"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config, out, format = "both";
  bool no_timing = false;
  app.add_option("--config", config, "flat key=value file; flags override it");
  app.add_option("--out", out, "output directory for CSV/JSON artifacts");
  app.add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_flag("--no-timing", no_timing, "report wall_time_ms as 0 for byte-identical reruns");

  Sub schmidt{app.add_subcommand("schmidt", "Schmidt decomposition of the optimal state")};
  add_system(schmidt);
  schmidt.option("grid-half-width", "grid half-width (default rule otherwise)");
  schmidt.option("step", "grid step (default gamma_e/5)");
  schmidt.option("center", "grid centre (default omega_f/2)");
  schmidt.option("rank", "keep the leading RANK coefficients");
  schmidt.option("method", "auto, dense or truncated");
  schmidt.option("modes", "number of mode tables to write (default 2)");
  schmidt.option("asym-half-width", "grid half-width for the large-detuning limit");
  schmidt.option("asym-step", "grid step for the large-detuning limit");
  schmidt.flag("no-asymptotics", "skip the large-detuning limit");
  schmidt.flag("dump-kernel", "write the sampled kernel as CSV");
  schmidt.sweepable();

  Sub slm{app.add_subcommand("shape-slm", "identical spectral phase shapers on cw-SPDC photon pairs")};
  add_system(slm);
  slm.option("sigma", "single-photon bandwidth, or auto (sigma = Delta)");
  slm.option("slm-half-width", "Omega grid half-width (default 10 sigma)");
  slm.option("slm-step", "Omega grid step");
  slm.sweepable();

  Sub pump{app.add_subcommand("shape-pump", "phase shaping of a chirped Gaussian pump")};
  add_system(pump);
  pump.option("sigma", "pump bandwidth, or auto (3 gamma_f)");
  pump.option("phi", "quadratic spectral phase (chirp)");
  pump.option("zeta", "phase-matching width, or auto (gamma_e (2 + Delta))");
  pump.flag("infinite-pm", "infinitely broad phase matching");
  pump.sweepable();

  Sub fig{app.add_subcommand("figure", "parameter sweeps behind the figures")};
  std::string fig_name;
  fig.app->add_option("name", fig_name, "figure panel")->required()->check(CLI::IsMember(cli::figure_names()));
  fig.option("points", "points per axis");
  fig.option("max-nodes", "node cap for Schmidt sweeps");
  fig.option("delta", "detuning where the panel fixes it");
  fig.option("dev", "deviation where the panel fixes it");
  fig.option("phi", "chirp for the pump maps");
  fig.option("delta-max", "upper detuning for fig5a");
  fig.option("asym-half-width", "grid half-width for fig2c");
  fig.option("asym-step", "grid step for fig2c");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kArgError;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    cli::Params params(config.empty() ? cli::Settings{} : cli::read_config(config));
    cli::OutputOptions oo;
    if (!out.empty()) oo.out = std::filesystem::path(out);
    oo.format = cli::parse_format(format);
    oo.timing = !no_timing;

    cli::Report report;
    if (schmidt.app->parsed()) {
      schmidt.apply(params);
      if (params.has("no-asymptotics")) params.set("asymptotics", params.flag("no-asymptotics") ? "false" : "true");
      report = cli::run_schmidt(params, schmidt.parsed_sweep());
    } else if (slm.app->parsed()) {
      slm.apply(params);
      report = cli::run_shape_slm(params, slm.parsed_sweep());
    } else if (pump.app->parsed()) {
      pump.apply(params);
      report = cli::run_shape_pump(params, pump.parsed_sweep());
    } else {
      fig.apply(params);
      report = cli::run_figure(fig_name, params);
    }
    for (const auto& k : params.unused()) report.diagnostics.push_back("ignored parameter '" + k + "'");
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    if (oo.out) {
      cli::write_outputs(report, oo);
      std::cerr << "wrote results to " << oo.out->string() << '\n';
    } else {
      std::cout << cli::report_json(report, oo.timing).dump(2) << '\n';
    }
    return cli::kOk;
  } catch (const cli::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kArgError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kArgError;
  } catch (const cli::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return cli::kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return cli::kIoError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return cli::kNumericalError;
  }
}
