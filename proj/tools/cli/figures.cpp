#include <algorithm>
#include <cmath>

#include "cli/compute.hpp"

namespace tpa::cli {
namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
  return Sweep{"", a, b, n, false}.values();
}
std::vector<double> logspace(double a, double b, std::size_t n) { return Sweep{"", a, b, n, true}.values(); }

// Default grid with the half-width capped so the node count stays at or below
// max_nodes; the step is never coarsened.
FrequencyGrid capped_grid(const LevelSystem& sys, std::size_t max_nodes) {
  const FrequencyGrid d = default_grid(sys);
  if (d.size() <= max_nodes) return d;
  const double half = 0.5 * static_cast<double>(max_nodes - 1) * d.step();
  return make_grid(0.5 * sys.omega_f(), half, d.step());
}

struct Context {
  Params& p;
  Report& r;
  std::size_t points(std::size_t fallback) { return std::max<std::size_t>(2, p.count("points", fallback)); }
};

void schmidt_curve(Context& c, const std::string& table, const std::string& axis,
                   const std::vector<double>& xs, const std::function<LevelSystem(double)>& make) {
  const std::size_t max_nodes = c.p.count("max-nodes", 2001);
  std::vector<std::vector<double>> rows(xs.size());
  std::vector<std::size_t> capped(xs.size(), 0);
  parallel_for(xs.size(), [&](std::size_t i) {
    const LevelSystem sys = make(xs[i]);
    const FrequencyGrid g = capped_grid(sys, max_nodes);
    capped[i] = g.size() < default_grid(sys).size();
    const auto s = schmidt_summary(sys, g, {.compute_modes = false, .method = SvdMethod::Dense});
    rows[i] = {xs[i], s.entropy, s.e_q, s.d.coefficients[0], s.d.captured_norm2(), g.max() - g.min(),
               static_cast<double>(g.size())};
  });
  const auto n = std::count(capped.begin(), capped.end(), 1u);
  if (n > 0)
    c.r.diagnostics.push_back(std::to_string(n) + " point(s) used a grid capped at max-nodes; see the width column");
  c.r.tables.push_back({table, {axis, "S", "E_q", "r_1", "captured_norm2", "grid_width", "grid_nodes"}, rows});
}

void fig2a(Context& c) {
  const double delta = c.p.number("delta", 5.0);
  const auto xs = linspace(-1.95, 2.0, c.points(20));
  schmidt_curve(c, "fig2a", "dev", xs, [&](double dev) { return LevelSystem(delta, dev); });
}

void fig2b(Context& c) {
  const double dev = c.p.number("dev", -1.9);
  const auto xs = logspace(0.1, 100.0, c.points(12));
  schmidt_curve(c, "fig2b", "delta", xs, [&](double delta) { return LevelSystem(delta, dev); });
}

void fig2c(Context& c) {
  const GridSpec asym{c.p.number("asym-half-width", 200.0), c.p.number("asym-step", 0.25)};
  const auto xs = linspace(-1.95, 2.0, c.points(20));
  std::vector<std::vector<double>> rows(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const auto b = asymptotic_bounds(LevelSystem(100.0, xs[i]), asym, {.compute_modes = false});
    rows[i] = {xs[i], b.s_inf, b.e_inf};
  });
  c.r.grid = {{"half_width", num(asym.half_width)}, {"step", num(asym.step)}};
  c.r.tables.push_back({"fig2c", {"dev", "S_inf", "E_inf"}, rows});
}

void fig5a(Context& c) {
  const auto deltas = linspace(0.0, c.p.number("delta-max", 10.0), c.points(41));
  const std::vector<double> sigmas{0.5, 1.0, 5.0};
  std::vector<std::vector<double>> rows(deltas.size() * sigmas.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const double d = deltas[i / sigmas.size()], s = sigmas[i % sigmas.size()];
    const auto sol = optimal_slm(LevelSystem(d, 0.0), CwSpdc::gaussian(s));
    rows[i] = {d, s, sol.e_opt};
  });
  c.r.tables.push_back({"fig5a", {"delta", "sigma", "e_opt"}, rows});
}

void fig5b(Context& c) {
  const auto deltas = logspace(0.1, 100.0, c.points(40));
  std::vector<std::vector<double>> rows(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    const LevelSystem sys(deltas[i], 0.0);
    const auto sol = optimal_slm(sys, CwSpdc::gaussian(slm_auto_sigma(sys)));
    rows[i] = {deltas[i], sol.p_shaped, sol.p_unshaped, sol.e_opt};
  });
  c.r.tables.push_back({"fig5b", {"delta", "p_shaped", "p_unshaped", "e_opt"}, rows});
}

// Map over Δ ∈ [0.1, 5] × δ ∈ [−1.9, 0]; each cell gets r_1² and the row builder.
void enhancement_map(Context& c, const std::string& table, const std::vector<std::string>& extra,
                     const std::function<std::vector<double>(const LevelSystem&, double)>& cell) {
  const std::size_t n = c.points(10);
  const auto deltas = linspace(0.1, 5.0, n), devs = linspace(-1.9, 0.0, n);
  std::vector<std::vector<double>> rows(n * n);
  parallel_for(rows.size(), [&](std::size_t i) {
    const LevelSystem sys(deltas[i / n], devs[i % n]);
    const double r1sq = leading_population(sys);
    std::vector<double> row{sys.detuning(), sys.deviation(), r1sq};
    for (double v : cell(sys, r1sq)) row.push_back(v);
    rows[i] = std::move(row);
  });
  std::vector<std::string> cols{"delta", "dev", "r1_sq"};
  cols.insert(cols.end(), extra.begin(), extra.end());
  c.r.tables.push_back({table, cols, rows});
}

void fig6b(Context& c) {
  enhancement_map(c, "fig6b", {"sigma", "e_q_optimal", "e_q_shaped", "e_q_unshaped", "e_opt"},
                  [](const LevelSystem& sys, double r1sq) -> std::vector<double> {
                    const double sigma = slm_auto_sigma(sys);
                    const auto sol = optimal_slm(sys, CwSpdc::gaussian(sigma));
                    return {sigma, 1.0 / r1sq, sol.p_shaped / r1sq, sol.p_unshaped / r1sq, sol.e_opt};
                  });
}

void fig7(Context& c, const std::string& name, double phi) {
  const double delta = c.p.number("delta", 0.0);
  const auto devs = linspace(-1.95, 2.0, c.points(40));
  const std::vector<double> sigmas{0.5, 1.0, 2.0, 5.0};
  std::vector<std::vector<double>> rows(devs.size() * sigmas.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const double dev = devs[i / sigmas.size()], s = sigmas[i % sigmas.size()];
    const LevelSystem sys(delta, dev);
    const auto sol =
        optimal_pump_shaper(sys, PumpShaped::chirped_gaussian(sys.omega_f(), s, phi, InfinitePhaseMatching{}));
    rows[i] = {dev, s, sol.e_opt, sol.residual};
  });
  c.r.params["phi"] = num(phi);
  c.r.tables.push_back({name, {"dev", "sigma", "e_opt", "residual"}, rows});
}

ShapingSolution fig8_pump(const LevelSystem& sys, double phi) {
  const auto st = PumpShaped::chirped_gaussian(sys.omega_f(), pump_auto_sigma(sys), phi,
                                               GaussianPhaseMatching{pump_auto_zeta(sys)});
  return optimal_pump_shaper(sys, st);
}

void fig8(Context& c, char panel) {
  const double phi = c.p.number("phi", 1.0);
  if (panel == 'a') {
    enhancement_map(c, "fig8a", {"e_q"}, [](const LevelSystem&, double r1sq) -> std::vector<double> {
      return {1.0 / r1sq};
    });
    return;
  }
  const bool shaped = panel == 'c';
  enhancement_map(c, std::string("fig8") + panel,
                  {"sigma", "zeta", shaped ? "e_q_shaped" : "e_q_unshaped", shaped ? "p_shaped" : "p_unshaped"},
                  [&](const LevelSystem& sys, double r1sq) -> std::vector<double> {
                    const auto sol = fig8_pump(sys, phi);
                    const double pop = shaped ? sol.p_shaped : sol.p_unshaped;
                    return {pump_auto_sigma(sys), pump_auto_zeta(sys), pop / r1sq, pop};
                  });
}

}  // namespace

std::vector<std::string> figure_names() {
  return {"fig2a", "fig2b", "fig2c", "fig5a", "fig5b", "fig6b", "fig7a", "fig7b", "fig8a", "fig8b", "fig8c"};
}

Report run_figure(const std::string& name, Params& p) {
  Report r{.command = "figure", .stem = name};
  Context c{p, r};
  r.params["figure"] = name;
  if (name == "fig2a") fig2a(c);
  else if (name == "fig2b") fig2b(c);
  else if (name == "fig2c") fig2c(c);
  else if (name == "fig5a") fig5a(c);
  else if (name == "fig5b") fig5b(c);
  else if (name == "fig6b") fig6b(c);
  else if (name == "fig7a") fig7(c, "fig7a", 0.0);
  else if (name == "fig7b") fig7(c, "fig7b", 1.0);
  else if (name == "fig8a") fig8(c, 'a');
  else if (name == "fig8b") fig8(c, 'b');
  else if (name == "fig8c") fig8(c, 'c');
  else throw ArgumentError("unknown figure '" + name + "'");
  for (const auto& [k, v] : p.resolved().items()) r.params[k] = v;
  r.results["rows"] = r.tables.front().rows.size();
  r.results["columns"] = r.tables.front().columns;
  return r;
}

}  // namespace tpa::cli
