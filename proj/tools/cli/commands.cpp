#include <algorithm>
#include <cmath>

#include "cli/compute.hpp"
#include "tpa/response.hpp"
#include "tpa/svd.hpp"

namespace tpa::cli {

FrequencyGrid schmidt_grid(const LevelSystem& sys, const GridOverride& o) {
  const FrequencyGrid d = default_grid(sys);
  if (!o.half_width && !o.step && !o.center) return d;
  const double centre = o.center.value_or(0.5 * sys.omega_f());
  const double half = o.half_width.value_or(0.5 * (d.max() - d.min()));
  return make_grid(centre, half, o.step.value_or(sys.gamma_e() / 5.0));
}

SchmidtSummary schmidt_summary(const LevelSystem& sys, const FrequencyGrid& g, const DecomposeOptions& o) {
  SchmidtSummary s{decompose(sample_optimal_state(sys, g), o)};
  s.entropy = entropy(s.d);
  s.e_q = quantum_enhancement(s.d);
  s.pairing = pairing_check(s.d, 1);
  return s;
}

double leading_population(const LevelSystem& sys) {
  const auto g = default_grid(sys);
  const auto d = decompose(sample_optimal_state(sys, g), {.rank = 1, .compute_modes = false});
  return d.coefficients.front() * d.coefficients.front();
}

nlohmann::ordered_json grid_json(const FrequencyGrid& g) {
  return {{"omega_min", num(g.min())}, {"omega_max", num(g.max())}, {"step", num(g.step())}, {"nodes", g.size()}};
}

SvdMethod parse_method(const std::string& s) {
  if (s == "auto") return SvdMethod::Auto;
  if (s == "dense") return SvdMethod::Dense;
  if (s == "truncated") return SvdMethod::Truncated;
  throw ArgumentError("method must be auto, dense or truncated");
}

double slm_auto_sigma(const LevelSystem& sys) {
  if (!(sys.detuning() > 0.0)) throw ArgumentError("sigma=auto follows delta and needs delta > 0");
  return sys.detuning() * sys.gamma_e();
}

double pump_auto_sigma(const LevelSystem& sys) { return 3.0 * sys.gamma_f(); }
double pump_auto_zeta(const LevelSystem& sys) { return sys.gamma_e() * (2.0 + sys.detuning()); }

namespace {

void require_sweepable(const std::optional<Sweep>& sweep, std::initializer_list<const char*> names) {
  if (!sweep) return;
  for (const char* n : names)
    if (sweep->name == n) return;
  std::string allowed;
  for (const char* n : names) allowed += std::string(allowed.empty() ? "" : ", ") + n;
  throw ArgumentError("cannot sweep '" + sweep->name + "' here; allowed: " + allowed);
}

nlohmann::ordered_json sweep_json(const Sweep& s) {
  return {{"name", s.name}, {"from", num(s.from)}, {"to", num(s.to)}, {"points", s.points}, {"log", s.log}};
}

Table mode_table(const SchmidtDecomposition& d, std::size_t k) {
  Table t{"schmidt_mode" + std::to_string(k + 1), {"omega", "re", "im"}, {}};
  for (Eigen::Index i = 0; i < d.modes1.rows(); ++i) {
    const cplx v = d.modes1(i, static_cast<Eigen::Index>(k));
    t.rows.push_back({d.grid1.node(static_cast<std::size_t>(i)), v.real(), v.imag()});
  }
  return t;
}

}  // namespace

Report run_schmidt(Params& p, const std::optional<Sweep>& sweep) {
  require_sweepable(sweep, {"delta", "dev"});
  Report r{.command = "schmidt"};
  const double delta = p.number("delta", 0.0);
  const double dev = p.number("dev", 0.0);
  GridOverride go{p.optional_number("grid-half-width"), p.optional_number("step"), p.optional_number("center")};
  DecomposeOptions opts{.rank = p.optional_count("rank"), .method = parse_method(p.text("method", "auto"))};
  const bool asym = p.flag("asymptotics", true);
  const GridSpec asym_grid{p.number("asym-half-width", 200.0), p.number("asym-step", 0.25)};
  const std::size_t modes = p.count("modes", 2);
  const bool dump = p.flag("dump-kernel", false);
  if (opts.rank) r.diagnostics.push_back("entropy uses the retained coefficients only");

  if (sweep) {
    const auto values = sweep->values();
    std::vector<std::vector<double>> rows(values.size());
    std::vector<FrequencyGrid> grids(values.size(), make_grid(0.0, 1.0, 1.0));
    opts.compute_modes = false;
    parallel_for(values.size(), [&](std::size_t i) {
      const LevelSystem sys(sweep->name == "delta" ? values[i] : delta, sweep->name == "dev" ? values[i] : dev);
      grids[i] = schmidt_grid(sys, go);
      const auto s = schmidt_summary(sys, grids[i], opts);
      rows[i] = {values[i], s.entropy, s.e_q, s.d.coefficients[0], s.d.captured_norm2(), s.d.kernel_norm2};
    });
    r.params = p.resolved();
    r.params["sweep"] = sweep_json(*sweep);
    r.grid = {{"first", grid_json(grids.front())}, {"last", grid_json(grids.back())}};
    r.results["points"] = values.size();
    r.tables.push_back({"schmidt_sweep", {sweep->name, "S", "E_q", "r_1", "captured_norm2", "kernel_norm2"}, rows});
    return r;
  }

  const LevelSystem sys(delta, dev);
  const FrequencyGrid g = schmidt_grid(sys, go);
  opts.compute_modes = modes > 0;
  const KernelMatrix k = sample_optimal_state(sys, g);
  const SchmidtDecomposition d = decompose(k, opts);
  r.params = p.resolved();
  r.grid = grid_json(g);

  auto& res = r.results;
  const std::size_t shown = std::min<std::size_t>(50, d.coefficients.size());
  nlohmann::ordered_json coeff = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < shown; ++i) coeff.push_back(num(d.coefficients[i]));
  res["coefficients"] = coeff;
  res["r_1"] = num(d.coefficients[0]);
  if (d.coefficients.size() > 1) res["r_2"] = num(d.coefficients[1]);
  res["entropy_bits"] = num(entropy(d));
  res["enhancement"] = num(quantum_enhancement(d));
  res["pairing_gap"] = num(pairing_check(d, 1));
  res["captured_norm2"] = num(d.captured_norm2());
  res["kernel_norm2"] = num(d.kernel_norm2);
  res["residual"] = num(d.residual);
  res["truncation_rank"] = d.truncation_rank;
  res["truncated"] = d.truncated;
  if (asym) {
    const auto b = asymptotic_bounds(sys, asym_grid, {.compute_modes = false});
    res["enhancement_limit"] = num(b.e_inf);
    res["entropy_limit_bits"] = num(b.s_inf);
  }
  for (const auto& w : d.warnings) r.diagnostics.push_back(w);

  Table coeffs{"schmidt_coefficients", {"k", "r_k"}, {}};
  for (std::size_t i = 0; i < d.coefficients.size(); ++i)
    coeffs.rows.push_back({static_cast<double>(i + 1), d.coefficients[i]});
  r.tables.push_back(std::move(coeffs));
  for (std::size_t i = 0; i < std::min<std::size_t>(modes, static_cast<std::size_t>(d.modes1.cols())); ++i)
    r.tables.push_back(mode_table(d, i));
  if (dump) {
    Table kt{"schmidt_kernel", {"row", "col", "omega1", "omega2", "re", "im"}, {}};
    for (Eigen::Index i = 0; i < k.entries.rows(); ++i)
      for (Eigen::Index j = 0; j < k.entries.cols(); ++j)
        kt.rows.push_back({static_cast<double>(i), static_cast<double>(j), g.node(static_cast<std::size_t>(i)),
                           g.node(static_cast<std::size_t>(j)), k.entries(i, j).real(), k.entries(i, j).imag()});
    r.tables.push_back(std::move(kt));
  }
  return r;
}

namespace {

struct SlmInputs {
  double delta = 0.0, dev = 0.0;
  std::optional<double> sigma;  // unset: σ=Δ
  std::optional<double> half_width, step;
};

ShapingSolution solve_slm(const SlmInputs& in, double& sigma_used) {
  const LevelSystem sys(in.delta, in.dev);
  sigma_used = in.sigma ? *in.sigma : slm_auto_sigma(sys);
  const CwSpdc st = CwSpdc::gaussian(sigma_used);
  if (!in.half_width && !in.step) return optimal_slm(sys, st);
  const FrequencyGrid d = default_slm_grid(sys, st);
  return optimal_slm(sys, st, make_grid(0.0, in.half_width.value_or(d.max()), in.step.value_or(d.step())));
}

nlohmann::ordered_json solution_json(const ShapingSolution& s) {
  return {{"e_opt", num(s.e_opt)},
          {"p_shaped", num(s.p_shaped)},
          {"p_unshaped", num(s.p_unshaped)},
          {"residual", num(s.residual)},
          {"populations_in_units_of_n", s.populations_in_units_of_n}};
}

}  // namespace

Report run_shape_slm(Params& p, const std::optional<Sweep>& sweep) {
  require_sweepable(sweep, {"sigma", "delta", "dev"});
  Report r{.command = "shape-slm"};
  SlmInputs in;
  in.delta = p.number("delta", 0.0);
  in.dev = p.number("dev", 0.0);
  const auto sig = p.raw("sigma");
  if (sig && *sig != "auto") in.sigma = p.number("sigma");
  else if (!sweep || sweep->name != "sigma") {
    if (!sig) throw ArgumentError("missing required parameter 'sigma' (a value or auto)");
    p.text("sigma", "auto");
  }
  in.half_width = p.optional_number("slm-half-width");
  in.step = p.optional_number("slm-step");

  if (sweep) {
    const auto values = sweep->values();
    std::vector<std::vector<double>> rows(values.size());
    parallel_for(values.size(), [&](std::size_t i) {
      SlmInputs x = in;
      if (sweep->name == "sigma") x.sigma = values[i];
      if (sweep->name == "delta") x.delta = values[i];
      if (sweep->name == "dev") x.dev = values[i];
      double s = 0;
      const auto sol = solve_slm(x, s);
      rows[i] = {values[i], s, sol.e_opt, sol.p_shaped, sol.p_unshaped, sol.residual};
    });
    r.params = p.resolved();
    r.params["sweep"] = sweep_json(*sweep);
    r.results["points"] = values.size();
    r.tables.push_back({"slm_sweep", {sweep->name, "sigma", "e_opt", "p_shaped", "p_unshaped", "residual"}, rows});
    return r;
  }

  double sigma = 0.0;
  const auto sol = solve_slm(in, sigma);
  r.params = p.resolved();
  r.params["sigma"] = num(sigma);
  r.grid = grid_json(sol.grid);
  r.results = solution_json(sol);
  r.diagnostics = sol.diagnostics;
  Table t{"slm_phases", {"omega", "phase", "abs_w"}, {}};
  for (std::size_t k = 0; k < sol.grid.size(); ++k)
    t.rows.push_back({sol.grid.node(k), sol.phase_nodes[k], std::abs(sol.response[k])});
  r.tables.push_back(std::move(t));
  return r;
}

namespace {

struct PumpInputs {
  double delta = 0.0, dev = 0.0, phi = 0.0;
  std::optional<double> sigma, zeta;  // unset: auto rules
  bool infinite = false;
};

ShapingSolution solve_pump(const PumpInputs& in, double& sigma_used, double& zeta_used) {
  const LevelSystem sys(in.delta, in.dev);
  sigma_used = in.sigma ? *in.sigma : pump_auto_sigma(sys);
  zeta_used = in.infinite ? 0.0 : (in.zeta ? *in.zeta : pump_auto_zeta(sys));
  PhaseMatching pm = InfinitePhaseMatching{};
  if (!in.infinite) pm = GaussianPhaseMatching{zeta_used};
  return optimal_pump_shaper(sys, PumpShaped::chirped_gaussian(sys.omega_f(), sigma_used, in.phi, pm));
}

}  // namespace

Report run_shape_pump(Params& p, const std::optional<Sweep>& sweep) {
  require_sweepable(sweep, {"sigma", "phi", "zeta", "delta", "dev"});
  Report r{.command = "shape-pump"};
  PumpInputs in;
  in.delta = p.number("delta", 0.0);
  in.dev = p.number("dev", 0.0);
  in.phi = p.number("phi", 0.0);
  in.infinite = p.flag("infinite-pm", false);
  const bool sweeping_sigma = sweep && sweep->name == "sigma";
  const bool sweeping_zeta = sweep && sweep->name == "zeta";
  if (const auto s = p.raw("sigma"); s && *s != "auto") in.sigma = p.number("sigma");
  else if (!sweeping_sigma) {
    if (!s) throw ArgumentError("missing required parameter 'sigma' (a value or auto)");
    p.text("sigma", "auto");
  }
  if (in.infinite) {
    if (p.has("zeta")) throw ArgumentError("--zeta and --infinite-pm are mutually exclusive");
    if (sweeping_zeta) throw ArgumentError("cannot sweep zeta with --infinite-pm");
  } else if (const auto z = p.raw("zeta"); z && *z != "auto") {
    in.zeta = p.number("zeta");
  } else if (!sweeping_zeta) {
    if (!z) throw ArgumentError("need --zeta (a value or auto) or --infinite-pm");
    p.text("zeta", "auto");
  }

  if (sweep) {
    const auto values = sweep->values();
    std::vector<std::vector<double>> rows(values.size());
    parallel_for(values.size(), [&](std::size_t i) {
      PumpInputs x = in;
      if (sweep->name == "sigma") x.sigma = values[i];
      if (sweep->name == "zeta") x.zeta = values[i];
      if (sweep->name == "phi") x.phi = values[i];
      if (sweep->name == "delta") x.delta = values[i];
      if (sweep->name == "dev") x.dev = values[i];
      double s = 0, z = 0;
      const auto sol = solve_pump(x, s, z);
      rows[i] = {values[i], s, z, sol.e_opt, sol.p_shaped, sol.p_unshaped, sol.residual};
    });
    r.params = p.resolved();
    r.params["sweep"] = sweep_json(*sweep);
    r.results["points"] = values.size();
    r.tables.push_back(
        {"pump_sweep", {sweep->name, "sigma", "zeta", "e_opt", "p_shaped", "p_unshaped", "residual"}, rows});
    return r;
  }

  double sigma = 0.0, zeta = 0.0;
  const auto sol = solve_pump(in, sigma, zeta);
  r.params = p.resolved();
  r.params["sigma"] = num(sigma);
  if (!in.infinite) r.params["zeta"] = num(zeta);
  r.grid = {{"omega_plus", grid_json(sol.grid)}};
  if (sol.grid_minus) r.grid["omega_minus"] = grid_json(*sol.grid_minus);
  r.results = solution_json(sol);
  r.diagnostics = sol.diagnostics;
  Table t{"pump_phases", {"omega_plus", "phase", "abs_xi", "re_xi", "im_xi"}, {}};
  for (std::size_t k = 0; k < sol.grid.size(); ++k)
    t.rows.push_back({sol.grid.node(k), sol.phase_nodes[k], std::abs(sol.response[k]), sol.response[k].real(),
                      sol.response[k].imag()});
  r.tables.push_back(std::move(t));
  return r;
}

}  // namespace tpa::cli
