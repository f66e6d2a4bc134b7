#include "tpa/shaping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tpa/faddeeva.hpp"
#include "tpa/response.hpp"

namespace tpa {
namespace {

constexpr cplx I{0.0, 1.0};

void require_unit_modulus(std::span<const cplx> m, const char* name) {
  for (const cplx& v : m)
    if (!(std::abs(std::abs(v) - 1.0) <= 1e-12))
      throw std::invalid_argument(std::string(name) + ": shaper samples must have unit modulus");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
}

const CwSpdc& as_cw(const InputState& s) {
  if (const auto* p = std::get_if<CwSpdc>(&s)) return *p;
  throw std::invalid_argument("operation needs a cw-SPDC input state");
}

const PumpShaped& as_pump(const InputState& s) {
  if (const auto* p = std::get_if<PumpShaped>(&s)) return *p;
  throw std::invalid_argument("operation needs a pump-shaped input state");
}

void check_state(const CwSpdc& s) {
  if (!s.profile) throw std::invalid_argument("cw-SPDC state needs a profile G");
}

void check_state(const PumpShaped& s) {
  if (!s.alpha) throw std::invalid_argument("pump state needs an amplitude alpha");
  if (const auto* g = std::get_if<GaussianPhaseMatching>(&s.beta)) require_positive(g->zeta, "zeta");
  if (const auto* c = std::get_if<CustomPhaseMatching>(&s.beta); c && !c->beta)
    throw std::invalid_argument("custom phase matching needs a function");
}

double pump_frequency(const LevelSystem& sys, const CwSpdc& s) {
  return s.pump_frequency.value_or(sys.omega_f());
}

// W(Ω, −Ω) on a grid symmetric about zero. The upper half is mirrored from the
// lower half so that W(Ω) = W(−Ω) holds bit for bit.
std::vector<cplx> slm_response(const LevelSystem& sys, const CwSpdc& s, const FrequencyGrid& g) {
  const std::size_t n = g.size();
  if (std::abs(g.min() + g.max()) > 1e-9 * g.step())
    throw std::invalid_argument("SLM grid must be symmetric about zero");
  const double half = 0.5 * pump_frequency(sys, s);
  std::vector<cplx> w(n);
  for (std::size_t k = 0; k <= (n - 1) / 2; ++k) {
    const double om = g.node(k);
    w[k] = s.profile(om) * response_infinite(sys, half + om, half - om);
    w[n - 1 - k] = w[k];
  }
  return w;
}

std::vector<cplx> pump_response(const LevelSystem& sys, const PumpShaped& s, const FrequencyGrid& gp,
                                const FrequencyGrid& gm) {
  std::vector<cplx> x(gp.size());
  for (std::size_t k = 0; k < gp.size(); ++k) x[k] = xi(sys, s, gp.node(k), gm);
  return x;
}

double wrapped_phase(cplx v) { return std::arg(v); }  // (−π, π]

struct Sums {
  double abs_sum = 0.0;
  cplx sum = 0.0;
};

Sums trapezoid_sums(const std::vector<cplx>& f, const FrequencyGrid& g) {
  const auto w = quadrature_weights(g);
  Sums s;
  for (std::size_t k = 0; k < f.size(); ++k) {
    s.abs_sum += w[k] * std::abs(f[k]);
    s.sum += w[k] * f[k];
  }
  return s;
}

void finish(ShapingSolution& sol, const Sums& s) {
  sol.p_shaped = sol.population_scale * s.abs_sum * s.abs_sum;
  sol.p_unshaped = sol.population_scale * std::norm(s.sum);
  if (sol.p_unshaped > 0.0) {
    sol.e_opt = sol.p_shaped / sol.p_unshaped;
  } else {
    sol.e_opt = std::numeric_limits<double>::infinity();
    sol.diagnostics.push_back("unshaped population vanishes; optimization ratio is unbounded");
  }
}

double fixed_point_mismatch(const std::vector<double>& psi2, const std::vector<cplx>& lhs_phase,
                            const std::vector<cplx>& rhs) {
  double peak = 0.0;
  for (double p : psi2) peak = std::max(peak, p);
  double worst = 0.0;
  for (std::size_t k = 0; k < psi2.size(); ++k) {
    if (!(psi2[k] >= 1e-12 * peak) || psi2[k] == 0.0) continue;
    const cplx lhs = psi2[k] * lhs_phase[k];
    worst = std::max(worst, std::abs(lhs - rhs[k]) / std::abs(lhs));
  }
  return worst;
}

}  // namespace

double gaussian_amplitude(double x, double sigma) {
  return std::exp(-x * x / (2.0 * sigma * sigma)) / std::pow(std::numbers::pi * sigma * sigma, 0.25);
}

CwSpdc CwSpdc::gaussian(double sigma) {
  require_positive(sigma, "sigma");
  return {std::nullopt, [sigma](double om) { return gaussian_amplitude(om, sigma); }, sigma};
}

PumpShaped PumpShaped::chirped_gaussian(double center, double sigma, double phi, PhaseMatching beta) {
  require_positive(sigma, "sigma");
  if (!std::isfinite(phi)) throw std::invalid_argument("phi must be finite");
  auto alpha = [=](double wp) {
    const double x = wp - center;
    return gaussian_amplitude(x, sigma) * std::exp(I * (0.5 * phi * x * x));
  };
  PumpShaped s{alpha, std::move(beta), sigma, phi};
  check_state(s);
  return s;
}

std::vector<cplx> ShapingSolution::shaper() const {
  std::vector<cplx> m(phase_nodes.size());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::exp(-I * phase_nodes[k]);
  return m;
}

cplx effective_response(const LevelSystem& sys, const InputState& state, double omega) {
  const CwSpdc& s = as_cw(state);
  check_state(s);
  const double half = 0.5 * pump_frequency(sys, s);
  return s.profile(omega) * response_infinite(sys, half + omega, half - omega);
}

cplx effective_response(const LevelSystem& sys, const InputState& state, double omega_plus,
                        double omega_minus) {
  const PumpShaped& s = as_pump(state);
  check_state(s);
  double beta = 1.0;
  if (const auto* g = std::get_if<GaussianPhaseMatching>(&s.beta))
    beta = gaussian_amplitude(omega_minus, g->zeta);
  else if (const auto* c = std::get_if<CustomPhaseMatching>(&s.beta))
    beta = c->beta(omega_minus);
  const double a = 0.5 * (omega_plus + omega_minus), b = 0.5 * (omega_plus - omega_minus);
  return 0.5 * s.alpha(omega_plus) * beta * response_infinite(sys, a, b);
}

FrequencyGrid default_slm_grid(const LevelSystem& sys, const CwSpdc& state) {
  const double sigma = state.sigma > 0.0 ? state.sigma : sys.gamma_e();
  return make_grid(0.0, 10.0 * sigma, std::min(sigma, sys.gamma_e()) / 20.0);
}

std::pair<FrequencyGrid, FrequencyGrid> default_pump_grids(const LevelSystem& sys,
                                                           const PumpShaped& state) {
  require_positive(state.sigma, "sigma");
  const double gf = sys.gamma_f(), ge = sys.gamma_e();
  const double half = std::max(10.0 * state.sigma, 10.0 * gf);
  double step = std::min(state.sigma, gf);
  if (state.phi != 0.0) step = std::min(step, std::numbers::pi / (std::abs(state.phi) * half));
  const FrequencyGrid plus = make_grid(sys.omega_f(), half, step / 10.0);

  double zeta = 0.0;
  if (const auto* g = std::get_if<GaussianPhaseMatching>(&state.beta)) zeta = g->zeta;
  const double wide = 20.0 * ge * (2.0 + std::abs(sys.detuning()));
  const double half_m = std::max(10.0 * zeta, wide);
  const double step_m = zeta > 0.0 ? std::min(zeta, ge) / 10.0 : ge / 10.0;
  return {plus, make_grid(0.0, half_m, step_m)};
}

ShapingSolution optimal_slm(const LevelSystem& sys, const CwSpdc& state, const FrequencyGrid& grid) {
  check_state(state);
  ShapingSolution sol{.kind = ShaperKind::Slm, .grid = grid};
  sol.response = slm_response(sys, state, grid);
  sol.phase_nodes.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) sol.phase_nodes[k] = 0.5 * wrapped_phase(sol.response[k]);
  if (sys.multi_level()) {
    sol.populations_in_units_of_n = false;
    sol.diagnostics.push_back("multi-level system: populations are |∫W|² without the 1/N factor");
  } else {
    sol.population_scale = std::numbers::pi * sys.gamma_f() / normalization(sys);
  }
  finish(sol, trapezoid_sums(sol.response, grid));
  sol.residual = stationarity_residual(sys, state, sol);
  return sol;
}

ShapingSolution optimal_slm(const LevelSystem& sys, const CwSpdc& state) {
  return optimal_slm(sys, state, default_slm_grid(sys, state));
}

cplx eta_infinite(const LevelSystem& sys, double omega_plus) {
  double wsum = 0.0;
  for (const auto& l : sys.levels()) wsum += l.weight;
  const cplx den{omega_plus - sys.omega_f(), sys.gamma_f()};
  return 2.0 * std::numbers::pi * I * sys.prefactor() * wsum / den;
}

cplx eta_gaussian(const LevelSystem& sys, double omega_plus, double zeta) {
  require_positive(zeta, "zeta");
  // ∫β(x)/(x + χ) dx = −iπ (πζ²)^{-1/4} w(χ/(√2ζ)) for Im χ > 0.
  const double c = std::sqrt(sys.prefactor());
  const cplx lf = lineshape(sys, Level::f, omega_plus);
  const double amp = std::pow(std::numbers::pi * zeta * zeta, -0.25);
  cplx acc = 0.0;
  for (const auto& l : sys.levels()) {
    const cplx chi{omega_plus - 2.0 * l.omega, 2.0 * l.gamma};
    acc += l.weight * faddeeva(chi / (std::numbers::sqrt2 * zeta));
  }
  return 4.0 * std::numbers::pi * c * lf * amp * acc;
}

cplx eta_gaussian_cdf(const LevelSystem& sys, double omega_plus, double zeta) {
  require_positive(zeta, "zeta");
  const double c = std::sqrt(sys.prefactor());
  const cplx lf = lineshape(sys, Level::f, omega_plus);
  cplx acc = 0.0;
  for (const auto& l : sys.levels()) {
    const cplx chi{omega_plus - 2.0 * l.omega, 2.0 * l.gamma};
    const cplx beta = std::exp(-chi * chi / (2.0 * zeta * zeta)) /
                      std::pow(std::numbers::pi * zeta * zeta, 0.25);
    acc += l.weight * beta * complex_normal_cdf(I * chi / zeta);
  }
  return 8.0 * std::numbers::pi * c * lf * acc;
}

cplx xi(const LevelSystem& sys, const PumpShaped& state, double omega_plus,
        const FrequencyGrid& grid_minus) {
  const cplx a = state.alpha(omega_plus);
  if (std::holds_alternative<InfinitePhaseMatching>(state.beta)) return a * eta_infinite(sys, omega_plus);
  if (const auto* g = std::get_if<GaussianPhaseMatching>(&state.beta))
    return 0.5 * a * eta_gaussian(sys, omega_plus, g->zeta);
  const auto& beta = std::get<CustomPhaseMatching>(state.beta).beta;
  const auto w = quadrature_weights(grid_minus);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < grid_minus.size(); ++k) {
    const double x = grid_minus.node(k);
    acc += w[k] * beta(x) * response_infinite(sys, 0.5 * (omega_plus + x), 0.5 * (omega_plus - x));
  }
  return 0.5 * a * acc;
}

ShapingSolution optimal_pump_shaper(const LevelSystem& sys, const PumpShaped& state,
                                    const FrequencyGrid& grid_plus, const FrequencyGrid& grid_minus) {
  check_state(state);
  ShapingSolution sol{.kind = ShaperKind::Pump, .grid = grid_plus, .grid_minus = grid_minus};
  sol.response = pump_response(sys, state, grid_plus, grid_minus);
  sol.phase_nodes.resize(grid_plus.size());
  for (std::size_t k = 0; k < grid_plus.size(); ++k) sol.phase_nodes[k] = wrapped_phase(sol.response[k]);

  // ∬|αβ|² dω1 dω2 = (1/2)∫|α|² ∫β²; the Gaussian state is rescaled to unit norm.
  double state_norm = 1.0;
  if (std::holds_alternative<GaussianPhaseMatching>(state.beta)) {
    state_norm = 0.5;
  } else if (const auto* c = std::get_if<CustomPhaseMatching>(&state.beta)) {
    state_norm = 0.5 * integrate(grid_minus, [&](double x) { return c->beta(x) * c->beta(x); });
  } else {
    sol.diagnostics.push_back("infinite phase matching: state not normalizable, beta taken as 1");
  }
  if (sys.multi_level()) {
    sol.populations_in_units_of_n = false;
    sol.population_scale = 1.0 / state_norm;
    sol.diagnostics.push_back("multi-level system: populations are without the 1/N factor");
  } else {
    sol.population_scale = 1.0 / (state_norm * normalization(sys));
  }
  finish(sol, trapezoid_sums(sol.response, grid_plus));
  sol.residual = stationarity_residual(sys, state, sol);
  return sol;
}

ShapingSolution optimal_pump_shaper(const LevelSystem& sys, const PumpShaped& state) {
  const auto [gp, gm] = default_pump_grids(sys, state);
  return optimal_pump_shaper(sys, state, gp, gm);
}

double shaped_population(const KernelMatrix& w, std::span<const cplx> m1, std::span<const cplx> m2) {
  if (m1.size() != w.grid1.size() || m2.size() != w.grid2.size())
    throw std::invalid_argument("shaper sizes do not match the kernel grids");
  require_unit_modulus(m1, "M1");
  require_unit_modulus(m2, "M2");
  const auto w1 = quadrature_weights(w.grid1), w2 = quadrature_weights(w.grid2);
  cplx acc = 0.0;
  for (std::size_t j = 0; j < m2.size(); ++j) {
    cplx col = 0.0;
    for (std::size_t i = 0; i < m1.size(); ++i) {
      const double q = w.weight_embedded ? std::sqrt(w1[i]) : w1[i];
      col += q * w.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * m1[i];
    }
    const double q = w.weight_embedded ? std::sqrt(w2[j]) : w2[j];
    acc += q * col * m2[j];
  }
  return std::norm(acc);
}

double shaped_population(const ShapingSolution& sol, std::span<const cplx> m1, std::span<const cplx> m2) {
  const std::size_t n = sol.grid.size();
  if (m1.size() != n) throw std::invalid_argument("shaper size does not match the grid");
  require_unit_modulus(m1, "M1");
  const auto w = quadrature_weights(sol.grid);
  cplx acc = 0.0;
  if (sol.kind == ShaperKind::Slm) {
    if (m2.size() != n) throw std::invalid_argument("second shaper size does not match the grid");
    require_unit_modulus(m2, "M2");
    for (std::size_t k = 0; k < n; ++k) acc += w[k] * sol.response[k] * m1[k] * m2[n - 1 - k];
  } else {
    if (!m2.empty()) throw std::invalid_argument("pump shaping acts on omega_plus only");
    for (std::size_t k = 0; k < n; ++k) acc += w[k] * sol.response[k] * m1[k];
  }
  return sol.population_scale * std::norm(acc);
}

double stationarity_residual(const LevelSystem& sys, const InputState& state, const ShapingSolution& sol) {
  return stationarity_residual(sys, state, sol, sol.shaper());
}

double stationarity_residual(const LevelSystem& sys, const InputState& state, const ShapingSolution& sol,
                             std::span<const cplx> m) {
  const std::size_t n = sol.grid.size();
  if (m.size() != n) throw std::invalid_argument("shaper size does not match the grid");
  const double sqrt_n = sys.multi_level() ? 1.0 : std::sqrt(normalization(sys));
  const auto w = quadrature_weights(sol.grid);
  std::vector<double> psi2(n);
  std::vector<cplx> rhs(n), lhs_phase(m.begin(), m.end());

  std::vector<cplx> f;
  if (sol.kind == ShaperKind::Slm) {
    const CwSpdc& s = as_cw(state);
    check_state(s);
    f = slm_response(sys, s, sol.grid);
  } else {
    const PumpShaped& s = as_pump(state);
    check_state(s);
    if (!sol.grid_minus) throw std::invalid_argument("pump solution carries no omega_minus grid");
    f = pump_response(sys, s, sol.grid, *sol.grid_minus);
  }

  double abs_int = 0.0;
  cplx a = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    abs_int += w[k] * std::abs(f[k]);
    a += sol.kind == ShaperKind::Slm ? w[k] * f[k] * m[k] * m[n - 1 - k] : w[k] * f[k] * m[k];
  }
  for (std::size_t k = 0; k < n; ++k) {
    psi2[k] = sqrt_n * std::abs(f[k]) * abs_int;
    const cplx partner = sol.kind == ShaperKind::Slm ? std::conj(m[n - 1 - k]) : cplx(1.0);
    rhs[k] = sqrt_n * std::conj(f[k]) * partner * a;
  }
  return fixed_point_mismatch(psi2, lhs_phase, rhs);
}

double diagonal_stationarity_residual(const KernelMatrix& w, std::span<const cplx> m1,
                                      std::span<const cplx> m2) {
  const std::size_t n1 = w.grid1.size(), n2 = w.grid2.size();
  if (m1.size() != n1 || m2.size() != n2)
    throw std::invalid_argument("shaper sizes do not match the kernel grids");
  const auto w1 = quadrature_weights(w.grid1), w2 = quadrature_weights(w.grid2);
  auto value = [&](std::size_t i, std::size_t j) {
    const cplx e = w.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return w.weight_embedded ? e / std::sqrt(w1[i] * w2[j]) : e;
  };
  cplx a = 0.0;
  double total = 0.0;
  std::vector<double> row_abs(n1, 0.0), col_abs(n2, 0.0);
  std::vector<cplx> row_rhs(n1, 0.0), col_rhs(n2, 0.0);
  for (std::size_t j = 0; j < n2; ++j)
    for (std::size_t i = 0; i < n1; ++i) {
      const cplx v = value(i, j);
      a += w1[i] * w2[j] * v * m1[i] * m2[j];
      total += w1[i] * w2[j] * std::abs(v);
      row_abs[i] += w2[j] * std::abs(v);
      col_abs[j] += w1[i] * std::abs(v);
      row_rhs[i] += w2[j] * std::conj(v * m2[j]);
      col_rhs[j] += w1[i] * std::conj(v * m1[i]);
    }
  std::vector<double> psi1(n1), psi2(n2);
  for (std::size_t i = 0; i < n1; ++i) {
    psi1[i] = total * row_abs[i];
    row_rhs[i] *= a;
  }
  for (std::size_t j = 0; j < n2; ++j) {
    psi2[j] = total * col_abs[j];
    col_rhs[j] *= a;
  }
  std::vector<cplx> p1(m1.begin(), m1.end()), p2(m2.begin(), m2.end());
  return std::max(fixed_point_mismatch(psi1, p1, row_rhs), fixed_point_mismatch(psi2, p2, col_rhs));
}

}  // namespace tpa
