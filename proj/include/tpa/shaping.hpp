#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tpa/grid.hpp"
#include "tpa/level_system.hpp"

namespace tpa {

// (πσ²)^{-1/4} exp(−x²/(2σ²)), unit L2 norm.
double gaussian_amplitude(double x, double sigma);

/// Photon pair from a narrowband cw pump: δ(ω1 + ω2 − ω_p) G(ω1 − ω_p/2).
struct CwSpdc {
  std::optional<double> pump_frequency;   // ω_f when unset
  std::function<double(double)> profile;  // G(Ω), real and even
  double sigma = 0.0;                     // width for Gaussian profiles, 0 otherwise

  static CwSpdc gaussian(double sigma);
};

struct InfinitePhaseMatching {};
struct GaussianPhaseMatching {
  double zeta = 1.0;
};
struct CustomPhaseMatching {
  std::function<double(double)> beta;
};
using PhaseMatching = std::variant<InfinitePhaseMatching, GaussianPhaseMatching, CustomPhaseMatching>;

/// Pulsed pump: α(ω1 + ω2) β(ω1 − ω2).
struct PumpShaped {
  std::function<cplx(double)> alpha;
  PhaseMatching beta;
  double sigma = 0.0;  // informational for the chirped Gaussian
  double phi = 0.0;

  // α(ω+) = (πσ²)^{-1/4} exp(−(ω+ − c)²/(2σ²)) exp(iφ(ω+ − c)²/2).
  static PumpShaped chirped_gaussian(double center, double sigma, double phi, PhaseMatching beta);
};

using InputState = std::variant<CwSpdc, PumpShaped>;

// CwSpdc only: W(Ω, −Ω) = G(Ω) T(ω_p/2 + Ω, ω_p/2 − Ω), with the delta integrated out.
cplx effective_response(const LevelSystem& sys, const InputState& state, double omega);
// PumpShaped only: (1/2) α(ω+) β(ω−) T((ω+ + ω−)/2, (ω+ − ω−)/2).
cplx effective_response(const LevelSystem& sys, const InputState& state, double omega_plus,
                        double omega_minus);

enum class ShaperKind { Slm, Pump };

struct ShapingSolution {
  ShaperKind kind = ShaperKind::Slm;
  FrequencyGrid grid;                // Ω grid (SLM) or ω+ grid (pump)
  std::optional<FrequencyGrid> grid_minus;  // ω− grid used for numerical β (pump)
  std::vector<double> phase_nodes;   // S/2 (SLM) or ϑ (pump), wrapped to (−π, π]
  std::vector<cplx> response;        // W(Ω, −Ω) or ξ(ω+) on the nodes
  double p_shaped = 0.0;
  double p_unshaped = 0.0;
  double e_opt = 1.0;
  double residual = 0.0;             // stationarity residual of the returned phases
  double population_scale = 1.0;     // p = scale · |∫ ...|²
  bool populations_in_units_of_n = true;
  std::vector<std::string> diagnostics;

  std::vector<cplx> shaper() const;  // M = exp(−i phase)
};

// Symmetric Ω grid for the SLM problem: centre 0, half-width 10σ, step min(σ, γ_e)/20.
FrequencyGrid default_slm_grid(const LevelSystem& sys, const CwSpdc& state);

// ω+ grid centred at ω_f with half-width max(10σ, 10γ_f) and a step resolving the
// pump, the final-state linewidth and the chirp; ω− grid with half-width
// max(10ζ, 20γ_e(2 + Δ)).
std::pair<FrequencyGrid, FrequencyGrid> default_pump_grids(const LevelSystem& sys,
                                                           const PumpShaped& state);

// Identical modulators on both photons, M(Ω) = exp(−i S(Ω, −Ω)/2). The grid must be
// symmetric about Ω = 0.
ShapingSolution optimal_slm(const LevelSystem& sys, const CwSpdc& state, const FrequencyGrid& grid);
ShapingSolution optimal_slm(const LevelSystem& sys, const CwSpdc& state);

// Pump modulator M(ω+) = exp(−iϑ(ω+)) with ξ = |ξ| e^{iϑ}. grid_minus is only used
// when β has no closed form.
ShapingSolution optimal_pump_shaper(const LevelSystem& sys, const PumpShaped& state,
                                    const FrequencyGrid& grid_plus, const FrequencyGrid& grid_minus);
ShapingSolution optimal_pump_shaper(const LevelSystem& sys, const PumpShaped& state);

// η^∞(ω+) = (1/2)∫T dω− in closed form.
cplx eta_infinite(const LevelSystem& sys, double omega_plus);
// η(ω+) = ∫β T dω− for Gaussian β of width ζ, via the Faddeeva function.
cplx eta_gaussian(const LevelSystem& sys, double omega_plus, double zeta);
// The same quantity written with the complex normal CDF; limited to its domain.
cplx eta_gaussian_cdf(const LevelSystem& sys, double omega_plus, double zeta);
// ξ(ω+) = ∫W dω− for the given state.
cplx xi(const LevelSystem& sys, const PumpShaped& state, double omega_plus,
        const FrequencyGrid& grid_minus);

// |∬ W M1 M2 dω1 dω2|² for an unembedded kernel; throws std::invalid_argument for
// shaper samples that are not unit modulus.
double shaped_population(const KernelMatrix& w, std::span<const cplx> m1, std::span<const cplx> m2);

// Population in the solution's units for trial shapers. SLM: |∫W(Ω) M1(Ω) M2(−Ω) dΩ|²;
// pump: |∫ξ M1 dω+|² and m2 must be empty.
double shaped_population(const ShapingSolution& sol, std::span<const cplx> m1,
                         std::span<const cplx> m2 = {});

// Max relative mismatch of the fixed-point equation for the solution's shaper
// (nodes with |ψ|² below 1e-12 of its maximum are skipped). W or ξ is re-evaluated
// from (sys, state).
double stationarity_residual(const LevelSystem& sys, const InputState& state,
                             const ShapingSolution& sol);
// Same, for explicitly supplied shaper samples.
double stationarity_residual(const LevelSystem& sys, const InputState& state,
                             const ShapingSolution& sol, std::span<const cplx> shaper);

// Diagonal-shaper fixed point for a general two-dimensional W (unembedded), both
// photons: |ψ_j|² M_j = A ∫W* M_k* with A = ∬W M1 M2 and |ψ_j|² = ∬|W| ∫|W|.
double diagonal_stationarity_residual(const KernelMatrix& w, std::span<const cplx> m1,
                                      std::span<const cplx> m2);

}  // namespace tpa
