#pragma once

#include "tpa/level_system.hpp"

namespace tpa {

enum class Level { e, f };

struct ResponseOptions {
  double t_minus_t0 = 0.0;        // elapsed interaction time, finite kernel only
  bool drop_global_phase = true;  // drop exp(-i(ω1+ω2)(t−t0))
};

// L_s(ω) = i c_s/(ω − ω_s + iγ_s) with c_e = √κ, c_f = √κ. For a multi-level system
// the e lineshape is the weighted sum over the intermediate levels.
cplx lineshape(const LevelSystem& sys, Level level, double omega);

// [L_e(ω1) + L_e(ω2)] L_f(ω1 + ω2), times the global phase when it is kept.
// Exactly symmetric in its frequency arguments.
cplx response_infinite(const LevelSystem& sys, double omega1, double omega2,
                       const ResponseOptions& opts = {});

// Finite interaction time kernel. Vanishes at t − t0 = 0 and tends to
// response_infinite as t − t0 grows.
cplx response_finite(const LevelSystem& sys, const ResponseOptions& opts, double omega1,
                     double omega2);

// Q(ω1, ω2) = L_e(ω1) L_f(ω1 + ω2); Q(a,b) + Q(b,a) reproduces response_infinite.
cplx response_asymmetric(const LevelSystem& sys, double omega1, double omega2,
                         const ResponseOptions& opts = {});

// ∬|T|² dω1 dω2 = 2π²κ²/(γ_e γ_f). Throws std::domain_error for multi-level systems.
double normalization(const LevelSystem& sys);

// Optimal two-photon amplitude Φ = T*/√N (single intermediate level).
cplx optimal_state(const LevelSystem& sys, double omega1, double omega2);

// Density of ω1 + ω2 under |Φ|²: Lorentzian of half-width γ_f centred at ω_f.
double marginal_sum(const LevelSystem& sys, double omega_plus);

// Single-photon density of |Φ|². Throws std::domain_error for multi-level systems.
double marginal_single(const LevelSystem& sys, double omega);

}  // namespace tpa
