#pragma once
// Shared evaluation helpers for the commands and figure sweeps. Everything here is
// free of Params so that sweep points can run on worker threads.

#include <optional>

#include "cli/cli.hpp"
#include "tpa/schmidt.hpp"
#include "tpa/shaping.hpp"

namespace tpa::cli {

struct GridOverride {
  std::optional<double> half_width, step, center;
};

// Default grid unless overridden; a missing step defaults to γ_e/5, a missing
// half-width to the default rule.
FrequencyGrid schmidt_grid(const LevelSystem& sys, const GridOverride& o);

struct SchmidtSummary {
  SchmidtDecomposition d;
  double entropy = 0.0;
  double e_q = 0.0;
  double pairing = 0.0;
};
SchmidtSummary schmidt_summary(const LevelSystem& sys, const FrequencyGrid& g, const DecomposeOptions& o);

// Leading coefficient only, for enhancement maps; r_1² in units of N.
double leading_population(const LevelSystem& sys);

nlohmann::ordered_json grid_json(const FrequencyGrid& g);

SvdMethod parse_method(const std::string& s);

// σ=Δγ_e for the cw examples; needs Δ > 0.
double slm_auto_sigma(const LevelSystem& sys);
// σ=3γ_f and ζ=γ_e(2+Δ).
double pump_auto_sigma(const LevelSystem& sys);
double pump_auto_zeta(const LevelSystem& sys);

}  // namespace tpa::cli
