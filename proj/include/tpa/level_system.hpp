#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace tpa {

using cplx = std::complex<double>;

// Raised when a numerical routine cannot deliver a trustworthy result
// (non-convergence, degenerate input). Argument problems use std::invalid_argument.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntermediateLevel {
  double omega = 0.0;
  double gamma = 1.0;
  double weight = 1.0;
};

struct LevelParams {
  double detuning = 0.0;   // Δ = (ω_f − 2ω_e)/γ_e
  double deviation = 0.0;  // δ = γ_f/γ_e − 2
  double gamma_e = 1.0;
  double omega_e = 0.0;
  double prefactor = 1.0;  // κ
  // Empty means a single intermediate level (omega_e, gamma_e, weight 1).
  std::vector<IntermediateLevel> intermediates;
};

/// Ground, intermediate and final level of the absorber in internal units.
/// ω_f and γ_f are always derived from (ω_e, γ_e, Δ, δ).
class LevelSystem {
 public:
  LevelSystem() : LevelSystem(LevelParams{}) {}
  LevelSystem(double detuning, double deviation);
  explicit LevelSystem(LevelParams p);

  double detuning() const { return p_.detuning; }
  double deviation() const { return p_.deviation; }
  double gamma_e() const { return p_.gamma_e; }
  double omega_e() const { return p_.omega_e; }
  double prefactor() const { return p_.prefactor; }
  double gamma_f() const { return (2.0 + p_.deviation) * p_.gamma_e; }
  double omega_f() const { return 2.0 * p_.omega_e + p_.detuning * p_.gamma_e; }

  bool multi_level() const { return !p_.intermediates.empty(); }
  // The intermediate levels actually summed over (one entry in the single-level case).
  const std::vector<IntermediateLevel>& levels() const { return levels_; }
  const LevelParams& params() const { return p_; }

  LevelSystem with_prefactor(double kappa) const;

 private:
  LevelParams p_;
  std::vector<IntermediateLevel> levels_;
};

}  // namespace tpa
