#include "tpa/level_system.hpp"

#include <cmath>
#include <string>

namespace tpa {

LevelSystem::LevelSystem(double detuning, double deviation)
    : LevelSystem(LevelParams{detuning, deviation}) {}

LevelSystem::LevelSystem(LevelParams p) : p_(std::move(p)) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(p_.gamma_e) || p_.gamma_e <= 0.0)
    throw std::invalid_argument("gamma_e must be positive");
  if (!finite(p_.deviation) || p_.deviation <= -2.0)
    throw std::invalid_argument("deviation must exceed -2 (gamma_f > 0), got " +
                                std::to_string(p_.deviation));
  if (!finite(p_.detuning) || !finite(p_.omega_e))
    throw std::invalid_argument("detuning and omega_e must be finite");
  if (!finite(p_.prefactor) || p_.prefactor <= 0.0)
    throw std::invalid_argument("prefactor must be positive");
  for (const auto& l : p_.intermediates) {
    if (!finite(l.omega) || !finite(l.weight))
      throw std::invalid_argument("intermediate level entries must be finite");
    if (!finite(l.gamma) || l.gamma <= 0.0)
      throw std::invalid_argument("intermediate level gamma must be positive");
  }
  if (p_.intermediates.empty())
    levels_.push_back({p_.omega_e, p_.gamma_e, 1.0});
  else
    levels_ = p_.intermediates;
}

LevelSystem LevelSystem::with_prefactor(double kappa) const {
  LevelParams q = p_;
  q.prefactor = kappa;
  return LevelSystem(q);
}

}  // namespace tpa
