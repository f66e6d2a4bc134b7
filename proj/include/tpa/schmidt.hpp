#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tpa/grid.hpp"
#include "tpa/level_system.hpp"

namespace tpa {

enum class SvdMethod { Auto, Dense, Truncated };

struct DecomposeOptions {
  std::optional<std::size_t> rank;  // keep the leading `rank` pairs; all when unset
  bool renormalize = false;         // divide by the kernel's Frobenius norm
  bool compute_modes = true;
  SvdMethod method = SvdMethod::Auto;
};

/// Φ(ω1, ω2) = Σ_k r_k φ_k*(ω1) ψ_k*(ω2). Mode columns are sampled on the grid
/// nodes and orthonormal under the trapezoidal inner product.
struct SchmidtDecomposition {
  std::vector<double> coefficients;
  Eigen::MatrixXcd modes1;  // φ_k in column k
  Eigen::MatrixXcd modes2;  // ψ_k in column k
  FrequencyGrid grid1;
  FrequencyGrid grid2;
  std::size_t truncation_rank = 0;
  double residual = 0.0;      // Frobenius norm of the discarded part, same scale as r_k
  double kernel_norm2 = 0.0;  // squared Frobenius norm of the raw input kernel
  bool renormalized = false;
  bool truncated = false;     // true when only a leading subset of the spectrum is known
  std::vector<std::string> warnings;

  double captured_norm2() const;  // Σ r_k²
};

// Same shape for the decomposition of the asymmetric kernel (coefficients s_k).
using AsymmetricSchmidt = SchmidtDecomposition;

SchmidtDecomposition decompose(const KernelMatrix& kernel, const DecomposeOptions& opts = {});

// Weight-embedded matrix Σ_k r_k φ_k*(ω_i) ψ_k*(ν_j) √(w_i w_j).
Eigen::MatrixXcd reconstruct(const SchmidtDecomposition& d);

// −Σ r² log2 r² over coefficients above 1e-12.
double entropy(std::span<const double> coefficients);
double entropy(const SchmidtDecomposition& d);

// 1/r_1²; throws NumericalError when r_1 vanishes.
double quantum_enhancement(const SchmidtDecomposition& d);

struct SeparableState {
  Eigen::VectorXcd mode1;  // φ_1* on grid1 nodes
  Eigen::VectorXcd mode2;  // ψ_1* on grid2 nodes
  double population_fraction = 0.0;  // r_1², yield in units of N
};
SeparableState optimal_separable(const SchmidtDecomposition& d);

// max_k |r_{2k−1} − r_{2k}|/r_{2k−1} over the first `pairs` pairs (all complete pairs
// when unset). An unpaired trailing coefficient is ignored.
double pairing_check(std::span<const double> coefficients, std::optional<std::size_t> pairs = {});
double pairing_check(const SchmidtDecomposition& d, std::optional<std::size_t> pairs = {});

// Default grid: centre ω_f/2, half-width max(200γ_f, 4|Δ|γ_e), step γ_e/5.
FrequencyGrid default_grid(const LevelSystem& sys);

// Φ = T*/√N sampled with weights. Multi-level systems are normalised by the
// sampled norm, since no closed form exists.
KernelMatrix sample_optimal_state(const LevelSystem& sys, const FrequencyGrid& grid1,
                                  const FrequencyGrid& grid2);
KernelMatrix sample_optimal_state(const LevelSystem& sys, const FrequencyGrid& grid);

// Q/√(N/2) sampled on grid1 (centred near ω_e) × grid2 (centred near ω_f − ω_e).
KernelMatrix sample_asymmetric_state(const LevelSystem& sys, const FrequencyGrid& grid1,
                                     const FrequencyGrid& grid2);

struct GridSpec {
  double half_width = 500.0;
  double step = 0.25;
};

struct AsymptoticBounds {
  double e_inf = 0.0;  // 2/s_1²
  double s_inf = 0.0;  // 1 + S_a
  AsymmetricSchmidt asymmetric;
};

// Decomposes Q on grids that move with the two peaks (centres ω_e and ω_f − ω_e),
// so the result does not depend on Δ.
AsymptoticBounds asymptotic_bounds(const LevelSystem& sys, const GridSpec& grid,
                                   const DecomposeOptions& opts = {});

void write_coefficients_csv(std::ostream& os, const SchmidtDecomposition& d);
// which = 1 for φ_k, 2 for ψ_k; columns omega,re,im.
void write_mode_csv(std::ostream& os, const SchmidtDecomposition& d, std::size_t k, int which);

}  // namespace tpa
