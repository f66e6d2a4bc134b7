#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "tpa/level_system.hpp"

namespace tpa {

/// Uniform frequency lattice stored as (min, step, count); node k is min + k·step.
class FrequencyGrid {
 public:
  FrequencyGrid(double min, double step, std::size_t count);
  // count = floor((max − min)/step) + 1, with a small tolerance so that exact
  // multiples are not lost to rounding.
  static FrequencyGrid from_range(double min, double max, double step);

  double min() const { return min_; }
  double max() const { return node(count_ - 1); }
  double step() const { return step_; }
  std::size_t size() const { return count_; }
  double node(std::size_t k) const { return min_ + static_cast<double>(k) * step_; }
  std::vector<double> nodes() const;

 private:
  double min_;
  double step_;
  std::size_t count_;
};

// Symmetric grid about center with an odd node count, so the center is a node.
FrequencyGrid make_grid(double center, double half_width, double step);

// Trapezoidal weights: step inside, step/2 at both ends.
std::vector<double> quadrature_weights(const FrequencyGrid& grid);

double integrate(const FrequencyGrid& grid, const std::function<double(double)>& f);

struct KernelMatrix {
  FrequencyGrid grid1;
  FrequencyGrid grid2;
  Eigen::MatrixXcd entries;
  bool weight_embedded = true;

  double frobenius_norm2() const { return entries.squaredNorm(); }
};

using Kernel2D = std::function<cplx(double, double)>;

// Rows follow grid1, columns grid2, both ascending. With embed_weights the entry is
// f(ω_i, ν_j)·√(w_i w_j), so the squared Frobenius norm approximates ∬|f|².
KernelMatrix sample_kernel(const Kernel2D& f, const FrequencyGrid& grid1,
                           const FrequencyGrid& grid2, bool embed_weights = true);

// ⟨F, G⟩ = Σ conj(F_ij) G_ij.
cplx frobenius_inner(const KernelMatrix& a, const KernelMatrix& b);

// Row marginal Σ_j |K_ij|² / w_i of an embedded kernel: density of ω1 at grid1 nodes.
std::vector<double> row_marginal(const KernelMatrix& k);

// Density of ω1 + ω2 at the nodes min1 + min2 + s·step for kernels sampled on two
// grids sharing one step; returns (frequencies, density).
std::pair<std::vector<double>, std::vector<double>> sum_marginal(const KernelMatrix& k);

// Row-major CSV dump: header "row,col,omega1,omega2,re,im", one line per entry.
void write_kernel_csv(std::ostream& os, const KernelMatrix& k);

}  // namespace tpa
