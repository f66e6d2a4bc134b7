#include "tpa/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "tpa/format.hpp"
#include "tpa/response.hpp"
#include "tpa/svd.hpp"

namespace tpa {

double SchmidtDecomposition::captured_norm2() const {
  double s = 0.0;
  for (double r : coefficients) s += r * r;
  return s;
}

SchmidtDecomposition decompose(const KernelMatrix& kernel, const DecomposeOptions& opts) {
  if (!kernel.weight_embedded)
    throw std::invalid_argument("decompose expects a weight-embedded kernel");
  const auto& a = kernel.entries;
  const auto full = static_cast<std::size_t>(std::min(a.rows(), a.cols()));

  SchmidtDecomposition d{.grid1 = kernel.grid1, .grid2 = kernel.grid2};
  std::size_t rank = full;
  if (opts.rank) {
    if (*opts.rank == 0) throw std::invalid_argument("rank must be positive");
    if (*opts.rank > full)
      d.warnings.push_back("requested rank " + std::to_string(*opts.rank) +
                           " exceeds matrix dimension; clipped to " + std::to_string(full));
    else
      rank = *opts.rank;
  }

  bool truncated_path = opts.method == SvdMethod::Truncated;
  if (opts.method == SvdMethod::Auto) truncated_path = rank < full && full >= 2000 && 4 * rank <= full;
  if (truncated_path && rank == full) truncated_path = false;

  const SvdResult svd = truncated_path ? randomized_svd(a, rank, opts.compute_modes)
                                       : dense_svd(a, opts.compute_modes);
  const auto k = static_cast<Eigen::Index>(rank);

  d.kernel_norm2 = a.squaredNorm();
  d.truncation_rank = rank;
  d.truncated = rank < full;
  d.coefficients.assign(svd.values.data(), svd.values.data() + k);
  double kept = 0.0;
  for (double r : d.coefficients) kept += r * r;
  d.residual = std::sqrt(std::max(0.0, d.kernel_norm2 - kept));

  if (opts.renormalize) {
    if (d.kernel_norm2 <= 0.0) throw NumericalError("cannot renormalize a zero kernel");
    const double s = 1.0 / std::sqrt(d.kernel_norm2);
    for (double& r : d.coefficients) r *= s;
    d.residual *= s;
    d.renormalized = true;
  }

  if (opts.compute_modes) {
    const auto w1 = quadrature_weights(kernel.grid1), w2 = quadrature_weights(kernel.grid2);
    Eigen::MatrixXcd u = svd.u.leftCols(k), v = svd.v.leftCols(k);
    for (Eigen::Index c = 0; c < k; ++c) {
      Eigen::Index imax = 0;
      u.col(c).cwiseAbs2().maxCoeff(&imax);
      const cplx piv = u(imax, c);
      const cplx ph = std::abs(piv) > 0.0 ? std::conj(piv) / std::abs(piv) : cplx(1.0);
      u.col(c) *= ph;
      v.col(c) *= ph;
    }
    d.modes1.resize(u.rows(), k);
    d.modes2.resize(v.rows(), k);
    for (Eigen::Index i = 0; i < u.rows(); ++i)
      d.modes1.row(i) = u.row(i).conjugate() / std::sqrt(w1[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < v.rows(); ++j)
      d.modes2.row(j) = v.row(j) / std::sqrt(w2[static_cast<std::size_t>(j)]);
  }
  return d;
}

Eigen::MatrixXcd reconstruct(const SchmidtDecomposition& d) {
  if (d.modes1.size() == 0) throw std::invalid_argument("decomposition carries no modes");
  const auto w1 = quadrature_weights(d.grid1), w2 = quadrature_weights(d.grid2);
  Eigen::MatrixXcd u = d.modes1.conjugate();
  Eigen::MatrixXcd v = d.modes2.conjugate();
  for (Eigen::Index i = 0; i < u.rows(); ++i) u.row(i) *= std::sqrt(w1[static_cast<std::size_t>(i)]);
  for (Eigen::Index j = 0; j < v.rows(); ++j) v.row(j) *= std::sqrt(w2[static_cast<std::size_t>(j)]);
  for (Eigen::Index c = 0; c < u.cols(); ++c) u.col(c) *= d.coefficients[static_cast<std::size_t>(c)];
  return u * v.transpose();
}

double entropy(std::span<const double> coefficients) {
  double s = 0.0;
  for (double r : coefficients) {
    if (r <= 1e-12) continue;
    const double p = r * r;
    s -= p * std::log2(p);
  }
  return s;
}

double entropy(const SchmidtDecomposition& d) { return entropy(d.coefficients); }

double quantum_enhancement(const SchmidtDecomposition& d) {
  if (d.coefficients.empty() || !(d.coefficients.front() > 0.0))
    throw NumericalError("leading Schmidt coefficient vanishes");
  const double r1 = d.coefficients.front();
  return 1.0 / (r1 * r1);
}

SeparableState optimal_separable(const SchmidtDecomposition& d) {
  if (d.coefficients.empty() || d.modes1.cols() == 0)
    throw std::invalid_argument("decomposition carries no modes");
  const double r1 = d.coefficients.front();
  return {d.modes1.col(0).conjugate(), d.modes2.col(0).conjugate(), r1 * r1};
}

double pairing_check(std::span<const double> c, std::optional<std::size_t> pairs) {
  std::size_t n = c.size() / 2;
  if (pairs) n = std::min(n, *pairs);
  double gap = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = c[2 * k], b = c[2 * k + 1];
    if (a <= 0.0) break;
    gap = std::max(gap, std::abs(a - b) / a);
  }
  return gap;
}

double pairing_check(const SchmidtDecomposition& d, std::optional<std::size_t> pairs) {
  return pairing_check(d.coefficients, pairs);
}

FrequencyGrid default_grid(const LevelSystem& sys) {
  const double half = std::max(200.0 * sys.gamma_f(), 4.0 * std::abs(sys.detuning()) * sys.gamma_e());
  return make_grid(0.5 * sys.omega_f(), half, sys.gamma_e() / 5.0);
}

KernelMatrix sample_optimal_state(const LevelSystem& sys, const FrequencyGrid& grid1,
                                  const FrequencyGrid& grid2) {
  if (!sys.multi_level()) {
    const double scale = 1.0 / std::sqrt(normalization(sys));
    return sample_kernel(
        [&](double a, double b) { return std::conj(response_infinite(sys, a, b)) * scale; }, grid1,
        grid2);
  }
  KernelMatrix k = sample_kernel(
      [&](double a, double b) { return std::conj(response_infinite(sys, a, b)); }, grid1, grid2);
  const double n = k.frobenius_norm2();
  if (!(n > 0.0)) throw NumericalError("sampled response vanishes on the grid");
  k.entries /= std::sqrt(n);
  return k;
}

KernelMatrix sample_optimal_state(const LevelSystem& sys, const FrequencyGrid& grid) {
  return sample_optimal_state(sys, grid, grid);
}

KernelMatrix sample_asymmetric_state(const LevelSystem& sys, const FrequencyGrid& grid1,
                                     const FrequencyGrid& grid2) {
  const double scale = 1.0 / std::sqrt(0.5 * normalization(sys));
  return sample_kernel([&](double a, double b) { return response_asymmetric(sys, a, b) * scale; },
                       grid1, grid2);
}

AsymptoticBounds asymptotic_bounds(const LevelSystem& sys, const GridSpec& grid,
                                   const DecomposeOptions& opts) {
  const FrequencyGrid g1 = make_grid(sys.omega_e(), grid.half_width, grid.step);
  const FrequencyGrid g2 = make_grid(sys.omega_f() - sys.omega_e(), grid.half_width, grid.step);
  AsymmetricSchmidt q = decompose(sample_asymmetric_state(sys, g1, g2), opts);
  const double s1 = q.coefficients.front();
  if (!(s1 > 0.0)) throw NumericalError("leading asymmetric coefficient vanishes");
  return {.e_inf = 2.0 / (s1 * s1), .s_inf = 1.0 + entropy(q), .asymmetric = std::move(q)};
}

void write_coefficients_csv(std::ostream& os, const SchmidtDecomposition& d) {
  os << "k,r_k\n";
  for (std::size_t k = 0; k < d.coefficients.size(); ++k)
    os << k + 1 << ',' << fmt_num(d.coefficients[k]) << '\n';
}

void write_mode_csv(std::ostream& os, const SchmidtDecomposition& d, std::size_t k, int which) {
  const Eigen::MatrixXcd& m = which == 1 ? d.modes1 : d.modes2;
  const FrequencyGrid& g = which == 1 ? d.grid1 : d.grid2;
  if (which != 1 && which != 2) throw std::invalid_argument("mode side must be 1 or 2");
  if (static_cast<Eigen::Index>(k) >= m.cols()) throw std::out_of_range("mode index out of range");
  os << "omega,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const cplx v = m(i, static_cast<Eigen::Index>(k));
    os << fmt_num(g.node(static_cast<std::size_t>(i))) << ',' << fmt_num(v.real()) << ','
       << fmt_num(v.imag()) << '\n';
  }
}

}  // namespace tpa
