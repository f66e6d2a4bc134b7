#include "tpa/grid.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "tpa/format.hpp"

namespace tpa {

FrequencyGrid::FrequencyGrid(double min, double step, std::size_t count)
    : min_(min), step_(step), count_(count) {
  if (!std::isfinite(min) || !std::isfinite(step) || step <= 0.0)
    throw std::invalid_argument("grid step must be positive and finite");
  if (count < 2) throw std::invalid_argument("grid needs at least two nodes");
}

FrequencyGrid FrequencyGrid::from_range(double min, double max, double step) {
  if (!(step > 0.0) || !(max > min))
    throw std::invalid_argument("grid requires min < max and step > 0");
  const double n = std::floor((max - min) / step + 1e-9);
  return FrequencyGrid(min, step, static_cast<std::size_t>(n) + 1);
}

std::vector<double> FrequencyGrid::nodes() const {
  std::vector<double> out(count_);
  for (std::size_t k = 0; k < count_; ++k) out[k] = node(k);
  return out;
}

FrequencyGrid make_grid(double center, double half_width, double step) {
  if (!std::isfinite(center)) throw std::invalid_argument("grid center must be finite");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw std::invalid_argument("grid half-width must be positive");
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (step > half_width) throw std::invalid_argument("grid step exceeds half-width");
  const auto n = static_cast<std::size_t>(std::floor(half_width / step + 1e-9));
  return FrequencyGrid(center - static_cast<double>(n) * step, step, 2 * n + 1);
}

std::vector<double> quadrature_weights(const FrequencyGrid& grid) {
  std::vector<double> w(grid.size(), grid.step());
  w.front() = w.back() = 0.5 * grid.step();
  return w;
}

double integrate(const FrequencyGrid& grid, const std::function<double(double)>& f) {
  const auto w = quadrature_weights(grid);
  double s = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) s += w[k] * f(grid.node(k));
  return s;
}

KernelMatrix sample_kernel(const Kernel2D& f, const FrequencyGrid& grid1,
                           const FrequencyGrid& grid2, bool embed_weights) {
  const auto n1 = grid1.size(), n2 = grid2.size();
  KernelMatrix k{grid1, grid2, Eigen::MatrixXcd(n1, n2), embed_weights};
  std::vector<double> s1(n1, 1.0), s2(n2, 1.0);
  if (embed_weights) {
    const auto w1 = quadrature_weights(grid1), w2 = quadrature_weights(grid2);
    for (std::size_t i = 0; i < n1; ++i) s1[i] = std::sqrt(w1[i]);
    for (std::size_t j = 0; j < n2; ++j) s2[j] = std::sqrt(w2[j]);
  }
  // Column-major storage: fill column by column.
  for (std::size_t j = 0; j < n2; ++j) {
    const double nu = grid2.node(j);
    for (std::size_t i = 0; i < n1; ++i)
      k.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          f(grid1.node(i), nu) * (s1[i] * s2[j]);
  }
  return k;
}

cplx frobenius_inner(const KernelMatrix& a, const KernelMatrix& b) {
  if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols())
    throw std::invalid_argument("kernel shapes differ");
  return (a.entries.conjugate().cwiseProduct(b.entries)).sum();
}

std::vector<double> row_marginal(const KernelMatrix& k) {
  if (!k.weight_embedded) throw std::invalid_argument("row_marginal needs an embedded kernel");
  const auto w = quadrature_weights(k.grid1);
  std::vector<double> p(k.grid1.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = k.entries.row(static_cast<Eigen::Index>(i)).squaredNorm() / w[i];
  return p;
}

std::pair<std::vector<double>, std::vector<double>> sum_marginal(const KernelMatrix& k) {
  if (!k.weight_embedded) throw std::invalid_argument("sum_marginal needs an embedded kernel");
  const double h = k.grid1.step();
  if (std::abs(k.grid2.step() - h) > 1e-12 * h)
    throw std::invalid_argument("sum_marginal needs grids with a common step");
  const auto n1 = k.grid1.size(), n2 = k.grid2.size();
  std::vector<double> freq(n1 + n2 - 1), dens(n1 + n2 - 1, 0.0);
  for (std::size_t s = 0; s < freq.size(); ++s)
    freq[s] = k.grid1.min() + k.grid2.min() + static_cast<double>(s) * h;
  for (std::size_t j = 0; j < n2; ++j)
    for (std::size_t i = 0; i < n1; ++i)
      dens[i + j] += std::norm(k.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  for (auto& d : dens) d /= h;
  return {freq, dens};
}

void write_kernel_csv(std::ostream& os, const KernelMatrix& k) {
  os << "row,col,omega1,omega2,re,im\n";
  for (Eigen::Index i = 0; i < k.entries.rows(); ++i)
    for (Eigen::Index j = 0; j < k.entries.cols(); ++j) {
      const cplx v = k.entries(i, j);
      os << i << ',' << j << ',' << fmt_num(k.grid1.node(static_cast<std::size_t>(i))) << ','
         << fmt_num(k.grid2.node(static_cast<std::size_t>(j))) << ',' << fmt_num(v.real()) << ','
         << fmt_num(v.imag()) << '\n';
    }
}

}  // namespace tpa
