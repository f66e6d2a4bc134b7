#include "tpa/svd.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "tpa/level_system.hpp"

namespace tpa {
namespace {

Eigen::MatrixXcd orthonormal_basis(const Eigen::MatrixXcd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(y);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(y.rows(), y.cols());
}

}  // namespace

SvdResult dense_svd(const Eigen::MatrixXcd& a, bool vectors) {
  if (a.size() == 0) throw std::invalid_argument("empty matrix");
  if (!a.allFinite()) throw NumericalError("matrix contains non-finite entries");
  const unsigned flags = vectors ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0u;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, flags);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
  SvdResult r;
  r.values = svd.singularValues();
  if (vectors) {
    r.u = svd.matrixU();
    r.v = svd.matrixV();
  }
  return r;
}

SvdResult randomized_svd(const Eigen::MatrixXcd& a, std::size_t rank, bool vectors,
                         const RandomizedOptions& opts) {
  if (a.size() == 0) throw std::invalid_argument("empty matrix");
  if (rank == 0) throw std::invalid_argument("rank must be positive");
  if (!a.allFinite()) throw NumericalError("matrix contains non-finite entries");
  const auto full = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
  rank = std::min(rank, full);
  const auto block = static_cast<Eigen::Index>(std::min(rank + opts.oversample, full));
  const auto k = static_cast<Eigen::Index>(rank);

  std::mt19937_64 gen(opts.seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd omega(a.cols(), block);
  for (Eigen::Index j = 0; j < block; ++j)
    for (Eigen::Index i = 0; i < a.cols(); ++i) omega(i, j) = cplx(nd(gen), nd(gen));

  Eigen::MatrixXcd q = orthonormal_basis(a * omega);
  Eigen::VectorXd prev;
  SvdResult r;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::MatrixXcd z = orthonormal_basis(a.adjoint() * q);
    q = orthonormal_basis(a * z);
    const Eigen::MatrixXcd b = q.adjoint() * a;
    Eigen::BDCSVD<Eigen::MatrixXcd> small(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (small.info() != Eigen::Success) throw NumericalError("SVD did not converge");
    const Eigen::VectorXd s = small.singularValues();
    r.iterations = it;
    const bool settled =
        prev.size() == s.size() &&
        ((s.head(k) - prev.head(k)).cwiseAbs().maxCoeff() <= opts.tolerance * std::max(s(0), 1e-300));
    prev = s;
    if (settled || block == static_cast<Eigen::Index>(full)) {
      r.values = s.head(k);
      if (vectors) {
        r.u = (q * small.matrixU()).leftCols(k);
        r.v = small.matrixV().leftCols(k);
      }
      return r;
    }
  }
  throw NumericalError("truncated SVD: leading singular values did not converge");
}

}  // namespace tpa
