#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace tpa {

struct SvdResult {
  Eigen::VectorXd values;  // non-increasing
  Eigen::MatrixXcd u;      // thin left singular vectors, empty unless requested
  Eigen::MatrixXcd v;      // thin right singular vectors, empty unless requested
  int iterations = 0;      // subspace iterations (randomized path only)
};

// Reference path: divide-and-conquer SVD of the full matrix.
SvdResult dense_svd(const Eigen::MatrixXcd& a, bool vectors);

struct RandomizedOptions {
  std::size_t oversample = 12;
  int max_iterations = 300;
  double tolerance = 1e-11;  // on the leading values, relative to the largest
  std::uint64_t seed = 0x5eed5eedULL;
};

// Block subspace iteration with Rayleigh-Ritz extraction for the leading `rank`
// singular triplets. Deterministic for a fixed seed. Throws NumericalError when
// the leading values do not settle within max_iterations.
SvdResult randomized_svd(const Eigen::MatrixXcd& a, std::size_t rank, bool vectors,
                         const RandomizedOptions& opts = {});

}  // namespace tpa
