#pragma once

#include <vector>

#include "tmsc/tensor.hpp"

namespace tmsc {

/// X = U * S * V^T with orthogonal U (n1 x n1 x n3), V (n2 x n2 x n3) and
/// f-diagonal S (n1 x n2 x n3). Column signs/phases are not canonicalized.
struct TSVDFactors {
  Tensor3 U;
  Tensor3 S;
  Tensor3 V;
};

/// Per-Fourier-slice ranks.
struct MultiRank {
  std::vector<Index> ranks;
};

inline constexpr double kDefaultRankTolerance = 1e-8;

TSVDFactors tsvd(const Tensor3& x);

/// Singular values of each Fourier-domain frontal slice, descending.
std::vector<Eigen::VectorXd> fourier_singular_values(const Tensor3& x);

/// Tensor nuclear norm: sum of all Fourier-slice singular values.
double ttnn(const Tensor3& x);

/// Counts Fourier singular values above tol times the largest over all slices.
MultiRank multirank(const Tensor3& x, double tol = kDefaultRankTolerance);

/// Keeps the leading k singular values in every Fourier slice.
/// Requires 1 <= k <= min(n1, n2).
Tensor3 truncate(const Tensor3& x, Index k);

/// Proximal operator of tau * ttnn: singular value soft-thresholding of every
/// Fourier slice at n3 * tau. Requires tau > 0 and finite input.
Tensor3 tubal_shrink(const Tensor3& f, double tau);

}  // namespace tmsc
