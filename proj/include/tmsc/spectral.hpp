#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tmsc/tensor.hpp"

namespace tmsc {

/// Cluster assignment, values in 1..K.
using Labeling = std::vector<int>;

/// A = (1/V) sum_v (|Z_v| + |Z_v^T|) / 2. Exactly symmetric and nonnegative.
Matrix fuse_affinity(std::span<const Matrix> z);

/// Throws std::invalid_argument unless a is square, symmetric (1e-12 relative
/// to its largest entry) and entrywise nonnegative.
void validate_affinity(const Matrix& a);

/// L = I - D^{-1/2} A D^{-1/2}; a 1e-12 floor on the degrees keeps isolated
/// nodes finite.
Matrix normalized_laplacian(const Matrix& a);

struct KMeansOptions {
  int restarts = 20;
  int max_iters = 300;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> assignment;  // 0-based
  Matrix centers;               // k x dim
  double objective = 0.0;       // within-cluster sum of squares
  int best_restart = 0;
};

/// Lloyd iterations from k-means++ seeds over the rows of `points`; the best
/// restart by objective wins, lowest restart index on ties.
KMeansResult kmeans(const Matrix& points, int k, const KMeansOptions& options = {});

struct SpectralOptions {
  int clusters = 2;
  std::uint64_t seed = 0;
  int restarts = 20;
  int max_iters = 300;
};

struct SpectralResult {
  Labeling labels;
  double objective = 0.0;
  Eigen::VectorXd eigenvalues;  // the K smallest Laplacian eigenvalues
};

/// Normalized-Laplacian spectral clustering: bottom-K eigenvectors, rows
/// scaled to unit length, then k-means.
SpectralResult spectral_cluster(const Matrix& affinity, const SpectralOptions& options);

}  // namespace tmsc
