#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tmsc/solver.hpp"

namespace tmsc {

/// Single-view low-rank representation, min lambda ||E||_{2,1} + ||Z||_*
/// s.t. X = XZ + E, solved by the multi-view solver with one unrotated view.
/// Only lambda and rotated are overridden in `base`.
SolverResult lrr(const Matrix& x, double lambda, SolverConfig base = {});

struct NaiveMultiviewResult {
  std::vector<SolverResult> per_view;
  Matrix affinity;  // (1/V) sum_v (|Z_v| + |Z_v^T|) / 2
};

/// Independent LRR per view; `lambdas` holds one value per view.
NaiveMultiviewResult naive_multiview(const MultiViewDataset& data, std::span<const double> lambdas,
                                     SolverConfig base = {});

/// Median Euclidean distance over all distinct sample pairs (columns of x).
double median_pairwise_distance(const Matrix& x);

/// Gaussian kernel affinity exp(-||x_i - x_j||^2 / (2 sigma^2)) with a zero
/// diagonal. sigma defaults to the median pairwise distance.
Matrix spc_affinity(const Matrix& x, std::optional<double> sigma = std::nullopt);

/// The solver on the unrotated N x N x V coefficient tensor.
SolverResult ut_svd_msc(const MultiViewDataset& data, SolverConfig config);

}  // namespace tmsc
