#pragma once

#include <span>
#include <vector>

#include "tmsc/tensor.hpp"

namespace tmsc {

/// External clustering criteria of a predicted partition against the truth.
/// Label values are arbitrary integers; only the induced partitions matter.
struct MetricsReport {
  double nmi = 0.0;
  double acc = 0.0;
  double ar = 0.0;
  double fscore = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

struct PairMetrics {
  double ar = 0.0;
  double fscore = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

/// Normalized mutual information with the geometric-mean normalization and
/// natural logs. Defined as 0 when either partition has a single cluster.
double nmi(std::span<const int> pred, std::span<const int> truth);

/// Fraction of samples matched under the best one-to-one cluster-to-class map.
double acc(std::span<const int> pred, std::span<const int> truth);

/// Pair-counting precision, recall, F-score and adjusted Rand index.
PairMetrics pair_metrics(std::span<const int> pred, std::span<const int> truth);

MetricsReport evaluate(std::span<const int> pred, std::span<const int> truth);

/// Minimum-cost perfect assignment on a square cost matrix; result[row] = col.
std::vector<int> hungarian(const Matrix& cost);

/// Counts table: rows index the distinct pred labels (ascending), columns the
/// distinct truth labels.
Matrix contingency(std::span<const int> pred, std::span<const int> truth);

}  // namespace tmsc
