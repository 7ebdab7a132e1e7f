#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tmsc/metrics.hpp"
#include "tmsc/solver.hpp"
#include "tmsc/spectral.hpp"

namespace tmsc {

struct PhaseTimings {
  double load_seconds = 0.0;
  double solve_seconds = 0.0;
  double spectral_seconds = 0.0;
};

/// Outcome of one clustering pipeline: solver, fused affinity, spectral step.
struct ClusteringReport {
  std::string method;
  SolverConfig config;
  int restarts = 20;
  std::uint64_t seed = 0;
  int clusters = 0;
  ConvergenceTrace trace;
  bool converged = false;
  int iterations = 0;
  Labeling labels;
  std::optional<MetricsReport> metrics;
  PhaseTimings timings;
};

struct PipelineOptions {
  SolverConfig solver;
  int restarts = 20;
  std::uint64_t seed = 0;
};

/// Solver, fused affinity, spectral clustering, and metrics when the dataset
/// carries labels.
ClusteringReport cluster_dataset(const MultiViewDataset& data, const PipelineOptions& options);

/// Spectral step plus metrics on a precomputed affinity.
ClusteringReport cluster_affinity(const Matrix& affinity, const MultiViewDataset& data,
                                  const PipelineOptions& options);

/// Regularization weights used for the published benchmark datasets
/// (yale, extended-yaleb, orl, notting-hill, scene-15, mitindoor-67,
/// coil-20, caltech-101). Case-insensitive.
std::optional<double> dataset_lambda(std::string_view name);

nlohmann::json to_json(const SolverConfig& config);
nlohmann::json to_json(const ConvergenceTrace& trace);
nlohmann::json to_json(const MetricsReport& metrics);
/// `include_timing = false` drops wall-clock fields so that reports of
/// identical runs compare byte-for-byte.
nlohmann::json to_json(const ClusteringReport& report, bool include_timing = true);

}  // namespace tmsc
