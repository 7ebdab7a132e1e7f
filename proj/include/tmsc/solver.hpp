#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmsc/tensor.hpp"

namespace tmsc {

/// V feature matrices sharing a sample axis: view v is d_v x N, one column
/// per sample. Labels, when present, take values in 1..clusters.
struct MultiViewDataset {
  std::vector<Matrix> views;
  std::optional<std::vector<int>> labels;
  int clusters = 0;
  std::vector<std::string> names;

  Index samples() const { return views.empty() ? 0 : views.front().cols(); }
  Index view_count() const { return static_cast<Index>(views.size()); }

  /// Throws ShapeError / std::invalid_argument when the invariants fail.
  void validate() const;
};

struct SolverConfig {
  double lambda = 1.0;
  double mu0 = 1e-5;
  double rho0 = 1e-4;
  double eta = 2.0;
  double mu_max = 1e10;
  double rho_max = 1e10;
  double epsilon = 1e-7;
  int max_iters = 200;
  // Rotated N x V x N coefficient tensor; false keeps N x N x V.
  bool rotated = true;

  void validate() const;
};

/// All ADMM unknowns and multipliers. E stacks the per-view error blocks
/// vertically; G and W live in the solver's tensor layout (rotated or not).
struct SolverState {
  std::vector<Matrix> Z;
  Matrix E;
  std::vector<Matrix> Y;
  Tensor3 G;
  Tensor3 W;
  double mu = 0.0;
  double rho = 0.0;
  int iter = 0;
};

struct TraceEntry {
  int iteration = 0;
  double reconstruction_error = 0.0;
  double match_error = 0.0;
  double mu = 0.0;
  double rho = 0.0;

  bool operator==(const TraceEntry&) const = default;
};

using ConvergenceTrace = std::vector<TraceEntry>;

struct SolverResult {
  std::vector<Matrix> Z;
  ConvergenceTrace trace;
  bool converged = false;
  int iterations = 0;
  double solve_seconds = 0.0;
  SolverState state;
};

/// Multi-view self-representation problem solved by ADMM on the augmented
/// Lagrangian
///   lambda ||E||_{2,1} + ttnn(G)
///   + sum_v <Y_v, X_v - X_v Z_v - E_v> + mu/2 ||X_v - X_v Z_v - E_v||_F^2
///   + <W, Z - G> + rho/2 ||Z - G||_F^2,
/// where Z is the coefficient tensor assembled from the Z_v.
class MultiViewProblem {
 public:
  MultiViewProblem(const MultiViewDataset& data, SolverConfig config);

  const SolverConfig& config() const { return config_; }
  const MultiViewDataset& data() const { return *data_; }
  Index view_count() const { return data_->view_count(); }
  Index samples() const { return data_->samples(); }

  /// All-zero unknowns and multipliers, penalties at mu0 / rho0. A warm
  /// start replaces the initial Z_v (G is set to match).
  SolverState initial_state(const std::vector<Matrix>* warm_start = nullptr) const;

  /// Closed-form minimizer of the Lagrangian in Z_v with everything else fixed.
  Matrix update_z(Index v, const SolverState& s) const;
  /// Column-wise l2 shrinkage of the stacked residual D at lambda / mu.
  Matrix update_e(const SolverState& s) const;
  /// Tubal shrinkage of Z + W / rho at 1 / rho.
  Tensor3 update_g(const SolverState& s) const;
  /// Dual ascent on Y_v and W, then geometric penalty growth with clamping.
  void update_multipliers(SolverState& s) const;

  /// One full sweep: Z_v for every v, E, G, multipliers and penalties.
  void step(SolverState& s) const;

  /// Mean over views of the entrywise max-abs reconstruction / match residuals.
  std::pair<double, double> trace_errors(const SolverState& s) const;
  /// Max over views of the same residuals (the stopping test).
  std::pair<double, double> max_residuals(const SolverState& s) const;

  double augmented_lagrangian(const SolverState& s) const;

  SolverResult run(const std::vector<Matrix>* warm_start = nullptr) const;

  /// Coefficient tensor in the solver layout from per-view matrices, and back.
  Tensor3 assemble(const std::vector<Matrix>& per_view) const;
  Matrix view_slice(const Tensor3& t, Index v) const;

  /// Rows of E belonging to view v.
  auto error_block(const Matrix& E, Index v) const {
    return E.middleRows(offsets_[static_cast<std::size_t>(v)],
                        data_->views[static_cast<std::size_t>(v)].rows());
  }

 private:
  Matrix residual(Index v, const SolverState& s) const;

  const MultiViewDataset* data_;
  SolverConfig config_;
  std::vector<Matrix> gram_;  // X_v^T X_v
  std::vector<Index> offsets_;
  Index total_rows_ = 0;
};

/// Convenience wrapper: validates and solves.
SolverResult solve(const MultiViewDataset& data, const SolverConfig& config,
                   const std::vector<Matrix>* warm_start = nullptr);

}  // namespace tmsc
