#include "tmsc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "tmsc/tsvd.hpp"

namespace tmsc {

void MultiViewDataset::validate() const {
  if (views.empty()) throw std::invalid_argument("dataset has no views");
  const Index n = samples();
  if (n < 1) throw ShapeError("dataset has no samples");
  for (std::size_t v = 0; v < views.size(); ++v) {
    if (views[v].rows() < 1) throw ShapeError("view " + std::to_string(v + 1) + " is empty");
    if (!views[v].allFinite()) {
      throw std::invalid_argument("view " + std::to_string(v + 1) + " has non-finite entries");
    }
    if (views[v].cols() != n) {
      throw ShapeError("view " + std::to_string(v + 1) + " has " +
                       std::to_string(views[v].cols()) + " samples, view 1 has " +
                       std::to_string(n));
    }
  }
  if (labels) {
    if (static_cast<Index>(labels->size()) != n) {
      throw ShapeError("labels length " + std::to_string(labels->size()) +
                       " does not match sample count " + std::to_string(n));
    }
    for (int l : *labels) {
      if (l < 1 || l > clusters) {
        throw std::invalid_argument("label " + std::to_string(l) + " outside 1.." +
                                    std::to_string(clusters));
      }
    }
  }
}

void SolverConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("solver config: " + what); };
  if (!(lambda >= 0.0)) fail("lambda must be nonnegative");
  if (!(mu0 > 0.0)) fail("mu0 must be positive");
  if (!(rho0 > 0.0)) fail("rho0 must be positive");
  if (!(eta > 1.0)) fail("eta must exceed 1");
  if (!(mu_max >= mu0)) fail("mu_max must be at least mu0");
  if (!(rho_max >= rho0)) fail("rho_max must be at least rho0");
  if (!(epsilon >= 0.0)) fail("epsilon must be nonnegative");
  if (max_iters < 1) fail("max_iters must be at least 1");
}

MultiViewProblem::MultiViewProblem(const MultiViewDataset& data, SolverConfig config)
    : data_(&data), config_(config) {
  data.validate();
  config_.validate();
  for (const auto& x : data.views) {
    gram_.push_back(x.transpose() * x);
    offsets_.push_back(total_rows_);
    total_rows_ += x.rows();
  }
}

Tensor3 MultiViewProblem::assemble(const std::vector<Matrix>& per_view) const {
  const Index n = samples(), nv = view_count();
  if (static_cast<Index>(per_view.size()) != nv) throw ShapeError("assemble: wrong view count");
  if (!config_.rotated) {
    return Tensor3::from_slices(per_view);
  }
  Tensor3 t(n, nv, n);
  for (Index i = 0; i < n; ++i)
    for (Index v = 0; v < nv; ++v) {
      const Matrix& z = per_view[static_cast<std::size_t>(v)];
      for (Index j = 0; j < n; ++j) t(j, v, i) = z(i, j);
    }
  return t;
}

Matrix MultiViewProblem::view_slice(const Tensor3& t, Index v) const {
  if (!config_.rotated) return t.slice(v);
  const Index n = samples();
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = t(j, v, i);
  return m;
}

SolverState MultiViewProblem::initial_state(const std::vector<Matrix>* warm_start) const {
  const Index n = samples();
  SolverState s;
  s.Z.assign(static_cast<std::size_t>(view_count()), Matrix::Zero(n, n));
  s.E = Matrix::Zero(total_rows_, n);
  for (const auto& x : data_->views) s.Y.push_back(Matrix::Zero(x.rows(), n));
  if (warm_start) {
    if (warm_start->size() != s.Z.size()) throw ShapeError("warm start: wrong view count");
    for (const auto& z : *warm_start) {
      if (z.rows() != n || z.cols() != n) throw ShapeError("warm start: Z must be N x N");
    }
    s.Z = *warm_start;
    s.G = assemble(s.Z);
  } else {
    s.G = assemble(s.Z);
  }
  s.W = Tensor3(s.G.n1(), s.G.n2(), s.G.n3());
  s.mu = config_.mu0;
  s.rho = config_.rho0;
  return s;
}

Matrix MultiViewProblem::residual(Index v, const SolverState& s) const {
  const auto vi = static_cast<std::size_t>(v);
  const Matrix& x = data_->views[vi];
  Matrix r = x - error_block(s.E, v);
  r.noalias() -= x * s.Z[vi];
  return r;
}

Matrix MultiViewProblem::update_z(Index v, const SolverState& s) const {
  const auto vi = static_cast<std::size_t>(v);
  const Matrix& x = data_->views[vi];
  const Index n = samples(), d = x.rows();
  const double c = s.mu / s.rho;

  Matrix rhs = view_slice(s.G, v);
  {
    Matrix b = s.Y[vi] + s.mu * (x - error_block(s.E, v));
    Matrix t = x.transpose() * b;
    t -= view_slice(s.W, v);
    rhs += t / s.rho;
  }

  // (I + c X^T X)^{-1}: via the d x d Woodbury form when the view is thin.
  if (d < n) {
    Matrix small = Matrix::Identity(d, d);
    small.noalias() += c * (x * x.transpose());
    const Eigen::LLT<Matrix> llt(small);
    if (llt.info() != Eigen::Success) throw NumericalError("update_z: factorization failed");
    Matrix xr = x * rhs;
    Matrix correction = x.transpose() * llt.solve(xr);
    return rhs - c * correction;
  }
  Matrix system = Matrix::Identity(n, n);
  system.noalias() += c * gram_[vi];
  const Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) throw NumericalError("update_z: factorization failed");
  return llt.solve(rhs);
}

Matrix MultiViewProblem::update_e(const SolverState& s) const {
  if (!(s.mu > 0.0)) throw std::invalid_argument("update_e: mu must be positive");
  const Index n = samples();
  Matrix d(total_rows_, n);
  for (Index v = 0; v < view_count(); ++v) {
    const auto vi = static_cast<std::size_t>(v);
    const Matrix& x = data_->views[vi];
    auto block = d.middleRows(offsets_[vi], x.rows());
    block = x + s.Y[vi] / s.mu;
    block.noalias() -= x * s.Z[vi];
  }
  const double threshold = config_.lambda / s.mu;
  for (Index i = 0; i < n; ++i) {
    const double norm = d.col(i).norm();
    if (norm > threshold) {
      d.col(i) *= (norm - threshold) / norm;
    } else {
      d.col(i).setZero();
    }
  }
  return d;
}

Tensor3 MultiViewProblem::update_g(const SolverState& s) const {
  if (!(std::isfinite(s.rho) && s.rho > 0.0)) {
    throw NumericalError("update_g: rho is not a positive finite number");
  }
  Tensor3 f = assemble(s.Z);
  f += (1.0 / s.rho) * s.W;
  return tubal_shrink(f, 1.0 / s.rho);
}

void MultiViewProblem::update_multipliers(SolverState& s) const {
  for (Index v = 0; v < view_count(); ++v) {
    s.Y[static_cast<std::size_t>(v)] += s.mu * residual(v, s);
  }
  Tensor3 gap = assemble(s.Z);
  gap -= s.G;
  s.W += s.rho * gap;
  s.mu = std::min(config_.eta * s.mu, config_.mu_max);
  s.rho = std::min(config_.eta * s.rho, config_.rho_max);
}

void MultiViewProblem::step(SolverState& s) const {
  for (Index v = 0; v < view_count(); ++v) {
    s.Z[static_cast<std::size_t>(v)] = update_z(v, s);
  }
  s.E = update_e(s);
  s.G = update_g(s);
  update_multipliers(s);
  ++s.iter;
}

namespace {
struct Residuals {
  double recon_mean = 0.0, match_mean = 0.0, recon_max = 0.0, match_max = 0.0;
};

Residuals compute_residuals(const MultiViewProblem& p, const SolverState& s,
                                   const auto& residual_fn) {
  Residuals r;
  const Index nv = p.view_count();
  for (Index v = 0; v < nv; ++v) {
    const double recon = residual_fn(v).cwiseAbs().maxCoeff();
    const double match =
        (s.Z[static_cast<std::size_t>(v)] - p.view_slice(s.G, v)).cwiseAbs().maxCoeff();
    r.recon_mean += recon / static_cast<double>(nv);
    r.match_mean += match / static_cast<double>(nv);
    r.recon_max = std::max(r.recon_max, recon);
    r.match_max = std::max(r.match_max, match);
  }
  return r;
}

}  // namespace

std::pair<double, double> MultiViewProblem::trace_errors(const SolverState& s) const {
  const auto r = compute_residuals(*this, s, [&](Index v) { return residual(v, s); });
  return {r.recon_mean, r.match_mean};
}

std::pair<double, double> MultiViewProblem::max_residuals(const SolverState& s) const {
  const auto r = compute_residuals(*this, s, [&](Index v) { return residual(v, s); });
  return {r.recon_max, r.match_max};
}

double MultiViewProblem::augmented_lagrangian(const SolverState& s) const {
  double value = config_.lambda * s.E.colwise().norm().sum() + ttnn(s.G);
  for (Index v = 0; v < view_count(); ++v) {
    const Matrix r = residual(v, s);
    value += (s.Y[static_cast<std::size_t>(v)].array() * r.array()).sum() +
             0.5 * s.mu * r.squaredNorm();
  }
  Tensor3 gap = assemble(s.Z);
  gap -= s.G;
  value += (s.W.array() * gap.array()).sum() + 0.5 * s.rho * gap.array().square().sum();
  return value;
}

SolverResult MultiViewProblem::run(const std::vector<Matrix>* warm_start) const {
  const auto start = std::chrono::steady_clock::now();
  SolverResult result;
  SolverState s = initial_state(warm_start);
  for (int it = 1; it <= config_.max_iters; ++it) {
    TraceEntry entry;
    entry.iteration = it;
    entry.mu = s.mu;
    entry.rho = s.rho;
    try {
      step(s);
    } catch (const NumericalError& e) {
      throw NumericalError("iteration " + std::to_string(it) + ": " + e.what());
    }

    bool finite = s.E.allFinite() && s.G.array().isFinite().all();
    for (const auto& z : s.Z) finite = finite && z.allFinite();
    if (!finite) {
      throw NumericalError("solver diverged: non-finite iterate at iteration " + std::to_string(it));
    }

    const auto r = compute_residuals(*this, s, [&](Index v) { return residual(v, s); });
    entry.reconstruction_error = r.recon_mean;
    entry.match_error = r.match_mean;
    result.trace.push_back(entry);
    result.iterations = it;
    if (r.recon_max < config_.epsilon && r.match_max < config_.epsilon) {
      result.converged = true;
      break;
    }
  }
  result.Z = s.Z;
  result.state = std::move(s);
  result.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SolverResult solve(const MultiViewDataset& data, const SolverConfig& config,
                   const std::vector<Matrix>* warm_start) {
  return MultiViewProblem(data, config).run(warm_start);
}

}  // namespace tmsc
