#include "tmsc/spectral.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace tmsc {

Matrix fuse_affinity(std::span<const Matrix> z) {
  if (z.empty()) throw std::invalid_argument("fuse_affinity: no coefficient matrices");
  const Index n = z.front().rows();
  Matrix a = Matrix::Zero(n, n);
  for (const auto& zv : z) {
    if (zv.rows() != n || zv.cols() != n) throw ShapeError("fuse_affinity: Z must be N x N");
    a += 0.5 * (zv.cwiseAbs() + zv.transpose().cwiseAbs());
  }
  return a / static_cast<double>(z.size());
}

void validate_affinity(const Matrix& a) {
  if (a.rows() != a.cols()) throw ShapeError("affinity must be square");
  if (!a.allFinite()) throw std::invalid_argument("affinity has non-finite entries");
  if ((a.array() < 0.0).any()) throw std::invalid_argument("affinity has negative entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("affinity is not symmetric");
  }
}

Matrix normalized_laplacian(const Matrix& a) {
  const Eigen::VectorXd inv_sqrt =
      (a.rowwise().sum().array() + 1e-12).rsqrt().matrix();
  Matrix l = -(inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal());
  l.diagonal().array() += 1.0;
  return l;
}

namespace {

double squared_distance_to_nearest(const Matrix& points, const Matrix& centers, Index row,
                                   Index n_centers, int* which = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  for (Index c = 0; c < n_centers; ++c) {
    const double d = (points.row(row) - centers.row(c)).squaredNorm();
    if (d < best) {
      best = d;
      if (which) *which = static_cast<int>(c);
    }
  }
  return best;
}

Matrix seed_plus_plus(const Matrix& points, int k, std::mt19937_64& rng) {
  const Index n = points.rows();
  Matrix centers(k, points.cols());
  std::uniform_int_distribution<Index> pick(0, n - 1);
  centers.row(0) = points.row(pick(rng));
  Eigen::VectorXd dist(n);
  for (Index i = 0; i < n; ++i) dist(i) = (points.row(i) - centers.row(0)).squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = dist.sum();
    Index chosen = pick(rng);
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      chosen = n - 1;
      for (Index i = 0; i < n; ++i) {
        target -= dist(i);
        if (target <= 0.0 && dist(i) > 0.0) {
          chosen = i;
          break;
        }
      }
    }
    centers.row(c) = points.row(chosen);
    for (Index i = 0; i < n; ++i) {
      dist(i) = std::min(dist(i), (points.row(i) - centers.row(c)).squaredNorm());
    }
  }
  return centers;
}

KMeansResult lloyd(const Matrix& points, Matrix centers, int max_iters) {
  const Index n = points.rows();
  const int k = static_cast<int>(centers.rows());
  std::vector<int> assign(static_cast<std::size_t>(n), -1);
  for (int it = 0; it < max_iters; ++it) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      int c = 0;
      squared_distance_to_nearest(points, centers, i, k, &c);
      if (assign[static_cast<std::size_t>(i)] != c) {
        assign[static_cast<std::size_t>(i)] = c;
        changed = true;
      }
    }
    if (!changed) break;

    Matrix sums = Matrix::Zero(k, points.cols());
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(assign[static_cast<std::size_t>(i)]) += points.row(i);
      ++counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      } else {
        // Empty cluster: move it onto the point farthest from its center.
        Index far = 0;
        double far_d = -1.0;
        for (Index i = 0; i < n; ++i) {
          const double d =
              (points.row(i) - centers.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centers.row(c) = points.row(far);
        assign[static_cast<std::size_t>(far)] = c;
      }
    }
  }
  KMeansResult r;
  r.objective = 0.0;
  for (Index i = 0; i < n; ++i) {
    int c = 0;
    r.objective += squared_distance_to_nearest(points, centers, i, k, &c);
    assign[static_cast<std::size_t>(i)] = c;
  }
  r.assignment = std::move(assign);
  r.centers = std::move(centers);
  return r;
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, const KMeansOptions& options) {
  const Index n = points.rows();
  if (k < 1) throw std::invalid_argument("kmeans: k must be positive");
  if (n < k) throw std::invalid_argument("kmeans: fewer points than clusters");
  if (options.restarts < 1) throw std::invalid_argument("kmeans: restarts must be positive");

  KMeansResult best;
  best.objective = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    KMeansResult run = lloyd(points, seed_plus_plus(points, k, rng), options.max_iters);
    if (run.objective < best.objective) {
      best = std::move(run);
      best.best_restart = r;
    }
  }
  return best;
}

SpectralResult spectral_cluster(const Matrix& affinity, const SpectralOptions& options) {
  validate_affinity(affinity);
  const Index n = affinity.rows();
  const int k = options.clusters;
  if (k < 1 || k > n) {
    throw std::invalid_argument("spectral_cluster: K=" + std::to_string(k) + " outside 1.." +
                                std::to_string(n));
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(normalized_laplacian(affinity));
  if (eig.info() != Eigen::Success) throw NumericalError("spectral_cluster: eigensolver failed");

  Matrix embedding = eig.eigenvectors().leftCols(k);
  for (Index i = 0; i < n; ++i) {
    const double norm = embedding.row(i).norm();
    if (norm > 0.0) embedding.row(i) /= norm;
  }

  const KMeansResult km =
      kmeans(embedding, k, {options.restarts, options.max_iters, options.seed});
  SpectralResult out;
  out.labels.reserve(static_cast<std::size_t>(n));
  for (int a : km.assignment) out.labels.push_back(a + 1);
  out.objective = km.objective;
  out.eigenvalues = eig.eigenvalues().head(k);
  return out;
}

}  // namespace tmsc
