#include "tmsc/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "tmsc/spectral.hpp"

namespace tmsc {

SolverResult lrr(const Matrix& x, double lambda, SolverConfig base) {
  MultiViewDataset single;
  single.views.push_back(x);
  base.lambda = lambda;
  base.rotated = false;
  return solve(single, base);
}

NaiveMultiviewResult naive_multiview(const MultiViewDataset& data, std::span<const double> lambdas,
                                     SolverConfig base) {
  data.validate();
  if (static_cast<Index>(lambdas.size()) != data.view_count()) {
    throw std::invalid_argument("naive_multiview: need one lambda per view");
  }
  NaiveMultiviewResult out;
  std::vector<Matrix> zs;
  for (std::size_t v = 0; v < data.views.size(); ++v) {
    out.per_view.push_back(lrr(data.views[v], lambdas[v], base));
    zs.push_back(out.per_view.back().Z.front());
  }
  out.affinity = fuse_affinity(zs);
  return out;
}

double median_pairwise_distance(const Matrix& x) {
  const Index n = x.cols();
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i) d.push_back((x.col(i) - x.col(j)).norm());
  if (d.empty()) return 0.0;
  const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  if (d.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(d.begin(), mid);
  return 0.5 * (lower + upper);
}

Matrix spc_affinity(const Matrix& x, std::optional<double> sigma) {
  const double s = sigma ? *sigma : median_pairwise_distance(x);
  if (!(s > 0.0)) throw std::invalid_argument("spc_affinity: sigma must be positive");
  const Index n = x.cols();
  Matrix a = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < j; ++i) {
      a(i, j) = a(j, i) = std::exp(-(x.col(i) - x.col(j)).squaredNorm() / (2.0 * s * s));
    }
  }
  return a;
}

SolverResult ut_svd_msc(const MultiViewDataset& data, SolverConfig config) {
  config.rotated = false;
  return solve(data, config);
}

}  // namespace tmsc
