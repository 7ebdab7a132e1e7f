#include "tmsc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace tmsc {

void SynthConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("synth: " + what); };
  if (views < 1) fail("views must be positive");
  if (clusters < 1) fail("clusters must be positive");
  if (per_cluster < 1) fail("per-cluster count must be positive");
  if (static_cast<int>(dims.size()) != views) fail("need one dimension per view");
  if (rank < 1) fail("rank must be positive");
  for (Index d : dims) {
    if (d < rank) fail("rank exceeds a view dimension");
  }
  if (!(noise >= 0.0)) fail("noise must be nonnegative");
  if (!(corrupt_fraction >= 0.0 && corrupt_fraction <= 1.0)) fail("corruption fraction outside [0, 1]");
  if (corrupt_view && (*corrupt_view < 0 || *corrupt_view >= views)) fail("corrupt view out of range");
}

MultiViewDataset synth(const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto gaussian = [&](Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
    return m;
  };

  const Index n = static_cast<Index>(config.clusters) * config.per_cluster;
  const Index r = config.rank;
  MultiViewDataset data;
  data.clusters = config.clusters;
  data.labels = std::vector<int>(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    (*data.labels)[static_cast<std::size_t>(j)] = static_cast<int>(j / config.per_cluster) + 1;
  }

  for (int v = 0; v < config.views; ++v) {
    const Index d = config.dims[static_cast<std::size_t>(v)];
    Matrix x(d, n);
    for (int k = 0; k < config.clusters; ++k) {
      const Eigen::HouseholderQR<Matrix> qr(gaussian(d, r));
      const Matrix basis = qr.householderQ() * Matrix::Identity(d, r);
      const Matrix block = basis * gaussian(r, config.per_cluster) +
                           config.noise * gaussian(d, config.per_cluster);
      x.middleCols(static_cast<Index>(k) * config.per_cluster, config.per_cluster) = block;
    }
    data.views.push_back(std::move(x));
    data.names.push_back("view" + std::to_string(v + 1));
  }

  if (config.corrupt_view && config.corrupt_fraction > 0.0) {
    Matrix& x = data.views[static_cast<std::size_t>(*config.corrupt_view)];
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    const auto count = static_cast<std::size_t>(std::llround(config.corrupt_fraction * static_cast<double>(n)));
    const double scale = std::sqrt(static_cast<double>(r) / static_cast<double>(x.rows()));
    for (std::size_t c = 0; c < count; ++c) {
      x.col(order[c]) = scale * gaussian(x.rows(), 1);
    }
  }
  return data;
}

}  // namespace tmsc
