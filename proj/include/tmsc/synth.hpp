#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tmsc/solver.hpp"

namespace tmsc {

/// Union-of-subspaces generator with one cluster assignment shared by all views.
struct SynthConfig {
  int views = 3;
  int clusters = 5;
  int per_cluster = 40;
  std::vector<Index> dims{30, 40, 50};
  int rank = 4;
  double noise = 0.01;
  std::optional<int> corrupt_view;  // 0-based
  double corrupt_fraction = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Column j of view v is B_{k,v} c + noise * e for its cluster k, with B a
/// random orthonormal d_v x r basis, c ~ N(0, I_r), e ~ N(0, I). Samples are
/// ordered cluster by cluster. Corruption overwrites a random subset of one
/// view's columns with isotropic Gaussian noise of matching expected energy.
MultiViewDataset synth(const SynthConfig& config);

}  // namespace tmsc
