#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmsc/solver.hpp"

namespace tmsc {

/// Dataset description stored as JSON:
///   {"views": ["x1.csv", ...], "names": [...], "labels": "labels.csv", "clusters": K}
/// Relative paths resolve against the manifest's directory.
struct Manifest {
  std::vector<std::filesystem::path> views;
  std::vector<std::string> names;
  std::optional<std::filesystem::path> labels;
  int clusters = 0;
};

/// Rows of comma-separated decimals; every row must have the same width.
Matrix read_csv_matrix(const std::filesystem::path& path);
void write_csv_matrix(const std::filesystem::path& path, const Matrix& m);

/// One integer per line.
std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, std::span<const int> labels);

Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

/// Loads and validates every view (shared N) and the labels (values in 1..K).
MultiViewDataset load_dataset(const std::filesystem::path& manifest_path);

/// Writes view_<v>.csv, labels.csv (when present) and manifest.json into dir;
/// returns the manifest path.
std::filesystem::path save_dataset(const std::filesystem::path& dir, const MultiViewDataset& data);

/// Tensor debug format: n1, n2, n3 on three lines, then the frontal slices in
/// order, each as n1 CSV rows of n2 values.
Tensor3 read_tensor(const std::filesystem::path& path);
void write_tensor(const std::filesystem::path& path, const Tensor3& t);

}  // namespace tmsc
