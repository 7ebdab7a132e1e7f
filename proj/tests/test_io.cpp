#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "tmsc/baselines.hpp"
#include "tmsc/io.hpp"
#include "tmsc/spectral.hpp"
#include "tmsc/synth.hpp"

namespace tmsc {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tmsc_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

TEST_F(IoTest, CsvRoundTripIsExact) {
  std::mt19937_64 rng(1);
  Matrix m = oracle::random_matrix(4, 7, rng);
  m(0, 0) = 1e-300;
  m(1, 1) = -0.1;
  write_csv_matrix(dir_ / "m.csv", m);
  EXPECT_EQ(read_csv_matrix(dir_ / "m.csv"), m);
}

TEST_F(IoTest, CsvToleratesBlankLinesAndSpaces) {
  const Matrix m = read_csv_matrix(write("a.csv", "1, 2,3\n\n 4,5 ,6\r\n"));
  Matrix expected(2, 3);
  expected << 1, 2, 3, 4, 5, 6;
  EXPECT_EQ(m, expected);
}

TEST_F(IoTest, RaggedRowNamesFileAndLine) {
  const fs::path p = write("bad.csv", "1,2,3\n4,5\n");
  const std::string msg = error_of([&] { read_csv_matrix(p); });
  EXPECT_NE(msg.find("bad.csv:2:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("ragged"), std::string::npos) << msg;
}

TEST_F(IoTest, BadNumberNamesFileAndLine) {
  const fs::path p = write("bad.csv", "1,2\n3,x\n");
  const std::string msg = error_of([&] { read_csv_matrix(p); });
  EXPECT_NE(msg.find("bad.csv:2:"), std::string::npos) << msg;
  EXPECT_THROW(read_csv_matrix(dir_ / "missing.csv"), FormatError);
  EXPECT_THROW(read_csv_matrix(write("empty.csv", "\n\n")), FormatError);
}

TEST_F(IoTest, ToyManifestRoundTrip) {
  MultiViewDataset data;
  Matrix a(2, 3), b(1, 3);
  a << 1, 2, 3, 4, 5, 6;
  b << 0.5, -1, 2;
  data.views = {a, b};
  data.names = {"color", "shape"};
  data.labels = std::vector<int>{1, 2, 2};
  data.clusters = 2;
  const fs::path manifest = save_dataset(dir_ / "toy", data);
  const MultiViewDataset back = load_dataset(manifest);
  ASSERT_EQ(back.views.size(), 2u);
  EXPECT_EQ(back.views[0], a);
  EXPECT_EQ(back.views[1], b);
  EXPECT_EQ(back.names, data.names);
  EXPECT_EQ(back.labels, data.labels);
  EXPECT_EQ(back.clusters, 2);
}

TEST_F(IoTest, MismatchedSampleCountNamesBothViews) {
  write("v1.csv", "1,2,3\n");
  write("v2.csv", "1,2\n");
  const fs::path m =
      write("m.json", R"({"views": ["v1.csv", "v2.csv"], "names": ["left", "right"], "clusters": 2})");
  const std::string msg = error_of([&] { load_dataset(m); });
  EXPECT_NE(msg.find("left"), std::string::npos) << msg;
  EXPECT_NE(msg.find("right"), std::string::npos) << msg;
}

TEST_F(IoTest, LabelOutOfRangeNamesLine) {
  write("v1.csv", "1,2,3\n");
  write("labels.csv", "1\n2\n5\n");
  const fs::path m = write("m.json", R"({"views": ["v1.csv"], "labels": "labels.csv", "clusters": 2})");
  const std::string msg = error_of([&] { load_dataset(m); });
  EXPECT_NE(msg.find("labels.csv:3:"), std::string::npos) << msg;
}

TEST_F(IoTest, MalformedManifest) {
  EXPECT_THROW(read_manifest(write("a.json", "{not json")), FormatError);
  EXPECT_THROW(read_manifest(write("b.json", R"({"views": []  , "clusters": 2})")), FormatError);
  EXPECT_THROW(read_manifest(write("c.json", R"({"views": ["x.csv"]})")), FormatError);
}

TEST_F(IoTest, SyntheticDatasetLoadsBackEqual) {
  SynthConfig sc;
  sc.clusters = 3;
  sc.per_cluster = 5;
  sc.dims = {6, 7, 8};
  sc.rank = 2;
  sc.seed = 4;
  const MultiViewDataset data = synth(sc);
  const MultiViewDataset back = load_dataset(save_dataset(dir_ / "synth", data));
  for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(back.views[v], data.views[v]);
  EXPECT_EQ(back.labels, data.labels);
}

TEST_F(IoTest, TensorRoundTripAndErrors) {
  std::mt19937_64 rng(5);
  const Tensor3 t = oracle::random_tensor(3, 2, 4, rng);
  write_tensor(dir_ / "t.txt", t);
  EXPECT_EQ(read_tensor(dir_ / "t.txt"), t);
  EXPECT_THROW(read_tensor(write("short.txt", "2\n2\n2\n1,2\n3,4\n5,6\n")), FormatError);
  const std::string msg =
      error_of([&] { read_tensor(write("wide.txt", "1\n2\n1\n1,2,3\n")); });
  EXPECT_NE(msg.find("wide.txt:4:"), std::string::npos) << msg;
}

TEST(Synth, NoiselessRankOneClustersLieOnLines) {
  SynthConfig sc;
  sc.views = 2;
  sc.dims = {5, 6};
  sc.clusters = 2;
  sc.per_cluster = 6;
  sc.rank = 1;
  sc.noise = 0.0;
  const MultiViewDataset data = synth(sc);
  for (const auto& x : data.views)
    for (Index k = 0; k < 2; ++k) {
      Eigen::JacobiSVD<Matrix> svd(Matrix(x.middleCols(6 * k, 6)));
      svd.setThreshold(1e-10);
      EXPECT_EQ(svd.rank(), 1);
    }
}

TEST(Synth, SeedDeterminesDataset) {
  SynthConfig sc;
  sc.seed = 7;
  const MultiViewDataset a = synth(sc), b = synth(sc);
  for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(a.views[v], b.views[v]);
  sc.seed = 8;
  EXPECT_NE(synth(sc).views[0], a.views[0]);
  EXPECT_EQ(a.labels->size(), 200u);
  EXPECT_EQ(a.labels->front(), 1);
  EXPECT_EQ(a.labels->back(), 5);
}

TEST(Synth, CorruptionReplacesRequestedFraction) {
  SynthConfig sc;
  sc.seed = 9;
  const MultiViewDataset clean = synth(sc);
  sc.corrupt_view = 1;
  sc.corrupt_fraction = 0.5;
  const MultiViewDataset dirty = synth(sc);
  EXPECT_EQ(dirty.views[0], clean.views[0]);
  EXPECT_EQ(dirty.views[2], clean.views[2]);
  int changed = 0;
  for (Index j = 0; j < 200; ++j) changed += dirty.views[1].col(j) != clean.views[1].col(j);
  EXPECT_EQ(changed, 100);
}

TEST(Synth, RejectsInvalidConfig) {
  SynthConfig sc;
  sc.dims = {30, 40};
  EXPECT_THROW(synth(sc), std::invalid_argument);
  sc = {};
  sc.rank = 31;
  EXPECT_THROW(synth(sc), std::invalid_argument);
  sc = {};
  sc.corrupt_view = 3;
  EXPECT_THROW(synth(sc), std::invalid_argument);
}

// Low noise on well-separated subspaces: single-view LRR puts almost all
// affinity mass inside the true clusters.
TEST(Synth, LowNoiseLrrAffinityIsBlockConcentrated) {
  SynthConfig sc;
  sc.views = 1;
  sc.clusters = 3;
  sc.per_cluster = 20;
  sc.dims = {60};
  sc.rank = 3;
  sc.noise = 0.01;
  sc.seed = 10;
  const MultiViewDataset data = synth(sc);
  const SolverResult r = lrr(data.views[0], 1.0);
  const std::vector<Matrix> z{r.Z[0]};
  const Matrix a = fuse_affinity(z);
  double inside = 0.0;
  for (Index i = 0; i < 60; ++i)
    for (Index j = 0; j < 60; ++j)
      if ((*data.labels)[static_cast<std::size_t>(i)] == (*data.labels)[static_cast<std::size_t>(j)]) inside += a(i, j);
  EXPECT_GE(inside / a.sum(), 0.95);
}

}  // namespace
}  // namespace tmsc
