#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "tmsc/error.hpp"
#include "tmsc/fourier.hpp"
#include "tmsc/tensor.hpp"
#include "tmsc/tsvd.hpp"

namespace tmsc {
namespace {

Tensor3 tube_tensor(std::initializer_list<double> values) {
  Tensor3 t(1, 1, static_cast<Index>(values.size()));
  Index k = 0;
  for (double v : values) t(0, 0, k++) = v;
  return t;
}

TEST(Bcirc, TwoSliceScalarTube) {
  const Matrix m = bcirc(tube_tensor({2.0, 5.0}));
  Matrix expected(2, 2);
  expected << 2, 5, 5, 2;
  EXPECT_EQ(m, expected);
}

TEST(Bcirc, IdentityTensorGivesIdentity) {
  EXPECT_EQ(bcirc(tidentity(3, 4)), Matrix::Identity(12, 12));
}

TEST(Bcirc, MatchesDefinition) {
  std::mt19937_64 rng(11);
  for (Index n3 : {1, 2, 3, 5}) {
    const Tensor3 t = oracle::random_tensor(3, 2, n3, rng);
    EXPECT_EQ(bcirc(t), oracle::block_circulant(t));
  }
}

TEST(Bvec, StacksSlices) {
  const Matrix m = bvec(tube_tensor({1.0, -3.0}));
  ASSERT_EQ(m.rows(), 2);
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_EQ(m(1, 0), -3.0);
}

TEST(Bvec, FoldRoundTrip) {
  std::mt19937_64 rng(12);
  const Tensor3 t = oracle::random_tensor(4, 3, 5, rng);
  EXPECT_EQ(bvfold(bvec(t), 4, 3, 5), t);
}

TEST(Bvec, FoldRejectsWrongShape) {
  EXPECT_THROW(bvfold(Matrix::Zero(7, 3), 4, 3, 2), ShapeError);
}

TEST(Bdiag, DiagonalOfScalarTube) {
  const Matrix m = bdiag(tube_tensor({1.0, 4.0}));
  Matrix expected(2, 2);
  expected << 1, 0, 0, 4;
  EXPECT_EQ(m, expected);
}

TEST(Bdiag, FoldRoundTrip) {
  std::mt19937_64 rng(13);
  const Tensor3 t = oracle::random_tensor(2, 3, 4, rng);
  EXPECT_EQ(bdfold<double>(bdiag(t), 2, 3, 4), t);
}

TEST(Bdiag, FoldRejectsOffBlockEntries) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 3) = 1.0;
  EXPECT_THROW(bdfold<double>(m, 2, 2, 2), ShapeError);
}

TEST(Bdiag, FourierBlockNuclearNormMatchesCirculant) {
  // bcirc is block-diagonalized by the DFT, so the nuclear norms agree.
  std::mt19937_64 rng(14);
  const Tensor3 t = oracle::random_tensor(3, 3, 3, rng);
  const ComplexMatrix d = bdiag(oracle::naive_dft3(t));
  EXPECT_NEAR(oracle::nuclear_norm(d), oracle::nuclear_norm(oracle::block_circulant(t)), 1e-9);
}

TEST(TProduct, SingleSliceIsMatrixProduct) {
  std::mt19937_64 rng(21);
  const Tensor3 a = oracle::random_tensor(3, 4, 1, rng);
  const Tensor3 b = oracle::random_tensor(4, 2, 1, rng);
  const Matrix expected = a.slice(0) * b.slice(0);
  EXPECT_LT(oracle::rel_diff(Matrix(tproduct(a, b).slice(0)), expected), 1e-12);
}

TEST(TProduct, RightIdentity) {
  std::mt19937_64 rng(22);
  const Tensor3 x = oracle::random_tensor(3, 4, 5, rng);
  EXPECT_LT(oracle::rel_diff(tproduct(x, tidentity(4, 5)), x), 1e-12);
  EXPECT_LT(oracle::rel_diff(tproduct(tidentity(3, 5), x), x), 1e-12);
}

TEST(TProduct, MatchesCirculantOracle) {
  std::mt19937_64 rng(23);
  const Tensor3 x = oracle::random_tensor(4, 3, 5, rng);
  const Tensor3 y = oracle::random_tensor(3, 2, 5, rng);
  EXPECT_LT(oracle::rel_diff(tproduct(x, y), oracle::circulant_product(x, y)), 1e-10);
}

TEST(TProduct, RandomShapesAgreeWithCirculantOracle) {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<Index> dim(1, 5);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n1 = dim(rng), n2 = dim(rng), n4 = dim(rng), n3 = dim(rng);
    const Tensor3 x = oracle::random_tensor(n1, n2, n3, rng);
    const Tensor3 y = oracle::random_tensor(n2, n4, n3, rng);
    EXPECT_LT(oracle::rel_diff(tproduct(x, y), oracle::circulant_product(x, y)), 1e-10)
        << n1 << "x" << n2 << "x" << n3 << " * " << n2 << "x" << n4;
  }
}

TEST(TProduct, EntriesAreTubeConvolutions) {
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<Index> dim(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n1 = dim(rng), n2 = dim(rng), n4 = dim(rng);
    const Index n3 = dim(rng) + 1;
    const Tensor3 x = oracle::random_tensor(n1, n2, n3, rng);
    const Tensor3 y = oracle::random_tensor(n2, n4, n3, rng);
    EXPECT_LT(oracle::rel_diff(tproduct(x, y), oracle::convolution_product(x, y)), 1e-10);
  }
}

TEST(TProduct, Associative) {
  std::mt19937_64 rng(26);
  const Tensor3 a = oracle::random_tensor(2, 3, 4, rng);
  const Tensor3 b = oracle::random_tensor(3, 3, 4, rng);
  const Tensor3 c = oracle::random_tensor(3, 2, 4, rng);
  EXPECT_LT(oracle::rel_diff(tproduct(tproduct(a, b), c), tproduct(a, tproduct(b, c))), 1e-10);
}

TEST(TProduct, RejectsMismatchedShapes) {
  EXPECT_THROW(tproduct(Tensor3(2, 3, 4), Tensor3(2, 3, 4)), ShapeError);
  EXPECT_THROW(tproduct(Tensor3(2, 3, 4), Tensor3(3, 3, 5)), ShapeError);
}

TEST(TTranspose, SingleSliceIsMatrixTranspose) {
  std::mt19937_64 rng(31);
  const Tensor3 x = oracle::random_tensor(3, 5, 1, rng);
  EXPECT_EQ(Matrix(ttranspose(x).slice(0)), Matrix(x.slice(0).transpose()));
}

TEST(TTranspose, Involution) {
  std::mt19937_64 rng(32);
  const Tensor3 x = oracle::random_tensor(3, 2, 6, rng);
  EXPECT_EQ(ttranspose(ttranspose(x)), x);
}

TEST(TTranspose, CirculantOfTransposeIsTransposedCirculant) {
  std::mt19937_64 rng(33);
  const Tensor3 x = oracle::random_tensor(2, 4, 5, rng);
  EXPECT_EQ(bcirc(ttranspose(x)), Matrix(bcirc(x).transpose()));
}

TEST(TTranspose, ReversesProducts) {
  std::mt19937_64 rng(34);
  const Tensor3 a = oracle::random_tensor(2, 3, 4, rng);
  const Tensor3 b = oracle::random_tensor(3, 5, 4, rng);
  EXPECT_LT(oracle::rel_diff(ttranspose(tproduct(a, b)), tproduct(ttranspose(b), ttranspose(a))),
            1e-10);
}

TEST(TIdentity, FourierSlicesAreIdentity) {
  const ComplexTensor3 f = oracle::naive_dft3(tidentity(3, 4));
  for (Index k = 0; k < 4; ++k) {
    EXPECT_LT((ComplexMatrix(f.slice(k)) - ComplexMatrix::Identity(3, 3)).norm(), 1e-12);
  }
}

TEST(Rotate, ShapeAndFiber) {
  std::mt19937_64 rng(41);
  const Tensor3 z = oracle::random_tensor(5, 5, 3, rng);
  const Tensor3 r = rotate(z);
  ASSERT_EQ(r.n1(), 5);
  ASSERT_EQ(r.n2(), 3);
  ASSERT_EQ(r.n3(), 5);
  // The tube at (sample 2, view 1) is the self-representation column of
  // sample 2 in view 1.
  for (Index i = 0; i < 5; ++i) EXPECT_EQ(r(1, 0, i), z(i, 1, 0));
}

TEST(Rotate, RoundTripAndEntryMultiset) {
  std::mt19937_64 rng(42);
  const Tensor3 z = oracle::random_tensor(4, 6, 3, rng);
  const Tensor3 r = rotate(z);
  EXPECT_EQ(r.n1(), 6);
  EXPECT_EQ(r.n2(), 3);
  EXPECT_EQ(r.n3(), 4);
  EXPECT_EQ(unrotate(r), z);
  std::vector<double> a(z.values().begin(), z.values().end());
  std::vector<double> b(r.values().begin(), r.values().end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(Unfold, ModeOneLayout) {
  Tensor3 t(2, 2, 2);
  double v = 1.0;
  for (Index k = 0; k < 2; ++k)
    for (Index j = 0; j < 2; ++j)
      for (Index i = 0; i < 2; ++i) t(i, j, k) = v++;
  Matrix expected(2, 4);
  expected << 1, 3, 5, 7, 2, 4, 6, 8;
  EXPECT_EQ(unfold(t, 1), expected);
}

TEST(Unfold, FoldRoundTripAllModes) {
  std::mt19937_64 rng(43);
  const Tensor3 t = oracle::random_tensor(3, 4, 5, rng);
  for (int mode = 1; mode <= 3; ++mode) {
    const Matrix m = unfold(t, mode);
    EXPECT_EQ(m.rows(), mode == 1 ? 3 : mode == 2 ? 4 : 5);
    EXPECT_EQ(m.size(), t.size());
    EXPECT_EQ(fold(m, mode, 3, 4, 5), t);
  }
  EXPECT_THROW(unfold(t, 4), std::invalid_argument);
}

TEST(Unfold, RankOneOuterProduct) {
  std::mt19937_64 rng(44);
  const Matrix a = oracle::random_matrix(3, 1, rng), b = oracle::random_matrix(4, 1, rng),
               c = oracle::random_matrix(5, 1, rng);
  Tensor3 t(3, 4, 5);
  for (Index k = 0; k < 5; ++k)
    for (Index j = 0; j < 4; ++j)
      for (Index i = 0; i < 3; ++i) t(i, j, k) = a(i, 0) * b(j, 0) * c(k, 0);
  for (int mode = 1; mode <= 3; ++mode) {
    Eigen::JacobiSVD<Matrix> svd(unfold(t, mode));
    svd.setThreshold(1e-10);
    EXPECT_EQ(svd.rank(), 1) << "mode " << mode;
  }
}

TEST(Tensor3, ArithmeticRequiresMatchingShapes) {
  Tensor3 a(2, 2, 2), b(2, 2, 3);
  EXPECT_THROW(a += b, ShapeError);
  EXPECT_THROW(Tensor3(-1, 2, 2), ShapeError);
}

}  // namespace
}  // namespace tmsc
