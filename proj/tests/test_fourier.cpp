#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tmsc/error.hpp"
#include "tmsc/fourier.hpp"

namespace tmsc {
namespace {

double max_abs_diff(const ComplexTensor3& a, const ComplexTensor3& b) {
  return (a.array() - b.array()).abs().maxCoeff();
}

TEST(Fft3, SingleSliceIsIdentity) {
  std::mt19937_64 rng(1);
  const Tensor3 t = oracle::random_tensor(3, 4, 1, rng);
  const ComplexTensor3 f = fft3(t);
  for (Index j = 0; j < 4; ++j)
    for (Index i = 0; i < 3; ++i) {
      EXPECT_EQ(f(i, j, 0).real(), t(i, j, 0));
      EXPECT_EQ(f(i, j, 0).imag(), 0.0);
    }
}

TEST(Fft3, ConstantTubeLandsInSliceZero) {
  Tensor3 t(1, 1, 4);
  for (Index k = 0; k < 4; ++k) t(0, 0, k) = 2.5;
  const ComplexTensor3 f = fft3(t);
  EXPECT_NEAR(std::abs(f(0, 0, 0) - Complex(10.0, 0.0)), 0.0, 1e-14);
  for (Index k = 1; k < 4; ++k) EXPECT_NEAR(std::abs(f(0, 0, k)), 0.0, 1e-14);
}

TEST(Fft3, MatchesNaiveDft) {
  std::mt19937_64 rng(2);
  for (Index n3 : {1, 2, 3, 4, 7, 8}) {
    const Tensor3 t = oracle::random_tensor(2, 3, n3, rng);
    EXPECT_LT(max_abs_diff(fft3(t), oracle::naive_dft3(t)), 1e-12) << "n3=" << n3;
  }
}

TEST(Fft3, InverseRoundTrip) {
  std::mt19937_64 rng(3);
  for (Index n3 : {1, 2, 5, 6}) {
    const Tensor3 t = oracle::random_tensor(4, 3, n3, rng);
    EXPECT_LT(oracle::rel_diff(ifft3(fft3(t)), t), 1e-12);
  }
}

TEST(Fft3, Parseval) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<Index> dim(1, 6);
  for (int trial = 0; trial < 25; ++trial) {
    const Tensor3 t = oracle::random_tensor(dim(rng), dim(rng), dim(rng), rng);
    const ComplexTensor3 f = fft3(t);
    const double lhs = f.array().abs2().sum();
    const double rhs = static_cast<double>(t.n3()) * t.array().square().sum();
    EXPECT_NEAR(lhs, rhs, 1e-10 * rhs);
  }
}

TEST(Fft3, ConjugateSymmetryOfRealInput) {
  std::mt19937_64 rng(5);
  for (Index n3 : {4, 5}) {
    const Tensor3 t = oracle::random_tensor(2, 2, n3, rng);
    const ComplexTensor3 f = fft3(t);
    for (Index k = 0; k < n3; ++k) {
      const ComplexMatrix a = f.slice(k);
      const ComplexMatrix b = f.slice(conjugate_slice(k, n3));
      EXPECT_LT((a - b.conjugate()).norm(), 1e-12);
    }
  }
}

TEST(Fft3, ComplexOverloadAgreesWithRealOverload) {
  std::mt19937_64 rng(6);
  const Tensor3 t = oracle::random_tensor(3, 2, 5, rng);
  ComplexTensor3 c(3, 2, 5);
  for (Index i = 0; i < t.size(); ++i) c.data()[i] = t.data()[i];
  EXPECT_LT(max_abs_diff(fft3(c), fft3(t)), 1e-12);
  EXPECT_LT(max_abs_diff(ifft3_complex(fft3(c)), c), 1e-12);
}

TEST(Ifft3, RejectsGenuinelyComplexInput) {
  ComplexTensor3 f(1, 1, 4);
  f(0, 0, 1) = Complex(1.0, 0.0);  // no conjugate partner in slice 3
  EXPECT_THROW(ifft3(f), NumericalError);
}

TEST(Fourier, ConjugateSliceIndexing) {
  EXPECT_EQ(conjugate_slice(0, 6), 0);
  EXPECT_EQ(conjugate_slice(1, 6), 5);
  EXPECT_EQ(conjugate_slice(3, 6), 3);
  EXPECT_TRUE(self_conjugate(3, 6));
  EXPECT_FALSE(self_conjugate(2, 5));
  EXPECT_EQ(independent_slices(6), 4);
  EXPECT_EQ(independent_slices(5), 3);
}

TEST(Fourier, MirrorFillsUpperHalf) {
  std::mt19937_64 rng(7);
  const Tensor3 t = oracle::random_tensor(2, 3, 5, rng);
  const ComplexTensor3 full = fft3(t);
  ComplexTensor3 half = full;
  for (Index k = independent_slices(5); k < 5; ++k) half.slice(k).setZero();
  mirror_conjugate_slices(half);
  EXPECT_LT(max_abs_diff(half, full), 1e-14);
}

}  // namespace
}  // namespace tmsc
