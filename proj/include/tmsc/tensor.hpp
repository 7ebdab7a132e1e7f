#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tmsc/error.hpp"

namespace tmsc {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Dense third-order tensor of size n1 x n2 x n3.
///
/// Storage is slice-major: frontal slice k occupies a contiguous column-major
/// n1 x n2 block, so slice(k) is a zero-copy Eigen view.
template <typename Scalar>
class BasicTensor3 {
 public:
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using SliceMap = Eigen::Map<MatrixType>;
  using ConstSliceMap = Eigen::Map<const MatrixType>;

  BasicTensor3() = default;

  BasicTensor3(Index n1, Index n2, Index n3)
      : n1_(n1), n2_(n2), n3_(n3) {
    if (n1 < 0 || n2 < 0 || n3 < 0) {
      throw ShapeError("tensor dimensions must be nonnegative");
    }
    data_.assign(static_cast<std::size_t>(n1 * n2 * n3), Scalar(0));
  }

  static BasicTensor3 from_slices(std::span<const MatrixType> slices) {
    if (slices.empty()) throw ShapeError("from_slices: no slices");
    BasicTensor3 t(slices[0].rows(), slices[0].cols(),
                   static_cast<Index>(slices.size()));
    for (Index k = 0; k < t.n3(); ++k) {
      const auto& s = slices[static_cast<std::size_t>(k)];
      if (s.rows() != t.n1() || s.cols() != t.n2()) {
        throw ShapeError("from_slices: slice shapes differ");
      }
      t.slice(k) = s;
    }
    return t;
  }

  Index n1() const { return n1_; }
  Index n2() const { return n2_; }
  Index n3() const { return n3_; }
  Index size() const { return n1_ * n2_ * n3_; }
  bool same_shape(const BasicTensor3& o) const {
    return n1_ == o.n1_ && n2_ == o.n2_ && n3_ == o.n3_;
  }

  Scalar& operator()(Index i, Index j, Index k) {
    return data_[static_cast<std::size_t>(i + n1_ * (j + n2_ * k))];
  }
  const Scalar& operator()(Index i, Index j, Index k) const {
    return data_[static_cast<std::size_t>(i + n1_ * (j + n2_ * k))];
  }

  SliceMap slice(Index k) { return SliceMap(data_.data() + n1_ * n2_ * k, n1_, n2_); }
  ConstSliceMap slice(Index k) const {
    return ConstSliceMap(data_.data() + n1_ * n2_ * k, n1_, n2_);
  }

  std::span<Scalar> values() { return data_; }
  std::span<const Scalar> values() const { return data_; }
  Scalar* data() { return data_.data(); }
  const Scalar* data() const { return data_.data(); }

  /// Flat view of all entries, for elementwise algebra.
  Eigen::Map<Eigen::Array<Scalar, Eigen::Dynamic, 1>> array() {
    return {data_.data(), size()};
  }
  Eigen::Map<const Eigen::Array<Scalar, Eigen::Dynamic, 1>> array() const {
    return {data_.data(), size()};
  }

  double frobenius_norm() const { return array().matrix().norm(); }

  BasicTensor3& operator+=(const BasicTensor3& o) {
    require_same(o);
    array() += o.array();
    return *this;
  }
  BasicTensor3& operator-=(const BasicTensor3& o) {
    require_same(o);
    array() -= o.array();
    return *this;
  }
  BasicTensor3& operator*=(Scalar a) {
    array() *= a;
    return *this;
  }

  friend BasicTensor3 operator+(BasicTensor3 a, const BasicTensor3& b) { return a += b; }
  friend BasicTensor3 operator-(BasicTensor3 a, const BasicTensor3& b) { return a -= b; }
  friend BasicTensor3 operator*(Scalar s, BasicTensor3 a) { return a *= s; }

  bool operator==(const BasicTensor3&) const = default;

 private:
  void require_same(const BasicTensor3& o) const {
    if (!same_shape(o)) throw ShapeError("tensor shapes differ");
  }

  Index n1_ = 0;
  Index n2_ = 0;
  Index n3_ = 0;
  std::vector<Scalar> data_;
};

using Tensor3 = BasicTensor3<double>;
using ComplexTensor3 = BasicTensor3<Complex>;

// Block operators. Output block (r, c) of bcirc is slice (r - c) mod n3.
Matrix bcirc(const Tensor3& t);
Matrix bvec(const Tensor3& t);
Tensor3 bvfold(const Matrix& m, Index n1, Index n2, Index n3);

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> bdiag(const BasicTensor3<Scalar>& t);

/// Inverse of bdiag. Throws ShapeError if the matrix has nonzeros outside the
/// diagonal blocks.
template <typename Scalar>
BasicTensor3<Scalar> bdfold(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                            Index n1, Index n2, Index n3);

/// Tensor-tensor product: (n1 x n2 x n3) * (n2 x n4 x n3) -> n1 x n4 x n3,
/// evaluated slice-wise in the Fourier domain.
Tensor3 tproduct(const Tensor3& x, const Tensor3& y);

/// Transpose each frontal slice and reverse the order of slices 2..n3.
Tensor3 ttranspose(const Tensor3& x);

/// First frontal slice is the n x n identity, remaining slices zero.
Tensor3 tidentity(Index n, Index n3);

/// Rotation used by the multi-view solver: for Z of size a x b x c,
/// rotate(Z)(j, v, i) = Z(i, j, v), giving b x c x a. Self-representation
/// vectors (mode-1 fibers) become mode-3 tubes.
Tensor3 rotate(const Tensor3& z);
Tensor3 unrotate(const Tensor3& r);

/// Mode-m matricization (m in {1, 2, 3}); columns are mode-m fibers with the
/// remaining indices ordered lowest-first.
Matrix unfold(const Tensor3& t, int mode);
Tensor3 fold(const Matrix& m, int mode, Index n1, Index n2, Index n3);

}  // namespace tmsc
