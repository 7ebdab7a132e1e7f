#include "tmsc/tensor.hpp"

#include "tmsc/fourier.hpp"

#include <string>

namespace tmsc {

Matrix bcirc(const Tensor3& t) {
  const Index n1 = t.n1(), n2 = t.n2(), n3 = t.n3();
  Matrix out(n1 * n3, n2 * n3);
  for (Index r = 0; r < n3; ++r) {
    for (Index c = 0; c < n3; ++c) {
      out.block(r * n1, c * n2, n1, n2) = t.slice(((r - c) % n3 + n3) % n3);
    }
  }
  return out;
}

Matrix bvec(const Tensor3& t) {
  Matrix out(t.n1() * t.n3(), t.n2());
  for (Index k = 0; k < t.n3(); ++k) out.middleRows(k * t.n1(), t.n1()) = t.slice(k);
  return out;
}

Tensor3 bvfold(const Matrix& m, Index n1, Index n2, Index n3) {
  if (m.rows() != n1 * n3 || m.cols() != n2) {
    throw ShapeError("bvfold: matrix is " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", expected " + std::to_string(n1 * n3) +
                     "x" + std::to_string(n2));
  }
  Tensor3 out(n1, n2, n3);
  for (Index k = 0; k < n3; ++k) out.slice(k) = m.middleRows(k * n1, n1);
  return out;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> bdiag(const BasicTensor3<Scalar>& t) {
  using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  M out = M::Zero(t.n1() * t.n3(), t.n2() * t.n3());
  for (Index k = 0; k < t.n3(); ++k) {
    out.block(k * t.n1(), k * t.n2(), t.n1(), t.n2()) = t.slice(k);
  }
  return out;
}

template <typename Scalar>
BasicTensor3<Scalar> bdfold(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                            Index n1, Index n2, Index n3) {
  if (m.rows() != n1 * n3 || m.cols() != n2 * n3) {
    throw ShapeError("bdfold: matrix shape does not match n1*n3 x n2*n3");
  }
  BasicTensor3<Scalar> out(n1, n2, n3);
  for (Index r = 0; r < n3; ++r) {
    for (Index c = 0; c < n3; ++c) {
      auto block = m.block(r * n1, c * n2, n1, n2);
      if (r == c) {
        out.slice(r) = block;
      } else if (!block.isZero(0.0)) {
        throw ShapeError("bdfold: nonzero entries outside the diagonal blocks");
      }
    }
  }
  return out;
}

template Matrix bdiag(const Tensor3&);
template ComplexMatrix bdiag(const ComplexTensor3&);
template Tensor3 bdfold(const Matrix&, Index, Index, Index);
template ComplexTensor3 bdfold(const ComplexMatrix&, Index, Index, Index);

Tensor3 tproduct(const Tensor3& x, const Tensor3& y) {
  if (x.n2() != y.n1() || x.n3() != y.n3()) {
    throw ShapeError("tproduct: cannot multiply " + std::to_string(x.n1()) + "x" +
                     std::to_string(x.n2()) + "x" + std::to_string(x.n3()) + " by " +
                     std::to_string(y.n1()) + "x" + std::to_string(y.n2()) + "x" +
                     std::to_string(y.n3()));
  }
  const Index n3 = x.n3();
  if (n3 == 1) {
    Tensor3 out(x.n1(), y.n2(), 1);
    out.slice(0).noalias() = x.slice(0) * y.slice(0);
    return out;
  }
  const ComplexTensor3 xf = fft3(x);
  const ComplexTensor3 yf = fft3(y);
  ComplexTensor3 mf(x.n1(), y.n2(), n3);
  for (Index k = 0; k < independent_slices(n3); ++k) {
    mf.slice(k).noalias() = xf.slice(k) * yf.slice(k);
  }
  mirror_conjugate_slices(mf);
  return ifft3(mf);
}

Tensor3 ttranspose(const Tensor3& x) {
  const Index n3 = x.n3();
  Tensor3 out(x.n2(), x.n1(), n3);
  for (Index k = 0; k < n3; ++k) {
    out.slice(k) = x.slice(conjugate_slice(k, n3)).transpose();
  }
  return out;
}

Tensor3 tidentity(Index n, Index n3) {
  Tensor3 out(n, n, n3);
  out.slice(0).setIdentity();
  return out;
}

Tensor3 rotate(const Tensor3& z) {
  Tensor3 out(z.n2(), z.n3(), z.n1());
  for (Index v = 0; v < z.n3(); ++v)
    for (Index j = 0; j < z.n2(); ++j)
      for (Index i = 0; i < z.n1(); ++i) out(j, v, i) = z(i, j, v);
  return out;
}

Tensor3 unrotate(const Tensor3& r) {
  Tensor3 out(r.n3(), r.n1(), r.n2());
  for (Index v = 0; v < out.n3(); ++v)
    for (Index j = 0; j < out.n2(); ++j)
      for (Index i = 0; i < out.n1(); ++i) out(i, j, v) = r(j, v, i);
  return out;
}

Matrix unfold(const Tensor3& t, int mode) {
  const Index n1 = t.n1(), n2 = t.n2(), n3 = t.n3();
  switch (mode) {
    case 1: {
      Matrix m(n1, n2 * n3);
      for (Index k = 0; k < n3; ++k) m.middleCols(k * n2, n2) = t.slice(k);
      return m;
    }
    case 2: {
      Matrix m(n2, n1 * n3);
      for (Index k = 0; k < n3; ++k) m.middleCols(k * n1, n1) = t.slice(k).transpose();
      return m;
    }
    case 3: {
      Matrix m(n3, n1 * n2);
      for (Index k = 0; k < n3; ++k)
        for (Index j = 0; j < n2; ++j)
          for (Index i = 0; i < n1; ++i) m(k, i + n1 * j) = t(i, j, k);
      return m;
    }
    default:
      throw ShapeError("unfold: mode must be 1, 2 or 3");
  }
}

Tensor3 fold(const Matrix& m, int mode, Index n1, Index n2, Index n3) {
  Tensor3 t(n1, n2, n3);
  auto check = [&](Index rows, Index cols) {
    if (m.rows() != rows || m.cols() != cols) throw ShapeError("fold: matrix shape mismatch");
  };
  switch (mode) {
    case 1:
      check(n1, n2 * n3);
      for (Index k = 0; k < n3; ++k) t.slice(k) = m.middleCols(k * n2, n2);
      break;
    case 2:
      check(n2, n1 * n3);
      for (Index k = 0; k < n3; ++k) t.slice(k) = m.middleCols(k * n1, n1).transpose();
      break;
    case 3:
      check(n3, n1 * n2);
      for (Index k = 0; k < n3; ++k)
        for (Index j = 0; j < n2; ++j)
          for (Index i = 0; i < n1; ++i) t(i, j, k) = m(k, i + n1 * j);
      break;
    default:
      throw ShapeError("fold: mode must be 1, 2 or 3");
  }
  return t;
}

}  // namespace tmsc
