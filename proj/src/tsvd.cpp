#include "tmsc/tsvd.hpp"

#include <algorithm>
#include <complex>
#include <string>

#include "tmsc/fourier.hpp"

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace tmsc {
namespace {

struct SliceSVD {
  ComplexMatrix U;
  Eigen::VectorXd s;
  ComplexMatrix V;
};

void require_finite(const Tensor3& x, const char* op) {
  if (!x.array().isFinite().all()) {
    throw NumericalError(std::string(op) + ": input contains non-finite values");
  }
}

// Fourier-slice SVD through LAPACK: divide and conquer first, the QR-based
// driver if that fails to converge. jobz is 'A' (full factors), 'S' (thin)
// or 'N' (values only).
SliceSVD lapack_svd(const Matrix& a, char jobz) {
  const lapack_int m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  const lapack_int p = std::min(m, n);
  const lapack_int ucols = jobz == 'A' ? m : jobz == 'S' ? p : 1;
  const lapack_int vtrows = jobz == 'A' ? n : jobz == 'S' ? p : 1;
  Matrix work = a, u(jobz == 'N' ? 1 : m, ucols), vt(vtrows, jobz == 'N' ? 1 : n);
  Eigen::VectorXd s(p);
  lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, jobz, m, n, work.data(), m, s.data(), u.data(),
                                   static_cast<lapack_int>(u.rows()), vt.data(),
                                   static_cast<lapack_int>(vt.rows()));
  if (info != 0 || !s.allFinite()) {
    work = a;
    Eigen::VectorXd superb(std::max<lapack_int>(p, 2));
    info = LAPACKE_dgesvd(LAPACK_COL_MAJOR, jobz, jobz, m, n, work.data(), m, s.data(), u.data(),
                          static_cast<lapack_int>(u.rows()), vt.data(),
                          static_cast<lapack_int>(vt.rows()), superb.data());
  }
  if (info != 0 || !s.allFinite()) throw NumericalError("SVD did not converge");
  SliceSVD out;
  out.s = s;
  if (jobz != 'N') {
    out.U = u.cast<Complex>();
    out.V = vt.transpose().cast<Complex>();
  }
  return out;
}

SliceSVD lapack_svd(const ComplexMatrix& a, char jobz) {
  const lapack_int m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  const lapack_int p = std::min(m, n);
  const lapack_int ucols = jobz == 'A' ? m : jobz == 'S' ? p : 1;
  const lapack_int vtrows = jobz == 'A' ? n : jobz == 'S' ? p : 1;
  ComplexMatrix work = a, u(jobz == 'N' ? 1 : m, ucols), vt(vtrows, jobz == 'N' ? 1 : n);
  Eigen::VectorXd s(p);
  lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, jobz, m, n, work.data(), m, s.data(), u.data(),
                                   static_cast<lapack_int>(u.rows()), vt.data(),
                                   static_cast<lapack_int>(vt.rows()));
  if (info != 0 || !s.allFinite()) {
    work = a;
    Eigen::VectorXd superb(std::max<lapack_int>(p, 2));
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, jobz, jobz, m, n, work.data(), m, s.data(), u.data(),
                          static_cast<lapack_int>(u.rows()), vt.data(),
                          static_cast<lapack_int>(vt.rows()), superb.data());
  }
  if (info != 0 || !s.allFinite()) throw NumericalError("SVD did not converge");
  SliceSVD out;
  out.s = s;
  if (jobz != 'N') {
    out.U = u;
    out.V = vt.adjoint();
  }
  return out;
}

// Self-conjugate Fourier slices of a real tensor are real matrices; solving
// them with a real SVD keeps the factors conjugate-symmetric so that the
// inverse transform lands back on real tensors.
SliceSVD slice_svd(const ComplexTensor3& xf, Index k, char jobz) {
  try {
    if (self_conjugate(k, xf.n3())) return lapack_svd(Matrix(xf.slice(k).real()), jobz);
    return lapack_svd(ComplexMatrix(xf.slice(k)), jobz);
  } catch (const NumericalError&) {
    throw NumericalError("SVD failed on Fourier slice " + std::to_string(k + 1));
  }
}

// Rebuilds every independent Fourier slice as U diag(g(s)) V^H, mirrors the
// rest and transforms back.
template <typename Gain>
Tensor3 rebuild_from_slice_svds(const Tensor3& x, Gain&& gain) {
  const Index n3 = x.n3();
  const ComplexTensor3 xf = fft3(x);
  ComplexTensor3 gf(x.n1(), x.n2(), n3);
  for (Index k = 0; k < independent_slices(n3); ++k) {
    const SliceSVD svd = slice_svd(xf, k, 'S');
    Eigen::VectorXd g = svd.s;
    for (Index i = 0; i < g.size(); ++i) g(i) = gain(svd.s(i), i);
    gf.slice(k).noalias() = svd.U * g.cast<Complex>().asDiagonal() * svd.V.adjoint();
  }
  mirror_conjugate_slices(gf);
  return ifft3(gf);
}

}  // namespace

TSVDFactors tsvd(const Tensor3& x) {
  require_finite(x, "tsvd");
  const Index n1 = x.n1(), n2 = x.n2(), n3 = x.n3();
  const ComplexTensor3 xf = fft3(x);
  ComplexTensor3 uf(n1, n1, n3), sf(n1, n2, n3), vf(n2, n2, n3);
  for (Index k = 0; k < independent_slices(n3); ++k) {
    const SliceSVD svd = slice_svd(xf, k, 'A');
    uf.slice(k) = svd.U;
    vf.slice(k) = svd.V;
    for (Index i = 0; i < svd.s.size(); ++i) sf(i, i, k) = svd.s(i);
  }
  mirror_conjugate_slices(uf);
  mirror_conjugate_slices(sf);
  mirror_conjugate_slices(vf);
  return {ifft3(uf), ifft3(sf), ifft3(vf)};
}

std::vector<Eigen::VectorXd> fourier_singular_values(const Tensor3& x) {
  require_finite(x, "fourier_singular_values");
  const Index n3 = x.n3();
  const ComplexTensor3 xf = fft3(x);
  std::vector<Eigen::VectorXd> out(static_cast<std::size_t>(n3));
  for (Index k = 0; k < independent_slices(n3); ++k) {
    out[static_cast<std::size_t>(k)] = slice_svd(xf, k, 'N').s;
  }
  for (Index k = independent_slices(n3); k < n3; ++k) {
    out[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(conjugate_slice(k, n3))];
  }
  return out;
}

double ttnn(const Tensor3& x) {
  double total = 0.0;
  for (const auto& s : fourier_singular_values(x)) total += s.sum();
  return total;
}

MultiRank multirank(const Tensor3& x, double tol) {
  if (tol < 0) throw std::invalid_argument("multirank: tolerance must be nonnegative");
  const auto sv = fourier_singular_values(x);
  double largest = 0.0;
  for (const auto& s : sv) {
    if (s.size() > 0) largest = std::max(largest, s.maxCoeff());
  }
  MultiRank r;
  r.ranks.reserve(sv.size());
  for (const auto& s : sv) {
    r.ranks.push_back(largest == 0.0 ? 0 : (s.array() > tol * largest).count());
  }
  return r;
}

Tensor3 truncate(const Tensor3& x, Index k) {
  if (k < 1 || k > std::min(x.n1(), x.n2())) {
    throw std::invalid_argument("truncate: k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(std::min(x.n1(), x.n2())) + "]");
  }
  require_finite(x, "truncate");
  return rebuild_from_slice_svds(x, [k](double s, Index i) { return i < k ? s : 0.0; });
}

Tensor3 tubal_shrink(const Tensor3& f, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tubal_shrink: tau must be positive");
  require_finite(f, "tubal_shrink");
  const double threshold = static_cast<double>(f.n3()) * tau;
  // Shrink factor (1 - threshold / s)_+ applied to s; zero singular values stay zero.
  return rebuild_from_slice_svds(f, [threshold](double s, Index) {
    return s > threshold ? s - threshold : 0.0;
  });
}

}  // namespace tmsc
