#include "tmsc/fourier.hpp"

#include <fftw3.h>

#include <mutex>
#include <string>

namespace tmsc {
namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place transform of every mode-3 tube of t.
void transform_tubes(ComplexTensor3& t, int sign) {
  if (t.n3() <= 1 || t.size() == 0) return;
  const int tube_stride = static_cast<int>(t.n1() * t.n2());
  fftw_iodim dim{static_cast<int>(t.n3()), tube_stride, tube_stride};
  fftw_iodim batch{tube_stride, 1, 1};
  auto* buf = reinterpret_cast<fftw_complex*>(t.data());

  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_guru_dft(1, &dim, 1, &batch, buf, buf, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericalError("fft3: FFTW planning failed");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace

ComplexTensor3 fft3(const Tensor3& t) {
  ComplexTensor3 out(t.n1(), t.n2(), t.n3());
  out.array() = t.array().cast<Complex>();
  transform_tubes(out, FFTW_FORWARD);
  return out;
}

ComplexTensor3 fft3(const ComplexTensor3& t) {
  ComplexTensor3 out = t;
  transform_tubes(out, FFTW_FORWARD);
  return out;
}

ComplexTensor3 ifft3_complex(const ComplexTensor3& t) {
  ComplexTensor3 out = t;
  transform_tubes(out, FFTW_BACKWARD);
  if (t.n3() > 1) out *= Complex(1.0 / static_cast<double>(t.n3()), 0.0);
  return out;
}

Tensor3 ifft3(const ComplexTensor3& t) {
  const ComplexTensor3 c = ifft3_complex(t);
  Tensor3 out(c.n1(), c.n2(), c.n3());
  out.array() = c.array().real();
  const double imag = c.array().imag().matrix().norm();
  const double scale = c.array().matrix().norm();
  if (!(imag <= kRealCastTolerance * scale)) {
    throw NumericalError("ifft3: imaginary residue " + std::to_string(imag) +
                         " exceeds tolerance relative to norm " + std::to_string(scale));
  }
  return out;
}

void mirror_conjugate_slices(ComplexTensor3& t) {
  const Index n3 = t.n3();
  for (Index k = 1; k < independent_slices(n3); ++k) {
    const Index partner = conjugate_slice(k, n3);
    if (partner != k) t.slice(partner) = t.slice(k).conjugate();
  }
}

}  // namespace tmsc
