#pragma once

#include "tmsc/tensor.hpp"

namespace tmsc {

/// Relative tolerance on the imaginary residue when casting an inverse
/// transform back to a real tensor.
inline constexpr double kRealCastTolerance = 1e-10;

/// Unnormalized DFT along mode 3 (each tube X(i, j, :)).
ComplexTensor3 fft3(const Tensor3& t);
ComplexTensor3 fft3(const ComplexTensor3& t);

/// Inverse DFT along mode 3 (with the 1/n3 factor), complex result.
ComplexTensor3 ifft3_complex(const ComplexTensor3& t);

/// Inverse DFT along mode 3 cast to real. Throws NumericalError if the
/// imaginary part exceeds kRealCastTolerance relative to the result norm.
Tensor3 ifft3(const ComplexTensor3& t);

/// Index of the Fourier slice paired with k by conjugate symmetry.
inline Index conjugate_slice(Index k, Index n3) { return k == 0 ? 0 : n3 - k; }

/// Number of leading Fourier slices that determine a real tensor's spectrum.
inline Index independent_slices(Index n3) { return n3 / 2 + 1; }

/// True when slice k is its own conjugate partner (its Fourier slice is real).
inline bool self_conjugate(Index k, Index n3) { return conjugate_slice(k, n3) == k; }

/// Copy conj(slice k) into slice n3-k for every k in the leading half.
void mirror_conjugate_slices(ComplexTensor3& t);

}  // namespace tmsc
