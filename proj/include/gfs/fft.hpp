#pragma once

#include <vector>

#include "gfs/tensor.hpp"

namespace gfs {

// Per-channel unnormalised forward 2D DFT. Throws NumericError on non-finite
// input. The result carries the conjugate-symmetry flag.
ComplexTensor3 dft2(const RealTensor3& t);

// Inverse of dft2 (1/N^2 normalisation). The input must be the spectrum of
// real data: conjugate symmetry is verified within 1e-9 relative and a
// SymmetryError is thrown otherwise. The (tiny) imaginary residue of the
// inverse transform is discarded.
RealTensor3 idft2(const ComplexTensor3& t);

// Channel-summed circular cross-correlation of a against the filter w,
// computed as idft2 of sum_k conj(W^k) .* A^k. Equivalent to
//   R[u,v] = sum_k sum_{i,j} w[i,j,k] * a[(i+u) mod N, (j+v) mod N, k].
RealMatrix circ_correlate(const RealTensor3& a, const RealTensor3& w);

// Single-plane transforms used for response labels and maps.
std::vector<cplx> dft2_plane(const RealMatrix& m);
RealMatrix idft2_plane(const std::vector<cplx>& spectrum, int side);

} // namespace gfs
