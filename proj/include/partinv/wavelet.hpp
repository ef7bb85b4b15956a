#pragma once

#include "partinv/types.hpp"

namespace partinv::wavelet {

/// Orthonormal 1D Haar basis, n a power of two.  Column layout follows the
/// full analysis pyramid: column 0 is the scaling function, columns
/// [2^p, 2^(p+1)) hold the 2^p wavelets of that scale, coarse to fine.
/// Column 2^p + k is supported on [k*n/2^p, (k+1)*n/2^p).
DenseMatrix haar_basis(Index n);

/// Periodized orthogonal filter-bank transform with the 10-tap Daubechies
/// filter (5 vanishing moments).
/// Analysis:  a[i] = sum_k h[k] x[(2i+k) mod n], same for d with g.
/// Synthesis is the exact adjoint, so the transform is orthonormal for any
/// even length.
void db5_analysis(const Vector& x, Vector& approx, Vector& detail);
void db5_synthesis(const Vector& approx, const Vector& detail, Vector& x);

/// Inverse 2D separable transform (Mallat pyramid) of a coefficient array:
/// coeff(0..s, 0..s) holds [LL | LH ; HL | HH] blocks recursively in the
/// top-left corner, `levels` deep.  Returns the reconstructed image.
DenseMatrix idwt2(const DenseMatrix& coeff, int levels);

/// 1024x1024 basis matrix whose column c*32+r is the image (vectorized
/// column-major) synthesized from the unit coefficient at (r, c) of a 5-level
/// decomposition of a 32x32 patch.
DenseMatrix basis_2d_db5_32();

/// The 49-set column grouping of the 32x32 / 5-level coefficient array:
/// set 0 is the 4x4 coarse block (approx + two coarsest detail scales,
/// 16 coefficients); sets 1..48 are 21-coefficient quadtrees (1+4+16) rooted
/// at the third-finest detail coefficients, ordered by orientation then
/// column-major root position.
SetPartition quadtree_partition_32();

}  // namespace partinv::wavelet
