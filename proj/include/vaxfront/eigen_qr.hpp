#pragma once

#include "vaxfront/model.hpp"

#include <complex>
#include <vector>

namespace vaxfront {

/// All eigenvalues of a real square matrix: diagonal balancing, reduction
/// to upper Hessenberg form by stabilized elimination, then Francis
/// double-shift QR. Throws NonConvergence once the total number of QR
/// sweeps exceeds 100 * N^2.
std::vector<std::complex<double>> hessenberg_qr_eigenvalues(const Matrix& a);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(const Matrix& a);

} // namespace vaxfront
