#pragma once

#include <complex>
#include <functional>

#include "criticalflow/kernels.hpp"

namespace criticalflow {

/// phi_0(z) = e^z, phi_{k+1}(z) = (phi_k(z) - 1/k!) / z, extended to z = 0.
Complex phi_k(int k, Complex z);
double phi_k(int k, double z);

/// f[z1, z2], switching to a contour integral when the nodes are close.
Complex divided_difference(const std::function<Complex(Complex)>& f, Complex z1, Complex z2);

/// Eigenvalues of a real 2x2 matrix, the smaller one computed from the
/// determinant to avoid cancellation.
std::pair<Complex, Complex> eigenvalues(const kernels::Mat2& a);

/// phi_k(A) for a real 2x2 matrix A.
kernels::Mat2 matrix_phi(int k, const kernels::Mat2& a);

}  // namespace criticalflow
