#pragma once

#include "criticalflow/field.hpp"

namespace criticalflow {

SpectralField to_spectral(const PhysicalField& f);
/// Real part of the inverse transform; imaginary residue from a
/// non-Hermitian coefficient set is dropped.
PhysicalField to_physical(const SpectralField& f);

/// Multiplies each coefficient by (i k_axis)^order. Odd orders use the
/// wavevector with Nyquist components zeroed, so real fields stay real.
SpectralField derivative(const SpectralField& f, int axis, int order = 1);
/// Scalar f -> vector grad f.
SpectralField gradient(const SpectralField& f);
/// Vector v -> scalar div v.
SpectralField divergence(const SpectralField& v);
SpectralField laplacian(const SpectralField& f);
/// Componentwise multiplication by |k|^(2p) (p may be fractional).
SpectralField fractional_laplacian(const SpectralField& f, double p);
/// Zero mode mapped to zero; every other mode divided by -|k|^2.
SpectralField inverse_laplacian(const SpectralField& f);

/// Sets every mode outside the 2/3-rule set to zero.
SpectralField dealias(SpectralField f);

/// Pointwise product with 2/3-rule truncation before and after.
///
/// Both scalar, or equal component counts (componentwise), or one scalar
/// and one vector (scalar times each component).
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

/// (w . grad) f for a vector field w and scalar or vector f, dealiased.
SpectralField advect(const SpectralField& w, const SpectralField& f);

/// Largest |value| over all physical samples and components.
double max_abs(const SpectralField& f);
/// Pointwise Euclidean norm of a vector field, maximized over samples.
double max_pointwise_norm(const SpectralField& v);
/// Smallest physical sample of a scalar field.
double min_value(const SpectralField& f);

}  // namespace criticalflow
