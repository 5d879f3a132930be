#pragma once

#include <cstdint>
#include <span>

#include "criticalflow/fft.hpp"

// Per-mode and pointwise loops used by every field operation. Each kernel
// has a plain serial version, kept as the reference, and an OpenMP version.
// The unqualified names dispatch to the OpenMP version.
//
// Reductions in the OpenMP version sum fixed-size chunks and then add the
// chunk totals in order, so results do not depend on the thread count.

namespace criticalflow::kernels {

/// Real 2x2 matrix acting on a pair of per-mode coefficients.
struct Mat2 {
  double m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;
};

namespace serial {

void scale(std::span<Complex> u, double s);
void axpy(std::span<Complex> y, double s, std::span<const Complex> x);
void apply_multiplier(std::span<Complex> u, std::span<const double> m);
void pointwise_product(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out);
double sum_abs2(std::span<const Complex> u);
double weighted_sum_abs2(std::span<const Complex> u, std::span<const double> w);
double sum_real_conj_product(std::span<const Complex> a, std::span<const Complex> b);
double max_abs_real(std::span<const Complex> u);
// In-place Leray projection of the components v[0..dim) using wavevector k
// and its squared norm k2 (modes with k2 == 0 are left untouched).
void project_divergence_free(std::span<Complex> const* v, int dim,
                             std::span<const double> const* k, std::span<const double> k2);
// (b, w) <- M[shell] (b, w) per mode; modes with shell < 0 are zeroed.
void apply_block2(std::span<Complex> b, std::span<Complex> w, std::span<const std::int32_t> shell,
                  std::span<const Mat2> table);

}  // namespace serial

namespace parallel {

void scale(std::span<Complex> u, double s);
void axpy(std::span<Complex> y, double s, std::span<const Complex> x);
void apply_multiplier(std::span<Complex> u, std::span<const double> m);
void pointwise_product(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out);
double sum_abs2(std::span<const Complex> u);
double weighted_sum_abs2(std::span<const Complex> u, std::span<const double> w);
double sum_real_conj_product(std::span<const Complex> a, std::span<const Complex> b);
double max_abs_real(std::span<const Complex> u);
void project_divergence_free(std::span<Complex> const* v, int dim,
                             std::span<const double> const* k, std::span<const double> k2);
void apply_block2(std::span<Complex> b, std::span<Complex> w, std::span<const std::int32_t> shell,
                  std::span<const Mat2> table);

}  // namespace parallel

using parallel::apply_block2;
using parallel::apply_multiplier;
using parallel::axpy;
using parallel::max_abs_real;
using parallel::pointwise_product;
using parallel::project_divergence_free;
using parallel::scale;
using parallel::sum_abs2;
using parallel::sum_real_conj_product;
using parallel::weighted_sum_abs2;

}  // namespace criticalflow::kernels
