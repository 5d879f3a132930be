#include "criticalflow/phi_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace criticalflow {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

template <class T>
T phi_generic(int k, T z) {
  if (k < 0) throw std::invalid_argument("phi index must be nonnegative");
  if (std::abs(z) < 2.0) {
    T sum{0.0};
    T term{1.0 / factorial(k)};
    for (int m = 0; m < 45; ++m) {
      sum += term;
      term *= z / static_cast<double>(m + k + 1);
    }
    return sum;
  }
  T p = std::exp(z);
  for (int j = 0; j < k; ++j) p = (p - 1.0 / factorial(j)) / z;
  return p;
}

}  // namespace

Complex phi_k(int k, Complex z) { return phi_generic<Complex>(k, z); }
double phi_k(int k, double z) { return phi_generic<double>(k, z); }

Complex divided_difference(const std::function<Complex(Complex)>& f, Complex z1, Complex z2) {
  if (std::abs(z1 - z2) >= 0.1) return (f(z1) - f(z2)) / (z1 - z2);
  constexpr int kPoints = 64;
  const Complex c = 0.5 * (z1 + z2);
  Complex sum{};
  for (int j = 0; j < kPoints; ++j) {
    const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * (j + 0.5) / kPoints);
    const Complex zeta = c + e;
    sum += f(zeta) * e / ((zeta - z1) * (zeta - z2));
  }
  return sum / static_cast<double>(kPoints);
}

std::pair<Complex, Complex> eigenvalues(const kernels::Mat2& a) {
  const double half_tr = 0.5 * (a.m00 + a.m11);
  const double det = a.m00 * a.m11 - a.m01 * a.m10;
  const Complex root = std::sqrt(Complex(half_tr * half_tr - det, 0.0));
  const Complex big = half_tr >= 0.0 ? half_tr + root : half_tr - root;
  if (big == Complex{}) return {Complex{}, Complex{}};
  return {big, det / big};
}

kernels::Mat2 matrix_phi(int k, const kernels::Mat2& a) {
  const auto [z1, z2] = eigenvalues(a);
  auto f = [k](Complex z) { return phi_k(k, z); };
  const Complex f1 = f(z1);
  const Complex dd = divided_difference(f, z1, z2);
  // f(A) = f(z1) I + f[z1,z2] (A - z1 I)
  const Complex d00 = f1 + dd * (a.m00 - z1);
  const Complex d11 = f1 + dd * (a.m11 - z1);
  return {d00.real(), (dd * a.m01).real(), (dd * a.m10).real(), d11.real()};
}

}  // namespace criticalflow
