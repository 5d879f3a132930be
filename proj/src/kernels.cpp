#include "criticalflow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace criticalflow::kernels {

namespace {

constexpr std::ptrdiff_t kChunk = 8192;
constexpr std::ptrdiff_t kParallelMin = 16384;

void require_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel operands differ in length");
}

Complex apply_m(const Mat2& m, Complex b, Complex w, Complex& w_out) {
  w_out = m.m10 * b + m.m11 * w;
  return m.m00 * b + m.m01 * w;
}

template <class F>
double chunked_sum(std::ptrdiff_t n, F&& term) {
  const std::ptrdiff_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::ptrdiff_t lo = c * kChunk;
    const std::ptrdiff_t hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

namespace serial {

void scale(std::span<Complex> u, double s) {
  for (auto& x : u) x *= s;
}

void axpy(std::span<Complex> y, double s, std::span<const Complex> x) {
  require_size(y.size(), x.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

void apply_multiplier(std::span<Complex> u, std::span<const double> m) {
  require_size(u.size(), m.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= m[i];
}

void pointwise_product(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out) {
  require_size(a.size(), b.size());
  require_size(a.size(), out.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = Complex(a[i].real() * b[i].real(), 0.0);
}

double sum_abs2(std::span<const Complex> u) {
  double s = 0.0;
  for (const auto& x : u) s += std::norm(x);
  return s;
}

double weighted_sum_abs2(std::span<const Complex> u, std::span<const double> w) {
  require_size(u.size(), w.size());
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * std::norm(u[i]);
  return s;
}

double sum_real_conj_product(std::span<const Complex> a, std::span<const Complex> b) {
  require_size(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (std::conj(a[i]) * b[i]).real();
  return s;
}

double max_abs_real(std::span<const Complex> u) {
  double m = 0.0;
  for (const auto& x : u) m = std::max(m, std::abs(x.real()));
  return m;
}

void project_divergence_free(std::span<Complex> const* v, int dim,
                             std::span<const double> const* k, std::span<const double> k2) {
  const std::size_t n = k2.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (k2[i] == 0.0) continue;
    Complex kv{};
    for (int a = 0; a < dim; ++a) kv += k[a][i] * v[a][i];
    kv /= k2[i];
    for (int a = 0; a < dim; ++a) v[a][i] -= k[a][i] * kv;
  }
}

void apply_block2(std::span<Complex> b, std::span<Complex> w, std::span<const std::int32_t> shell,
                  std::span<const Mat2> table) {
  require_size(b.size(), w.size());
  require_size(b.size(), shell.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto s = shell[i];
    if (s < 0) {
      b[i] = w[i] = Complex{};
      continue;
    }
    Complex wn;
    b[i] = apply_m(table[static_cast<std::size_t>(s)], b[i], w[i], wn);
    w[i] = wn;
  }
}

}  // namespace serial

namespace parallel {

void scale(std::span<Complex> u, double s) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] *= s;
}

void axpy(std::span<Complex> y, double s, std::span<const Complex> x) {
  require_size(y.size(), x.size());
  const auto n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(i);
    y[j] += s * x[j];
  }
}

void apply_multiplier(std::span<Complex> u, std::span<const double> m) {
  require_size(u.size(), m.size());
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(i);
    u[j] *= m[j];
  }
}

void pointwise_product(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out) {
  require_size(a.size(), b.size());
  require_size(a.size(), out.size());
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(i);
    out[j] = Complex(a[j].real() * b[j].real(), 0.0);
  }
}

double sum_abs2(std::span<const Complex> u) {
  return chunked_sum(static_cast<std::ptrdiff_t>(u.size()),
                     [&](std::ptrdiff_t i) { return std::norm(u[static_cast<std::size_t>(i)]); });
}

double weighted_sum_abs2(std::span<const Complex> u, std::span<const double> w) {
  require_size(u.size(), w.size());
  return chunked_sum(static_cast<std::ptrdiff_t>(u.size()), [&](std::ptrdiff_t i) {
    const auto j = static_cast<std::size_t>(i);
    return w[j] * std::norm(u[j]);
  });
}

double sum_real_conj_product(std::span<const Complex> a, std::span<const Complex> b) {
  require_size(a.size(), b.size());
  return chunked_sum(static_cast<std::ptrdiff_t>(a.size()), [&](std::ptrdiff_t i) {
    const auto j = static_cast<std::size_t>(i);
    return (std::conj(a[j]) * b[j]).real();
  });
}

double max_abs_real(std::span<const Complex> u) {
  const auto n = static_cast<std::ptrdiff_t>(u.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) if (n >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    m = std::max(m, std::abs(u[static_cast<std::size_t>(i)].real()));
  return m;
}

void project_divergence_free(std::span<Complex> const* v, int dim,
                             std::span<const double> const* k, std::span<const double> k2) {
  const auto n = static_cast<std::ptrdiff_t>(k2.size());
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    if (k2[i] == 0.0) continue;
    Complex kv{};
    for (int a = 0; a < dim; ++a) kv += k[a][i] * v[a][i];
    kv /= k2[i];
    for (int a = 0; a < dim; ++a) v[a][i] -= k[a][i] * kv;
  }
}

void apply_block2(std::span<Complex> b, std::span<Complex> w, std::span<const std::int32_t> shell,
                  std::span<const Mat2> table) {
  require_size(b.size(), w.size());
  require_size(b.size(), shell.size());
  const auto n = static_cast<std::ptrdiff_t>(b.size());
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto s = shell[i];
    if (s < 0) {
      b[i] = w[i] = Complex{};
      continue;
    }
    Complex wn;
    b[i] = apply_m(table[static_cast<std::size_t>(s)], b[i], w[i], wn);
    w[i] = wn;
  }
}

}  // namespace parallel

}  // namespace criticalflow::kernels
