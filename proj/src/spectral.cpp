#include "criticalflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "criticalflow/kernels.hpp"

namespace criticalflow {

namespace {

std::vector<Complex> samples_of(const SpectralField& f, int c) {
  auto src = f.component(c);
  std::vector<Complex> buf(src.begin(), src.end());
  f.grid().fft().backward(buf);
  return buf;
}

void into_coeffs(std::vector<Complex>& buf, const Grid& grid, std::span<Complex> dst) {
  grid.fft().forward(buf);
  const double inv = 1.0 / static_cast<double>(grid.modes());
  for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = buf[i] * inv;
}

void truncate(std::span<Complex> u, const Grid& g) {
  auto keep = g.retained();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!keep[i]) u[i] = Complex{};
}

}  // namespace

SpectralField to_spectral(const PhysicalField& f) {
  SpectralField out(f.grid(), f.components());
  std::vector<Complex> buf(f.grid().modes());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.component(c);
    std::ranges::transform(src, buf.begin(), [](double x) { return Complex(x, 0.0); });
    into_coeffs(buf, f.grid(), out.component(c));
  }
  return out;
}

PhysicalField to_physical(const SpectralField& f) {
  PhysicalField out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    auto buf = samples_of(f, c);
    auto dst = out.component(c);
    for (std::size_t i = 0; i < buf.size(); ++i) dst[i] = buf[i].real();
  }
  return out;
}

SpectralField derivative(const SpectralField& f, int axis, int order) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("derivative axis out of range");
  if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
  auto k = (order % 2 == 1) ? g.k_odd(axis) : g.k(axis);
  std::vector<Complex> symbol(g.modes());
  Complex ipow{1.0, 0.0};
  for (int o = 0; o < order; ++o) ipow *= Complex(0.0, 1.0);
  for (std::size_t i = 0; i < g.modes(); ++i) symbol[i] = ipow * std::pow(k[i], order);
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) {
    auto u = out.component(c);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] *= symbol[i];
  }
  return out;
}

SpectralField gradient(const SpectralField& f) {
  if (!f.is_scalar()) throw std::invalid_argument("gradient expects a scalar field");
  const Grid& g = f.grid();
  SpectralField out(g, g.dim());
  auto u = f.component(0);
  for (int a = 0; a < g.dim(); ++a) {
    auto k = g.k_odd(a);
    auto dst = out.component(a);
    for (std::size_t i = 0; i < u.size(); ++i) dst[i] = Complex(0.0, k[i]) * u[i];
  }
  return out;
}

SpectralField divergence(const SpectralField& v) {
  const Grid& g = v.grid();
  if (v.components() != g.dim()) throw std::invalid_argument("divergence expects a vector field");
  SpectralField out(g, 1);
  auto dst = out.component(0);
  for (int a = 0; a < g.dim(); ++a) {
    auto k = g.k_odd(a);
    auto u = v.component(a);
    for (std::size_t i = 0; i < u.size(); ++i) dst[i] += Complex(0.0, k[i]) * u[i];
  }
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  std::vector<double> m(g.k2().begin(), g.k2().end());
  for (auto& x : m) x = -x;
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) kernels::apply_multiplier(out.component(c), m);
  return out;
}

SpectralField fractional_laplacian(const SpectralField& f, double p) {
  const Grid& g = f.grid();
  std::vector<double> m(g.modes());
  auto k2 = g.k2();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = k2[i] == 0.0 ? 0.0 : std::pow(k2[i], p);
  if (p == 0.0) m[0] = 1.0;
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) kernels::apply_multiplier(out.component(c), m);
  return out;
}

SpectralField inverse_laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  std::vector<double> m(g.modes());
  auto k2 = g.k2();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = k2[i] == 0.0 ? 0.0 : -1.0 / k2[i];
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) kernels::apply_multiplier(out.component(c), m);
  return out;
}

SpectralField dealias(SpectralField f) {
  for (int c = 0; c < f.components(); ++c) truncate(f.component(c), f.grid());
  return f;
}

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  const int cf = f.components();
  const int cg = g.components();
  if (cf != cg && cf != 1 && cg != 1)
    throw std::invalid_argument("dealiased_product: incompatible component counts");
  const Grid& grid = f.grid();
  const SpectralField fd = dealias(f);
  const SpectralField gd = dealias(g);
  const int cout = std::max(cf, cg);
  SpectralField out(grid, cout);
  std::vector<Complex> fs, gs, prod(grid.modes());
  for (int c = 0; c < cout; ++c) {
    if (c < cf) fs = samples_of(fd, c);
    if (c < cg) gs = samples_of(gd, c);
    kernels::pointwise_product(fs, gs, prod);
    into_coeffs(prod, grid, out.component(c));
  }
  return dealias(std::move(out));
}

SpectralField advect(const SpectralField& w, const SpectralField& f) {
  require_same_grid(w, f);
  const Grid& grid = w.grid();
  const int d = grid.dim();
  if (w.components() != d) throw std::invalid_argument("advect expects a vector velocity");
  const SpectralField wd = dealias(w);
  const SpectralField fd = dealias(f);
  std::vector<std::vector<Complex>> ws(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) ws[static_cast<std::size_t>(a)] = samples_of(wd, a);
  SpectralField out(grid, f.components());
  std::vector<Complex> acc(grid.modes()), prod(grid.modes());
  for (int c = 0; c < f.components(); ++c) {
    std::ranges::fill(acc, Complex{});
    const SpectralField fc = component_of(fd, c);
    for (int a = 0; a < d; ++a) {
      auto ds = samples_of(derivative(fc, a, 1), 0);
      kernels::pointwise_product(ws[static_cast<std::size_t>(a)], ds, prod);
      kernels::axpy(acc, 1.0, prod);
    }
    into_coeffs(acc, grid, out.component(c));
  }
  return dealias(std::move(out));
}

double max_abs(const SpectralField& f) {
  double m = 0.0;
  for (int c = 0; c < f.components(); ++c) m = std::max(m, kernels::max_abs_real(samples_of(f, c)));
  return m;
}

double max_pointwise_norm(const SpectralField& v) {
  std::vector<double> s2(v.grid().modes(), 0.0);
  for (int c = 0; c < v.components(); ++c) {
    auto buf = samples_of(v, c);
    for (std::size_t i = 0; i < buf.size(); ++i) s2[i] += buf[i].real() * buf[i].real();
  }
  double m = 0.0;
  for (double x : s2) m = std::max(m, x);
  return std::sqrt(m);
}

double min_value(const SpectralField& f) {
  if (!f.is_scalar()) throw std::invalid_argument("min_value expects a scalar field");
  auto buf = samples_of(f, 0);
  double m = buf[0].real();
  for (const auto& x : buf) m = std::min(m, x.real());
  return m;
}

}  // namespace criticalflow
