#include "criticalflow/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "criticalflow/kernels.hpp"
#include "criticalflow/spectral.hpp"

namespace criticalflow {

namespace {

double psi(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
}

void check_block(const DyadicPartition& p, int j) {
  if (!p.contains(j))
    throw std::out_of_range("block " + std::to_string(j) + " outside [" + std::to_string(p.j_min) +
                            ", " + std::to_string(p.j_max) + "]");
}

SpectralField multiply(const SpectralField& f, std::span<const double> m) {
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) kernels::apply_multiplier(out.component(c), m);
  return out;
}

}  // namespace

double chi(double r) { return psi((4.0 / 3.0 - r) / (4.0 / 3.0 - 3.0 / 4.0)); }

double phi(double r) { return chi(0.5 * r) - chi(r); }

const std::vector<double>& DyadicPartition::weight(int j) const {
  check_block(*this, j);
  return weights[static_cast<std::size_t>(j - j_min)];
}

DyadicPartition build_partition(const Grid& grid) {
  DyadicPartition p;
  p.grid = grid;
  const double L = grid.length();
  p.j_min = static_cast<int>(std::floor(std::log2(2.0 * std::numbers::pi / L) - 1.0));
  p.j_max = static_cast<int>(std::ceil(std::log2(std::numbers::pi * grid.n() / L) + 1.0));
  auto kmag = grid.k_mag();
  p.weights.resize(static_cast<std::size_t>(p.blocks()));
  for (int j = p.j_min; j <= p.j_max; ++j) {
    auto& w = p.weights[static_cast<std::size_t>(j - p.j_min)];
    w.resize(grid.modes());
    const double scale = std::ldexp(1.0, -j);
    for (std::size_t m = 0; m < grid.modes(); ++m) w[m] = kmag[m] == 0.0 ? 0.0 : phi(scale * kmag[m]);
  }
  return p;
}

SpectralField dyadic_block(const DyadicPartition& p, const SpectralField& f, int j) {
  return multiply(f, p.weight(j));
}

SpectralField low_cutoff(const DyadicPartition& p, const SpectralField& f, int k) {
  const Grid& g = f.grid();
  std::vector<double> m(g.modes());
  auto kmag = g.k_mag();
  const double scale = std::ldexp(1.0, -k);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = chi(scale * kmag[i]);
  (void)p;
  return multiply(f, m);
}

std::vector<double> block_l2(const DyadicPartition& p, const SpectralField& f, int grad_order) {
  const Grid& g = f.grid();
  if (!(g == p.grid)) throw std::invalid_argument("partition built for another grid");
  std::vector<double> w2(g.modes());
  auto k2 = g.k2();
  std::vector<double> out(static_cast<std::size_t>(p.blocks()));
  for (int j = p.j_min; j <= p.j_max; ++j) {
    const auto& w = p.weight(j);
    for (std::size_t i = 0; i < w2.size(); ++i) {
      double x = w[i] * w[i];
      if (grad_order > 0) x *= std::pow(k2[i], grad_order);
      w2[i] = x;
    }
    double e = 0.0;
    for (int c = 0; c < f.components(); ++c) e += kernels::weighted_sum_abs2(f.component(c), w2);
    out[static_cast<std::size_t>(j - p.j_min)] = std::sqrt(g.volume() * e);
  }
  return out;
}

BesovNorm besov_norm(const DyadicPartition& p, const SpectralField& f, double s, int grad_order) {
  BesovNorm b;
  b.s = s;
  const auto blocks = block_l2(p, f, grad_order);
  for (int j = p.j_min; j <= p.j_max; ++j) {
    const double v = std::exp2(j * s) * blocks[static_cast<std::size_t>(j - p.j_min)];
    b.per_block[j] = v;
    b.value += v;
  }
  return b;
}

double besov(const DyadicPartition& p, const SpectralField& f, double s, int grad_order) {
  return besov_norm(p, f, s, grad_order).value;
}

int low_frequency_limit(double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("nu must be positive");
  return static_cast<int>(std::floor(-std::log2(nu) + 1e-12));
}

std::pair<SpectralField, SpectralField> split_low_high(const DyadicPartition& p,
                                                       const SpectralField& f, double nu) {
  const int kmax = low_frequency_limit(nu);
  const Grid& g = f.grid();
  std::vector<double> low(g.modes(), 0.0), high(g.modes(), 0.0);
  for (int j = p.j_min; j <= p.j_max; ++j) {
    auto& dst = j <= kmax ? low : high;
    const auto& w = p.weight(j);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += w[i];
  }
  return {multiply(f, low), multiply(f, high)};
}

BernsteinRatios audit_bernstein(const DyadicPartition& p, const SpectralField& f, int j) {
  const SpectralField fj = dyadic_block(p, f, j);
  const double base = l2_norm(fj);
  if (base == 0.0) throw std::domain_error("block " + std::to_string(j) + " is empty");
  double g2 = 0.0;
  for (int c = 0; c < fj.components(); ++c)
    g2 += kernels::weighted_sum_abs2(fj.component(c), f.grid().k2());
  const double gradn = std::sqrt(f.grid().volume() * g2);
  const double two_j = std::ldexp(1.0, j);
  return {gradn / (two_j * base), two_j * base / gradn};
}

double audit_product_law(const DyadicPartition& p, const SpectralField& g, const SpectralField& h,
                         double s1, double s2) {
  const double half_d = 0.5 * g.grid().dim();
  if (s1 > half_d || s2 > half_d || s1 + s2 <= 0.0)
    throw std::invalid_argument("product law needs s1, s2 <= d/2 and s1 + s2 > 0");
  const double den = besov(p, g, s1) * besov(p, h, s2);
  if (den == 0.0) throw std::domain_error("product law denominator vanishes");
  return besov(p, dealiased_product(g, h), s1 + s2 - half_d) / den;
}

double commutator_sum(const DyadicPartition& p, const SpectralField& w, const SpectralField& f,
                      double s) {
  if (!f.is_scalar()) throw std::invalid_argument("commutator expects a scalar f");
  const SpectralField transport = advect(w, f);
  double total = 0.0;
  for (int j = p.j_min; j <= p.j_max; ++j) {
    SpectralField c = advect(w, dyadic_block(p, f, j));
    c -= dyadic_block(p, transport, j);
    total += std::exp2(j * s) * l2_norm(c);
  }
  return total;
}

double audit_commutator(const DyadicPartition& p, const SpectralField& w, const SpectralField& f,
                        double s) {
  const double half_d = 0.5 * w.grid().dim();
  if (!(s > -half_d && s <= half_d))
    throw std::invalid_argument("commutator audit needs -d/2 < s <= d/2");
  const double den = besov(p, w, half_d, 1) * besov(p, f, s);
  if (den == 0.0) throw std::domain_error("commutator denominator vanishes");
  return commutator_sum(p, w, f, s) / den;
}

}  // namespace criticalflow
