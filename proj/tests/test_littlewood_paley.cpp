#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "criticalflow/littlewood_paley.hpp"
#include "criticalflow/spectral.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace criticalflow;
using testing_support::random_field;
using testing_support::sample;
using std::numbers::pi;
using ld = long double;

using oracles::gaussian;
using oracles::gaussian_besov;

namespace {

ld ref_chi(ld r) { return oracles::chi(r); }
ld ref_phi(ld r) { return oracles::phi(r); }

}  // namespace

TEST_CASE("profile functions") {
  CHECK(chi(0.0) == 1.0);
  CHECK(chi(0.75) == 1.0);
  CHECK(chi(4.0 / 3.0) == 0.0);
  CHECK(chi(5.0) == 0.0);
  double prev = 1.0;
  for (double r = 0.0; r < 2.0; r += 1e-3) {
    CHECK(chi(r) <= prev);
    prev = chi(r);
    CHECK(std::abs(chi(r) - static_cast<double>(ref_chi(r))) < 1e-15);
  }
  CHECK(phi(0.7) == 0.0);
  CHECK(phi(2.7) == 0.0);
  CHECK(phi(1.0) > 0.0);
  CHECK(phi(1.5) == doctest::Approx(1.0));
}

TEST_CASE("block range and partition of unity") {
  for (auto [dim, n, L] : {std::tuple{2, 32, 2 * pi}, {2, 64, 1.0}, {3, 16, 2 * pi}}) {
    const Grid g = make_grid(dim, n, L);
    const auto p = build_partition(g);
    CHECK(p.j_min == static_cast<int>(std::floor(std::log2(2 * pi / L) - 1)));
    CHECK(p.j_max == static_cast<int>(std::ceil(std::log2(pi * n / L) + 1)));
    for (std::size_t m = 1; m < g.modes(); ++m) {
      double sum = 0;
      for (int j = p.j_min; j <= p.j_max; ++j) sum += p.weight(j)[m];
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
    for (int j = p.j_min; j <= p.j_max; ++j) CHECK(p.weight(j)[0] == 0.0);
  }
}

TEST_CASE("blocks are almost orthogonal and sum to the mean-free field") {
  const Grid g = make_grid(2, 32);
  const auto p = build_partition(g);
  std::mt19937_64 rng(5);
  const auto f = random_field(g, 1, rng);
  SpectralField sum(g, 1);
  for (int j = p.j_min; j <= p.j_max; ++j) {
    const auto fj = dyadic_block(p, f, j);
    sum += fj;
    for (int k = p.j_min; k <= p.j_max; ++k)
      if (std::abs(j - k) >= 2) CHECK(max_coeff_diff(dyadic_block(p, fj, k), SpectralField(g, 1)) == 0.0);
  }
  CHECK(max_coeff_diff(sum, without_mean(f)) < 1e-15);
  CHECK_THROWS_AS(dyadic_block(p, f, p.j_max + 1), std::out_of_range);
}

TEST_CASE("low cutoff of a single mode") {
  const Grid g = make_grid(2, 32);
  const auto p = build_partition(g);
  const auto f = sample(g, 1, [](int, double x, double, double) { return 1.0 + std::sin(3 * x); });
  const auto s1 = low_cutoff(p, f, 1);
  const auto expect = sample(g, 1, [](int, double x, double, double) {
    return 1.0 + static_cast<double>(ref_chi(1.5L)) * std::sin(3 * x);
  });
  CHECK(max_abs(s1 - expect) < 1e-14);
}

TEST_CASE("Besov norm of single modes") {
  const Grid g = make_grid(2, 32);
  const auto p = build_partition(g);
  const auto f = sample(g, 1, [](int, double x, double, double) { return std::sin(x); });
  CHECK(besov(p, f, 0.0) == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(besov(p, f, 0.0, 1) == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-14));
  const auto g5 = sample(g, 1, [](int, double x, double, double) { return std::sin(5 * x); });
  // |k| = 5 lies in blocks 1 and 2 only.
  const ld w1 = ref_phi(5.0L / 2), w2 = ref_phi(5.0L / 4);
  const ld expect = (w1 * 2 + w2 * 4) * std::sqrt(2.0L) * std::numbers::pi_v<ld>;
  const auto n = besov_norm(p, g5, 1.0);
  CHECK(n.value == doctest::Approx(static_cast<double>(expect)).epsilon(1e-13));
  CHECK(n.per_block.at(2) == doctest::Approx(static_cast<double>(w2 * 4 * std::sqrt(2.0L) * std::numbers::pi_v<ld>)));
  CHECK(std::abs(n.per_block.at(0)) < 1e-13);
  CHECK(std::abs(n.per_block.at(3)) < 1e-13);
  // Block norms of vector fields are L2 norms of the whole vector; grad order 2 picks up |k|^2.
  const auto v = sample(g, 2, [](int c, double x, double y, double) { return c == 0 ? std::sin(5 * x) : std::cos(5 * y); });
  CHECK(besov(p, v, 1.0) == doctest::Approx(std::sqrt(2.0) * static_cast<double>(expect)));
  CHECK(besov(p, g5, 0.0, 2) == doctest::Approx(25 * besov(p, g5, 0.0)));
}

TEST_CASE("Besov norm of periodized Gaussians against exact coefficients") {
  struct Case { int dim; int n; double sigma, s; };
  for (auto c : {Case{2, 64, 0.5, 0.0}, Case{2, 64, 0.8, 1.0}, Case{2, 64, 0.35, -0.5}, Case{3, 32, 0.7, 0.5}}) {
    const Grid g = make_grid(c.dim, c.n);
    const auto p = build_partition(g);
    const auto f = gaussian(g, c.sigma, 1.0, 2.5, 0.3);
    const double ref = static_cast<double>(gaussian_besov(c.dim, 2 * pi, c.sigma, c.s, p.j_min, p.j_max));
    CHECK(besov(p, f, c.s) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("low/high split") {
  CHECK(low_frequency_limit(1.0) == 0);
  CHECK(low_frequency_limit(0.5) == 1);
  CHECK(low_frequency_limit(100.0) == -7);
  CHECK(low_frequency_limit(0.25) == 2);
  CHECK_THROWS(low_frequency_limit(0.0));
  const Grid g = make_grid(2, 32);
  const auto p = build_partition(g);
  std::mt19937_64 rng(1);
  const auto f = random_field(g, 1, rng);
  for (double nu : {100.0, 1.0, 0.1}) {
    const auto [lo, hi] = split_low_high(p, f, nu);
    CHECK(max_coeff_diff(lo + hi, without_mean(f)) < 1e-15);
    if (nu == 100.0) CHECK(max_abs(lo) == 0.0);
  }
  const auto [lo, hi] = split_low_high(p, f, 1.0);
  const auto expect = dyadic_block(p, f, -1) + dyadic_block(p, f, 0);
  CHECK(max_coeff_diff(lo, expect) < 1e-16);
}

TEST_CASE("Bernstein ratios on localized data") {
  const Grid g = make_grid(2, 64);
  const auto p = build_partition(g);
  std::mt19937_64 rng(2);
  for (int j = p.j_min; j <= p.j_max; ++j) {
    const auto fj = dyadic_block(p, random_field(g, 1, rng), j);
    if (max_abs(fj) == 0.0) {
      CHECK_THROWS_AS(audit_bernstein(p, fj, j), std::domain_error);
      continue;
    }
    const auto r = audit_bernstein(p, fj, j);
    CHECK(r.direct <= 8.0 / 3.0 + 1e-10);
    CHECK(r.reverse <= 4.0 / 3.0 + 1e-10);
    CHECK(r.direct * r.reverse == doctest::Approx(1.0));
  }
  const auto one = sample(g, 1, [](int, double x, double, double) { return std::cos(3 * x); });
  const auto r = audit_bernstein(p, one, 1);
  CHECK(r.direct == doctest::Approx(1.5));
}

TEST_CASE("commutator of two modes against the closed form") {
  const Grid g = make_grid(2, 64);
  const auto p = build_partition(g);
  const double ax = 2 / std::sqrt(5.0), ay = -1 / std::sqrt(5.0);
  const auto w = sample(g, 2, [&](int c, double x, double y, double) { return (c == 0 ? ax : ay) * std::cos(x + 2 * y); });
  const auto f = sample(g, 1, [](int, double x, double, double) { return std::cos(5 * x); });
  const ld adot = ax * 5;
  const ld kf = 5, kp = std::sqrt(ld(36 + 4)), km = std::sqrt(ld(16 + 4));
  const ld half_vol = 2 * std::numbers::pi_v<ld> * std::numbers::pi_v<ld>;
  for (double s : {-0.5, 0.0, 1.0}) {
    ld total = 0;
    for (int j = p.j_min; j <= p.j_max; ++j) {
      const ld sc = std::ldexp(1.0L, -j);
      const ld dp = ref_phi(kf * sc) - ref_phi(kp * sc), dm = ref_phi(kf * sc) - ref_phi(km * sc);
      total += std::pow(2.0L, j * s) * std::abs(adot) / 2 * std::sqrt(half_vol * (dp * dp + dm * dm));
    }
    CHECK(commutator_sum(p, w, f, s) == doctest::Approx(static_cast<double>(total)).epsilon(1e-12));
  }
  CHECK(audit_commutator(p, w, f, 0.0) > 0.0);
  CHECK_THROWS_AS(audit_commutator(p, w, f, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(audit_commutator(p, w, f, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(commutator_sum(p, w, w, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(audit_commutator(p, SpectralField(g, 2), f, 0.0), std::domain_error);
}

TEST_CASE("product law audit") {
  const Grid g = make_grid(2, 64);
  const auto p = build_partition(g);
  std::mt19937_64 rng(8);
  const auto a = dyadic_block(p, random_field(g, 1, rng), 1);
  const auto b = dyadic_block(p, random_field(g, 1, rng), 2);
  const double r = audit_product_law(p, a, b, 1.0, 0.0);
  CHECK(std::isfinite(r));
  CHECK(r > 0.0);
  CHECK_THROWS_AS(audit_product_law(p, a, b, 1.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(audit_product_law(p, a, b, -0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(audit_product_law(p, a, SpectralField(g, 1), 1.0, 0.0), std::domain_error);
}
