#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "criticalflow/grid.hpp"
#include "criticalflow/spectral.hpp"
#include "support.hpp"

using namespace criticalflow;
using std::numbers::pi;

namespace {

// Direct O(N^2) transform in long double: f_hat(xi) = N^-1 sum_x f(x) e^{-i xi.x}.
std::vector<std::complex<long double>> naive_dft(const Grid& g, std::span<const double> f) {
  const std::size_t m = g.modes();
  std::vector<std::complex<long double>> out(m);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t q = 0; q < m; ++q) {
    std::complex<long double> acc{};
    for (std::size_t i = 0; i < m; ++i) {
      long double phase = 0;
      std::size_t rest = i;
      for (int a = g.dim() - 1; a >= 0; --a) {
        const long double pos = static_cast<long double>(rest % g.n());
        rest /= g.n();
        phase += g.xi(a)[q] * pos / g.n();
      }
      acc += static_cast<long double>(f[i]) *
             std::complex<long double>(std::cos(two_pi * phase), -std::sin(two_pi * phase));
    }
    out[q] = acc / static_cast<long double>(m);
  }
  return out;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid(1, 16), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 16), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 12), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 16, 0.0), std::invalid_argument);
  CHECK_NOTHROW(make_grid(3, 8));
}

TEST_CASE("grid tables") {
  const Grid g = make_grid(2, 16, 4.0 * pi);
  CHECK(g.modes() == 256);
  CHECK(g.volume() == doctest::Approx(16.0 * pi * pi));
  CHECK(g.wavenumber_unit() == doctest::Approx(0.5));
  const int xi[2] = {-3, 5};
  const std::size_t q = g.mode_index(xi);
  CHECK(g.xi(0)[q] == -3);
  CHECK(g.xi(1)[q] == 5);
  CHECK(g.k(1)[q] == doctest::Approx(2.5));
  CHECK(g.k2()[q] == doctest::Approx(0.25 * 34));
  // Nyquist component has no odd derivative.
  const int nyq[2] = {-8, 1};
  const std::size_t qn = g.mode_index(nyq);
  CHECK(g.k(0)[qn] == doctest::Approx(-4.0));
  CHECK(g.k_odd(0)[qn] == 0.0);
  // 2/3 rule: 3|xi| <= n on every axis.
  const int keep[2] = {5, -5};
  const int drop[2] = {6, 0};
  CHECK(g.retained()[g.mode_index(keep)] == 1);
  CHECK(g.retained()[g.mode_index(drop)] == 0);
  CHECK(g.shell()[g.mode_index(drop)] == -1);
  CHECK(g.shell_xi2()[static_cast<std::size_t>(g.shell()[q])] == 34);
  CHECK(g == make_grid(2, 16, 4.0 * pi));
  CHECK_FALSE(g == make_grid(2, 16));
}

TEST_CASE("forward transform matches a direct long-double DFT") {
  std::mt19937_64 rng(11);
  for (auto [dim, n] : {std::pair{2, 8}, {2, 16}, {3, 8}}) {
    const Grid g = make_grid(dim, n);
    std::normal_distribution<double> nd;
    PhysicalField f(g, 1);
    for (double& x : f.values()) x = nd(rng);
    const SpectralField fh = to_spectral(f);
    const auto ref = naive_dft(g, f.values());
    double err = 0.0;
    for (std::size_t q = 0; q < g.modes(); ++q)
      err = std::max(err, static_cast<double>(std::abs(
                              std::complex<long double>(fh.coeffs()[q]) - ref[q])));
    CHECK(err < 1e-14);
    CHECK(conjugate_symmetry_defect(fh) < 1e-15);
  }
}

TEST_CASE("round trip and Parseval") {
  std::mt19937_64 rng(3);
  const Grid g = make_grid(2, 32, 3.0);
  const SpectralField f = testing_support::random_field(g, 2, rng);
  const PhysicalField p = to_physical(f);
  const SpectralField back = to_spectral(p);
  CHECK(max_coeff_diff(f, back) < 1e-14);
  double direct = 0.0;
  for (double x : p.values()) direct += x * x;
  direct *= g.volume() / static_cast<double>(g.modes());
  CHECK(l2_norm(f) * l2_norm(f) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("sin x has coefficients -i/2 at xi = +-1") {
  const Grid g = make_grid(2, 16);
  const SpectralField f =
      testing_support::sample(g, 1, [](int, double x, double, double) { return std::sin(x); });
  const int p1[2] = {1, 0}, m1[2] = {-1, 0};
  CHECK(std::abs(f.coeffs()[g.mode_index(p1)] - Complex(0, -0.5)) < 1e-15);
  CHECK(std::abs(f.coeffs()[g.mode_index(m1)] - Complex(0, 0.5)) < 1e-15);
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(2.0) * pi));
}
