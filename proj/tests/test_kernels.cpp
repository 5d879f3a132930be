#include <doctest.h>

#include <omp.h>

#include <random>
#include <vector>

#include "criticalflow/kernels.hpp"

using namespace criticalflow;
namespace ks = criticalflow::kernels::serial;
namespace kp = criticalflow::kernels::parallel;

namespace {

constexpr std::size_t kSize = 70001;  // large enough to take the threaded path

std::vector<Complex> random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<Complex> v(n);
  for (auto& c : v) c = {nd(rng), nd(rng)};
  return v;
}

std::vector<double> random_real(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

struct ThreadGuard {
  int saved = omp_get_max_threads();
  explicit ThreadGuard(int n) { omp_set_num_threads(n); }
  ~ThreadGuard() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("elementwise kernels agree with the serial reference") {
  ThreadGuard guard(4);
  const auto x = random_complex(kSize, 1);
  const auto m = random_real(kSize, 2);
  auto a = random_complex(kSize, 3), b = a;
  ks::scale(a, 1.7);
  kp::scale(b, 1.7);
  CHECK(a == b);
  ks::axpy(a, -0.3, x);
  kp::axpy(b, -0.3, x);
  CHECK(a == b);
  ks::apply_multiplier(a, m);
  kp::apply_multiplier(b, m);
  CHECK(a == b);
  std::vector<Complex> pa(kSize), pb(kSize);
  ks::pointwise_product(a, x, pa);
  kp::pointwise_product(a, x, pb);
  CHECK(pa == pb);
  for (std::size_t i = 0; i < 10; ++i) CHECK(pa[i] == Complex(a[i].real() * x[i].real(), 0.0));
}

TEST_CASE("reductions agree with the serial reference and ignore the thread count") {
  const auto x = random_complex(kSize, 4);
  const auto y = random_complex(kSize, 5);
  const auto w = random_real(kSize, 6);
  const double s1 = ks::sum_abs2(x), s2 = ks::weighted_sum_abs2(x, w);
  const double s3 = ks::sum_real_conj_product(x, y), s4 = ks::max_abs_real(x);
  double first[4] = {};
  for (int threads : {1, 2, 3, 4}) {
    ThreadGuard guard(threads);
    const double r[4] = {kp::sum_abs2(x), kp::weighted_sum_abs2(x, w),
                         kp::sum_real_conj_product(x, y), kp::max_abs_real(x)};
    CHECK(r[0] == doctest::Approx(s1).epsilon(1e-13));
    CHECK(r[1] == doctest::Approx(s2).epsilon(1e-13));
    CHECK(r[2] == doctest::Approx(s3).epsilon(1e-11));
    CHECK(r[3] == s4);
    if (threads == 1) std::copy(r, r + 4, first);
    for (int i = 0; i < 4; ++i) CHECK(r[i] == first[i]);
  }
}

TEST_CASE("projection and block kernels agree with the serial reference") {
  ThreadGuard guard(4);
  const auto k0 = random_real(kSize, 7), k1 = random_real(kSize, 8);
  std::vector<double> k2(kSize);
  for (std::size_t i = 0; i < kSize; ++i) k2[i] = k0[i] * k0[i] + k1[i] * k1[i];
  k2[0] = 0.0;
  std::span<const double> ks_[2] = {k0, k1};
  auto u0 = random_complex(kSize, 9), u1 = random_complex(kSize, 10);
  auto v0 = u0, v1 = u1;
  std::span<Complex> us[2] = {u0, u1}, vs[2] = {v0, v1};
  ks::project_divergence_free(us, 2, ks_, k2);
  kp::project_divergence_free(vs, 2, ks_, k2);
  CHECK(u0 == v0);
  CHECK(u1 == v1);
  for (std::size_t i = 1; i < 100; ++i) CHECK(std::abs(k0[i] * u0[i] + k1[i] * u1[i]) < 1e-12);

  std::vector<std::int32_t> shell(kSize);
  for (std::size_t i = 0; i < kSize; ++i) shell[i] = static_cast<std::int32_t>(i % 5) - 1;
  const std::vector<kernels::Mat2> table = {{1, 2, 3, 4}, {0.5, -1, 0, 2}, {0, 1, -1, 0}, {2, 0, 0, 2}};
  auto b0 = random_complex(kSize, 11), w0 = random_complex(kSize, 12);
  auto b1 = b0, w1 = w0;
  const auto b_in = b0, w_in = w0;
  ks::apply_block2(b0, w0, shell, table);
  kp::apply_block2(b1, w1, shell, table);
  CHECK(b0 == b1);
  CHECK(w0 == w1);
  CHECK(b0[0] == Complex{});
  CHECK(b0[1] == b_in[1] + 2.0 * w_in[1]);
  CHECK(w0[1] == 3.0 * b_in[1] + 4.0 * w_in[1]);
}
