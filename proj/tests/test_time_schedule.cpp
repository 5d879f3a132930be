#include <doctest.h>

#include <cmath>

#include "criticalflow/time_schedule.hpp"

using namespace criticalflow;

TEST_CASE("integrator names") {
  for (auto i : {Integrator::EtdRk4, Integrator::IfRk4, Integrator::ImexBdf2})
    CHECK(parse_integrator(to_string(i)) == i);
  CHECK_THROWS_AS(parse_integrator("rk45"), std::invalid_argument);
}

TEST_CASE("uniform schedule") {
  const auto s = make_schedule(0.1, 1.0, 3);
  CHECK(s.steps() == 10);
  CHECK(s.times.back() == 1.0);
  for (double h : s.h) CHECK(h == s.h.front());
  int saved = 0;
  for (auto f : s.save) saved += f;
  CHECK(saved == 5);  // 0, 3, 6, 9, 10
  CHECK(s.save[3] == 1);
  CHECK(s.save[4] == 0);
  CHECK(s.save.back() == 1);
}

TEST_CASE("step shortened so the end is hit exactly") {
  const auto s = make_schedule(0.3, 1.0, 1);
  CHECK(s.steps() == 4);
  CHECK(s.h[0] == doctest::Approx(0.25));
  CHECK(s.times.back() == 1.0);
}

TEST_CASE("graded opening") {
  const auto s = make_schedule(1e-2, 1.0, 10, 1e-4);
  CHECK(s.h[0] == 1e-4);
  std::size_t ramp = 0;
  while (s.h[ramp] < s.h.back()) ++ramp;
  CHECK(ramp == static_cast<std::size_t>(std::ceil(std::log(100.0) / std::log(1.15))));
  for (std::size_t i = 1; i < ramp; ++i) CHECK(s.h[i] == doctest::Approx(1.15 * s.h[i - 1]));
  for (std::size_t i = 1; i <= ramp; ++i) CHECK(s.save[i] == 1);
  CHECK(s.h.back() <= 1e-2);
  CHECK(s.times.back() == 1.0);
  double t = 0;
  for (std::size_t i = 0; i < s.steps(); ++i) {
    t += s.h[i];
    CHECK(t == doctest::Approx(s.times[i + 1]).epsilon(1e-12));
  }
}

TEST_CASE("bad schedules") {
  CHECK_THROWS(make_schedule(0.0, 1.0, 1));
  CHECK_THROWS(make_schedule(0.1, -1.0, 1));
  CHECK_THROWS(make_schedule(0.1, 1.0, 0));
  CHECK_THROWS(make_schedule(0.1, 1.0, 1, 0.01, 1.0));
}
