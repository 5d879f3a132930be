#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace criticalflow {

/// Exponential RK4 (exact linear part), integrating-factor RK4, or
/// second-order IMEX backward differentiation.
enum class Integrator { EtdRk4, IfRk4, ImexBdf2 };

Integrator parse_integrator(const std::string& name);
std::string to_string(Integrator i);

/// Thrown when a step exceeds the advective/acoustic limit.
class CflError : public std::runtime_error {
 public:
  CflError(const std::string& what, double suggested_dt)
      : std::runtime_error(what), suggested_dt_(suggested_dt) {}
  double suggested_dt() const { return suggested_dt_; }

 private:
  double suggested_dt_;
};

/// Time levels of one run and which of them are stored.
///
/// With a positive initial step the run opens with steps h0, 1.15 h0, ...
/// until dt is reached; every opening level is saved. The remaining span is
/// split into equal steps no longer than dt, saved every `save_every` steps.
/// The final level is always saved.
struct TimeSchedule {
  std::vector<double> times;
  std::vector<std::uint8_t> save;
  std::vector<double> h;  // nominal size of step i, repeated exactly for equal steps

  std::size_t steps() const { return h.size(); }
};

TimeSchedule make_schedule(double dt, double t_end, int save_every, double h0 = 0.0,
                           double growth = 1.15);

}  // namespace criticalflow
