#include "criticalflow/time_schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace criticalflow {

Integrator parse_integrator(const std::string& name) {
  if (name == "etd-rk4") return Integrator::EtdRk4;
  if (name == "if-rk4") return Integrator::IfRk4;
  if (name == "imex-bdf2") return Integrator::ImexBdf2;
  throw std::invalid_argument("unknown integrator '" + name + "'");
}

std::string to_string(Integrator i) {
  switch (i) {
    case Integrator::EtdRk4: return "etd-rk4";
    case Integrator::IfRk4: return "if-rk4";
    case Integrator::ImexBdf2: return "imex-bdf2";
  }
  return "?";
}

TimeSchedule make_schedule(double dt, double t_end, int save_every, double h0, double growth) {
  if (!(dt > 0.0) || !(t_end > 0.0)) throw std::invalid_argument("dt and t_end must be positive");
  if (save_every < 1) throw std::invalid_argument("save_every must be >= 1");
  if (h0 > 0.0 && !(growth > 1.0)) throw std::invalid_argument("ramp growth must exceed 1");
  TimeSchedule s;
  s.times.push_back(0.0);
  s.save.push_back(1);
  double t = 0.0;
  if (h0 > 0.0) {
    for (double h = h0; h < dt && t + h < t_end; h *= growth) {
      t += h;
      s.h.push_back(h);
      s.times.push_back(t);
      s.save.push_back(1);
    }
  }
  const double rest = t_end - t;
  if (rest > 0.0) {
    const auto m = static_cast<std::size_t>(std::ceil(rest / dt - 1e-9));
    const double h = rest / static_cast<double>(m);
    for (std::size_t i = 1; i <= m; ++i) {
      s.h.push_back(h);
      s.times.push_back(i == m ? t_end : t + h * static_cast<double>(i));
      s.save.push_back(i % static_cast<std::size_t>(save_every) == 0 || i == m ? 1 : 0);
    }
  }
  return s;
}

}  // namespace criticalflow
