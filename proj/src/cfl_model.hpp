#pragma once

#include <optional>

namespace relaxssp {

// Parabolic CFL model dt = (c1 - delta) * lambda * h^2 / mu * 1 / (1 + 2 h phi).
// c2 is the linear Phi-correction slope; it is reported when measured but the
// timestep uses the nonlinear factor 1 / (1 + 2 h phi) instead.
struct CflModel {
  double c1 = 0.0;
  std::optional<double> c2;
  double delta = 0.01;
};

// Throws ConfigError unless c1 > 0 and 0 <= delta < c1.
void check_cfl_model(const CflModel& cfl);

}  // namespace relaxssp
