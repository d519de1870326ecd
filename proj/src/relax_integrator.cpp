#include "gpr1d/relax_integrator.hpp"

#include <cmath>
#include <sstream>

namespace gpr1d::relax_integrator {

double semi_analytic_update(double J_n, double J_star, double dt, double tau_H) {
  if (!(dt > 0.0 && tau_H > 0.0))
    throw SolverError("semi_analytic_update: dt and tau_H must be positive");
  // J_n e^{-x} + tau P (1 - e^{-x}) with x = dt/tau_H and P = (J* - J_n)/dt,
  // written via expm1 so neither the slow (tau >> dt) nor the stiff limit
  // cancels: (1 - e^{-x})/x -> 1 as x -> 0 and -> 1/x as x -> inf.
  const double x = dt / tau_H;
  return J_n * std::exp(-x) - (J_star - J_n) * (std::expm1(-x) / x);
}

int stable_substeps(double dt, double tau_H) {
  if (!(dt > 0.0 && tau_H > 0.0))
    throw SolverError("stable_substeps: dt and tau_H must be positive");
  double n = std::floor(dt / (0.5 * tau_H)) + 1.0;
  if (n > 1e9) throw SolverError("stable_substeps: relaxation too stiff for the explicit integrator");
  return static_cast<int>(n);
}

double explicit_update(double J_star, double dt, double tau_H, int substeps) {
  if (!(dt > 0.0 && tau_H > 0.0))
    throw SolverError("explicit_update: dt and tau_H must be positive");
  double h = dt / substeps;
  if (!(substeps >= 1) || !(h < 0.5 * tau_H)) {
    std::ostringstream os;
    os << "explicit_update: substep " << h << " violates the stability bound tau_H/2 = "
       << 0.5 * tau_H;
    throw ConfigError(os.str());
  }
  double J = J_star;
  double decay = 1.0 - h / tau_H;
  for (int i = 0; i < substeps; ++i) J *= decay;
  return J;
}

}  // namespace gpr1d::relax_integrator
