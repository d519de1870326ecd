// Time integration of the thermal-impulse relaxation source: an exact
// (semi-analytic, asymptotic-preserving) update and an explicit sub-cycled
// reference integrator.
#pragma once

#include "gpr1d/errors.hpp"

namespace gpr1d::relax_integrator {

enum class SourceIntegrator { SemiAnalytic, Explicit };

// Exact solution at dt of J' = P* - J/tau_H with P* = (J_star - J_n)/dt:
// J(dt) = (J_n - tau_H P*) exp(-dt/tau_H) + tau_H P*. Unconditionally stable.
double semi_analytic_update(double J_n, double J_star, double dt, double tau_H);

// Smallest substep count n with dt/n < tau_H/2.
int stable_substeps(double dt, double tau_H);

// Plain splitting: forward-Euler sub-cycling of J' = -J/tau_H applied to the
// post-hydro value J_star. Throws ConfigError if dt/substeps >= tau_H/2.
double explicit_update(double J_star, double dt, double tau_H, int substeps);

}  // namespace gpr1d::relax_integrator
