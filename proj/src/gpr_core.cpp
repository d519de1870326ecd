#include "gpr1d/gpr_core.hpp"

#include <cmath>
#include <sstream>

namespace gpr1d::gpr_core {

double tau_kinetic(double lambda, double rho, double cv, double cs, double T,
                   double T0, double rho0) {
  return 3.0 / (cs * cs) * (lambda / (rho * cv)) * (T / T0) * (rho0 / rho);
}

double tau_thermomass(double lambda, double rho, double cv, double cp, double T) {
  return lambda / (rho * cv) / (2.0 * cp * T);
}

double derive_alpha(double lambda, double rho0, double T0, double tau) {
  if (!(tau > 0.0)) throw StateError("derive_alpha: tau must be positive");
  return std::sqrt(lambda * rho0 / (tau * T0));
}

Material make_material(const thermo::Eos& eos, double lambda, double rho0,
                       double T0, TauModel tau_model, double tau_given) {
  if (!(lambda > 0.0 && rho0 > 0.0 && T0 > 0.0))
    throw StateError("make_material: lambda, rho0, T0 must be positive");
  Material m;
  m.eos = eos;
  m.lambda = lambda;
  m.rho0 = rho0;
  m.T0 = T0;
  m.tau_model = tau_model;
  m.tau_given = tau_given;
  double v0 = 1.0 / rho0;
  double c2 = thermo::sound_speed_sq_Tv(eos, T0, v0);
  if (!(c2 > 0.0))
    throw StateError("make_material: reference state is inside the spinodal");
  m.cs0 = std::sqrt(c2);
  switch (tau_model) {
    case TauModel::Kinetic:
      m.tau_ref = tau_kinetic(lambda, rho0, eos.cv, m.cs0, T0, T0, rho0);
      break;
    case TauModel::Thermomass: {
      double cva = thermo::cv_actual(eos, T0, v0);
      double dpT = thermo::dp_dT(eos, T0, v0);
      double cp0 = cva - T0 * dpT * dpT / thermo::dp_dv(eos, T0, v0);
      m.tau_ref = tau_thermomass(lambda, rho0, eos.cv, cp0, T0);
      break;
    }
    case TauModel::Fixed:
      if (!(tau_given > 0.0))
        throw StateError("make_material: fixed tau model requires tau > 0");
      m.tau_ref = tau_given;
      break;
  }
  m.alpha = derive_alpha(lambda, rho0, T0, m.tau_ref);
  m.alpha2 = m.alpha * m.alpha;
  return m;
}

double temperature(const Material& m, const Prim& w) {
  return thermo::temperature_from_rho_p(m.eos, w.rho, w.p);
}

double total_energy(const Material& m, const Prim& w, double T) {
  double eps = thermo::internal_energy_Tv(m.eos, T, 1.0 / w.rho);
  return eps + 0.5 * w.u * w.u + 0.5 * m.alpha2 * w.j * w.j;
}

Cons to_cons(const Material& m, const Prim& w) {
  double T = temperature(m, w);
  double e = total_energy(m, w, T);
  return {w.rho, w.rho * w.u, w.rho * e, w.rho * w.j};
}

Prim to_prim(const Material& m, const Cons& c) {
  if (!(c.rho > 0.0) || !std::isfinite(c.rho)) {
    std::ostringstream os;
    os << "to_prim: non-positive density " << c.rho;
    throw StateError(os.str());
  }
  Prim w;
  w.rho = c.rho;
  w.u = c.mom / c.rho;
  w.j = c.J / c.rho;
  double eps = c.E / c.rho - 0.5 * w.u * w.u - 0.5 * m.alpha2 * w.j * w.j;
  if (!std::isfinite(eps))
    throw StateError("to_prim: non-finite internal energy");
  double T = thermo::temperature_from_rho_eps(m.eos, c.rho, eps);
  if (!(T > 0.0)) {
    std::ostringstream os;
    os << "to_prim: energy below the EOS floor (eps = " << eps << ")";
    throw StateError(os.str());
  }
  w.p = thermo::pressure_Tv(m.eos, T, 1.0 / c.rho);
  return w;
}

double heat_flux(const Material& m, double T, double j) {
  return m.alpha2 * T * j;
}

double c_h(const Material& m, double rho, double T) {
  return m.alpha / rho * std::sqrt(T / m.eos.cv);
}

double max_signal_speed(const Material& m, const Prim& w, double T) {
  double c2 = thermo::sound_speed_sq_Tv(m.eos, T, 1.0 / w.rho);
  if (!(c2 > 0.0)) {
    std::ostringstream os;
    os << "max_signal_speed: spinodal state (c_s^2 = " << c2 << ") at rho = "
       << w.rho << ", p = " << w.p;
    throw thermo::SpinodalError(os.str());
  }
  return std::abs(w.u) + std::max(std::sqrt(c2), c_h(m, w.rho, T));
}

std::array<double, 4> physical_flux(const Material& m, const Prim& w, double T,
                                    double e_total) {
  double q = heat_flux(m, T, w.j);
  return {w.rho * w.u, w.rho * w.u * w.u + w.p,
          (w.rho * e_total + w.p) * w.u + q, w.rho * w.j * w.u + T};
}

double theta(const Material& m, double rho, double T) {
  return m.tau_ref * m.alpha2 * (rho / m.rho0) * (m.T0 / T);
}

double tau_H(const Material& m, double rho, double T) {
  return rho * m.lambda / (T * m.alpha2);
}

double relaxation_source(const Material& m, double rho_j, double rho, double T) {
  return -rho_j / tau_H(m, rho, T);
}

double entropy_production(const Material& m, double j) {
  return m.alpha2 * m.alpha2 * j * j / m.lambda;
}

}  // namespace gpr1d::gpr_core
