// Equation-of-state layer: ideal gas, stiffened gas, and Peng-Robinson cubic
// with temperature inversions, sound speed, entropy/Gibbs, spinodal location,
// and saturation pressure. All quantities are mass-specific SI.
#pragma once

#include <vector>

#include "gpr1d/errors.hpp"

namespace gpr1d::thermo {

inline constexpr double kGasConstant = 8.31446261815324;  // J/(mol K)

struct EosError : SolverError {
  using SolverError::SolverError;
};
// Thrown where c_s^2 <= 0 or where an isotherm has no two-phase dome.
struct SpinodalError : EosError {
  using EosError::EosError;
};

enum class EosKind { Ideal, Stiffened, PengRobinson };

// Flat parameter block; factories fill the derived constants.
struct Eos {
  EosKind kind = EosKind::Ideal;
  double cv = 0.0;     // ideal-limit isochoric heat capacity [J/(kg K)]
  double gamma = 0.0;  // ideal, stiffened
  double p_inf = 0.0;  // stiffened
  double R = 0.0;      // specific gas constant [J/(kg K)]
  // Peng-Robinson:
  double T_c = 0.0;
  double p_c = 0.0;
  double rho_c = 0.0;
  double omega = 0.0;
  double M = 0.0;
  double b = 0.0;      // covolume
  double a0 = 0.0;     // attraction at T_c
  double kappa = 0.0;  // acentric polynomial
};

Eos make_ideal(double gamma, double cv);
Eos make_stiffened(double gamma, double cv, double p_inf);
Eos make_peng_robinson(double rho_c, double p_c, double T_c, double M,
                       double omega, double cv);

// ---- (T, v) surface --------------------------------------------------------
double pressure_Tv(const Eos&, double T, double v);
double dp_dT(const Eos&, double T, double v);
double dp_dv(const Eos&, double T, double v);
double internal_energy_Tv(const Eos&, double T, double v);
double cv_actual(const Eos&, double T, double v);
double entropy_Tv(const Eos&, double T, double v);  // additive constant: plain logs
double enthalpy_Tv(const Eos&, double T, double v);
double gibbs_Tv(const Eos&, double T, double v);
double sound_speed_sq_Tv(const Eos&, double T, double v);  // may be <= 0 in the spinodal

// ---- inversions -------------------------------------------------------------
double temperature_from_rho_p(const Eos&, double rho, double p);
double temperature_from_rho_eps(const Eos&, double rho, double eps);

// ---- (rho, ...) convenience forms used by the flow solver -------------------
double pressure(const Eos&, double rho, double eps);
double internal_energy(const Eos&, double rho, double p);
double temperature(const Eos&, double rho, double eps);
double sound_speed(const Eos&, double rho, double p);  // throws SpinodalError on c^2 <= 0
double enthalpy(double rho, double p, double eps);     // h = eps + p/rho
double gibbs(const Eos&, double rho, double T, double p);

// ---- phase structure (Peng-Robinson) ----------------------------------------
// Molar-volume-like specific volumes of the cubic at (T, p), ascending, v > b.
std::vector<double> volume_roots(const Eos&, double T, double p);

struct SpinodalVolumes {
  double v_pmin;  // liquid-side extremum (isotherm pressure minimum)
  double v_pmax;  // vapor-side extremum (isotherm pressure maximum)
};
SpinodalVolumes spinodal_volumes(const Eos&, double T);  // throws SpinodalError if no dome

double saturation_pressure(const Eos&, double T);

namespace pr {  // Peng-Robinson internals shared with tests
double attraction(const Eos&, double T);       // a(T)
double attraction_dT(const Eos&, double T);    // a'(T)
double attraction_d2T(const Eos&, double T);   // a''(T)
double volume_integral(const Eos&, double v);  // C(v) = int dv / (v^2 + 2bv - b^2)
}  // namespace pr

}  // namespace gpr1d::thermo
