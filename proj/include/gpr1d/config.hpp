// Scenario configuration: INI-style key = value sections parsed with strict
// unknown-key detection, validated into ready-to-run settings.
#pragma once

#include <optional>
#include <string>

#include "gpr1d/field_solver.hpp"
#include "gpr1d/ghost_fluid.hpp"
#include "gpr1d/gpr_core.hpp"
#include "gpr1d/hllp.hpp"
#include "gpr1d/relax_integrator.hpp"
#include "gpr1d/thermo.hpp"

namespace gpr1d::config {

enum class Model { Gpr, EulerFourier };
enum class InitKind { Uniform, Riemann };

struct MaterialSpec {
  thermo::Eos eos;
  double lambda = 0.0;
  gpr_core::TauModel tau_model = gpr_core::TauModel::Kinetic;
  double tau = 0.0;  // TauModel::Fixed only
  // Reference state; defaults to the initial state on the material's side.
  std::optional<double> rho_ref, T_ref;
};

// Initial state; rho is resolved during parsing (from `rho` directly or from
// `T` via the equation of state).
struct StateSpec {
  double rho = 0.0, u = 0.0, p = 0.0, j = 0.0;
};

struct RunConfig {
  std::string name = "run";
  Model model = Model::Gpr;
  relax_integrator::SourceIntegrator integrator =
      relax_integrator::SourceIntegrator::SemiAnalytic;
  double t_end = 0.0;
  double cfl = 0.9;

  int cells = 0;
  double x_min = 0.0, x_max = 0.0;
  field_solver::Boundary bc_left, bc_right;

  bool two_phase = false;

  // Single-phase settings.
  MaterialSpec material;
  InitKind init_kind = InitKind::Uniform;
  StateSpec init_state;            // uniform
  StateSpec init_left, init_right; // riemann and two-phase
  double x_split = 0.0;            // single-phase riemann only

  // Two-phase settings.
  MaterialSpec liquid, vapor;
  hllp::SolverKind solver = hllp::SolverKind::Mq;
  double delta_p_sigma = 0.0;
  double x_gamma = 0.0;
  ghost_fluid::Side liquid_side = ghost_fluid::Side::Left;
};

RunConfig parse_file(const std::string& path);
// `origin` names the source in error messages (usually the file path).
RunConfig parse_string(const std::string& text, const std::string& origin);

// Command-line overrides applied on top of a parsed config.
struct Overrides {
  std::optional<std::string> solver, model, integrator;
  std::optional<int> cells;
  std::optional<double> cfl;
};
void apply_overrides(RunConfig&, const Overrides&);

// Builds the runtime material; the reference state (rho_ref, T_ref) defaults
// to the given initial state, with T from (rho, p) via the EOS.
gpr_core::Material build_material(const MaterialSpec&, const StateSpec& init);

}  // namespace gpr1d::config
