// Scenario driver implementation.
#include "gpr1d/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "gpr1d/errors.hpp"
#include "gpr1d/field_solver.hpp"
#include "gpr1d/phase_model.hpp"
#include "gpr1d/reference_fourier.hpp"

namespace gpr1d::runner {

namespace {

gpr_core::Prim to_prim(const config::StateSpec& s) {
  return {s.rho, s.u, s.p, s.j};
}

io::Profile extract_profile(const field_solver::Simulation& sim) {
  io::Profile p;
  const int n = sim.cells();
  p.x.reserve(n);
  for (int i = 0; i < n; ++i) {
    const gpr_core::Prim w = sim.primitive(i);
    const double T = sim.temperature(i);
    p.x.push_back(sim.x_center(i));
    p.rho.push_back(w.rho);
    p.u.push_back(w.u);
    p.p.push_back(w.p);
    p.T.push_back(T);
    p.j.push_back(w.j);
    p.q.push_back(gpr_core::heat_flux(sim.material(i), T, w.j));
    p.phase.push_back(sim.is_liquid(i) ? 0 : 1);
  }
  return p;
}

io::Profile extract_profile(const reference_fourier::EulerFourierSim& sim) {
  io::Profile p;
  const int n = sim.cells();
  p.x.reserve(n);
  for (int i = 0; i < n; ++i) {
    const gpr_core::Prim w = sim.primitive(i);
    p.x.push_back(sim.x_center(i));
    p.rho.push_back(w.rho);
    p.u.push_back(w.u);
    p.p.push_back(w.p);
    p.T.push_back(sim.temperature(i));
    p.j.push_back(0.0);
    p.q.push_back(sim.heat_flux(i));
    p.phase.push_back(0);
  }
  return p;
}

void push(io::Summary& s, const std::string& k, const std::string& v) {
  s.emplace_back(k, v);
}
void push(io::Summary& s, const std::string& k, double v) {
  s.emplace_back(k, io::format_double(v));
}
void push(io::Summary& s, const std::string& k, long v) {
  s.emplace_back(k, std::to_string(v));
}
void push(io::Summary& s, const std::string& k, int v) {
  s.emplace_back(k, std::to_string(v));
}

}  // namespace

RunResult run_scenario(const config::RunConfig& c) {
  RunResult r;
  io::Summary& d = r.diagnostics;
  push(d, "scenario", c.name);
  push(d, "model",
       c.model == config::Model::Gpr ? "gpr" : "euler_fourier");
  push(d, "cells", c.cells);
  push(d, "t_end", c.t_end);
  push(d, "cfl", c.cfl);
  push(d, "source_integrator",
       c.integrator == relax_integrator::SourceIntegrator::SemiAnalytic
           ? "semi_analytic"
           : "explicit");

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
  };

  if (c.model == config::Model::EulerFourier) {
    reference_fourier::EulerFourierSim sim(c.material.eos, c.material.lambda,
                                           c.cells, c.x_min, c.x_max,
                                           c.bc_left, c.bc_right);
    if (c.init_kind == config::InitKind::Uniform)
      sim.init_uniform(to_prim(c.init_state));
    else
      sim.init_riemann(to_prim(c.init_left), to_prim(c.init_right), c.x_split);
    r.steps = sim.run(c.t_end, c.cfl);
    r.final_time = sim.time();
    r.profile = extract_profile(sim);
  } else if (!c.two_phase) {
    const config::StateSpec& ref =
        c.init_kind == config::InitKind::Uniform ? c.init_state : c.init_left;
    const gpr_core::Material mat = config::build_material(c.material, ref);
    field_solver::Simulation sim(mat, c.cells, c.x_min, c.x_max, c.bc_left,
                                 c.bc_right, c.integrator);
    if (c.init_kind == config::InitKind::Uniform)
      sim.init_uniform(to_prim(c.init_state));
    else
      sim.init_riemann(to_prim(c.init_left), to_prim(c.init_right), c.x_split);
    r.steps = sim.run(c.t_end, c.cfl);
    r.final_time = sim.time();
    r.profile = extract_profile(sim);
    push(d, "conservation_defect", sim.conservation_defect());
  } else {
    const bool liq_left = c.liquid_side == ghost_fluid::Side::Left;
    const config::StateSpec& liq_state = liq_left ? c.init_left : c.init_right;
    const config::StateSpec& vap_state = liq_left ? c.init_right : c.init_left;
    field_solver::TwoPhaseSetup setup;
    setup.liquid = config::build_material(c.liquid, liq_state);
    setup.vapor = config::build_material(c.vapor, vap_state);
    setup.track = {c.x_gamma, c.liquid_side, 0.0};
    setup.solver = c.solver;
    setup.delta_p_sigma = c.delta_p_sigma;
    field_solver::Simulation sim(setup, c.cells, c.x_min, c.x_max, c.bc_left,
                                 c.bc_right, c.integrator);
    sim.init_two_phase(to_prim(c.init_left), to_prim(c.init_right));
    phase_model::reset_clamp_events();
    r.steps = sim.run(c.t_end, c.cfl);
    r.final_time = sim.time();
    r.profile = extract_profile(sim);
    push(d, "interface_solver",
         c.solver == hllp::SolverKind::Mq ? "hllp_mq" : "hllp_m");
    push(d, "interface_solves", sim.interface_solves());
    push(d, "refill_events", sim.refill_events());
    push(d, "refill_cells", sim.refill_cells());
    push(d, "x_gamma_final", sim.x_gamma());
    push(d, "s_sharp_last", sim.last_s_sharp());
    push(d, "mass_transfer_integral", sim.mass_transfer_integral());
    push(d, "min_chi", sim.min_chi());
    push(d, "sigma_clamp_events",
         static_cast<long>(phase_model::clamp_events()));
    push(d, "conservation_defect", sim.conservation_defect());
  }

  r.wall_seconds = elapsed();
  push(d, "steps", r.steps);
  push(d, "final_time", r.final_time);
  push(d, "wall_seconds", r.wall_seconds);
  return r;
}

void write_outputs(const RunResult& r, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw ConfigError(out_dir + ": cannot create output directory (" +
                      ec.message() + ")");
  io::write_profile_csv(out_dir + "/profile.csv", r.profile);
  io::write_summary(out_dir + "/summary.txt", r.diagnostics);
}

std::vector<FieldDiff> compare_profiles(const io::Profile& a,
                                        const io::Profile& b) {
  if (a.size() != b.size())
    throw ConfigError("profiles have different row counts (" +
                      std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()) + ")");
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a.x[i] - b.x[i]) > 1e-9 * std::max(1.0, std::abs(b.x[i])))
      throw ConfigError("profiles are on different grids (x mismatch at row " +
                        std::to_string(i) + ")");

  const std::pair<const char*, std::pair<const std::vector<double>*,
                                         const std::vector<double>*>>
      fields[] = {{"rho", {&a.rho, &b.rho}}, {"u", {&a.u, &b.u}},
                  {"p", {&a.p, &b.p}},       {"T", {&a.T, &b.T}},
                  {"j", {&a.j, &b.j}},       {"q", {&a.q, &b.q}}};
  std::vector<FieldDiff> out;
  for (const auto& [name, cols] : fields) {
    const std::vector<double>& fa = *cols.first;
    const std::vector<double>& fb = *cols.second;
    double num2 = 0.0, den2 = 0.0, numi = 0.0, deni = 0.0;
    for (size_t i = 0; i < fa.size(); ++i) {
      const double dv = fa[i] - fb[i];
      num2 += dv * dv;
      den2 += fb[i] * fb[i];
      numi = std::max(numi, std::abs(dv));
      deni = std::max(deni, std::abs(fb[i]));
    }
    FieldDiff fd;
    fd.field = name;
    fd.rel_l2 = std::sqrt(num2) / std::max(std::sqrt(den2), 1e-300);
    fd.rel_linf = numi / std::max(deni, 1e-300);
    out.push_back(fd);
  }
  return out;
}

std::vector<double> restrict_average(const std::vector<double>& fine,
                                     int coarse_cells) {
  if (coarse_cells <= 0 || fine.size() % static_cast<size_t>(coarse_cells) != 0)
    throw ConfigError("restriction requires the fine cell count to be a "
                      "multiple of the coarse one");
  const size_t f = fine.size() / static_cast<size_t>(coarse_cells);
  std::vector<double> out(static_cast<size_t>(coarse_cells), 0.0);
  for (size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (size_t k = 0; k < f; ++k) s += fine[i * f + k];
    out[i] = s / static_cast<double>(f);
  }
  return out;
}

namespace {

double rel_l2(const std::vector<double>& a, const std::vector<double>& ref) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double dv = a[i] - ref[i];
    num += dv * dv;
    den += ref[i] * ref[i];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

}  // namespace

std::vector<ConvergenceRow> run_convergence(const config::RunConfig& c,
                                            const std::vector<int>& cells) {
  if (cells.size() < 2)
    throw ConfigError("a convergence study needs at least two resolutions");
  for (size_t k = 0; k + 1 < cells.size(); ++k)
    if (cells[k + 1] <= cells[k] || cells[k + 1] % cells[k] != 0)
      throw ConfigError(
          "convergence resolutions must be increasing and each a multiple of "
          "the previous one");

  std::vector<io::Profile> profiles;
  for (int n : cells) {
    config::RunConfig cc = c;
    cc.cells = n;
    profiles.push_back(run_scenario(cc).profile);
  }

  std::vector<ConvergenceRow> rows;
  for (size_t k = 0; k + 1 < cells.size(); ++k) {
    ConvergenceRow row;
    row.cells_coarse = cells[k];
    row.cells_fine = cells[k + 1];
    row.rel_l2_rho =
        rel_l2(restrict_average(profiles[k + 1].rho, cells[k]),
               profiles[k].rho);
    row.rel_l2_u = rel_l2(restrict_average(profiles[k + 1].u, cells[k]),
                          profiles[k].u);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gpr1d::runner
