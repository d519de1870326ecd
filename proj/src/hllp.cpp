// Interfacial Riemann solvers built on Davis wave-speed estimates, the
// mechanical/thermodynamic jump systems, and the interphase flux closure.
#include "gpr1d/hllp.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "gpr1d/thermo.hpp"

namespace gpr1d::hllp {

namespace {

// Evaluation of the thermodynamic system at one (mdot*, q*_v) point.
struct MicroEval {
  MechanicalStars mech;
  EnergyStars en;
  double T_l = 0.0, T_v = 0.0;
  double j_l = 0.0, j_v = 0.0;
  phase_model::InterfacialFluxes fl;
  bool fallback = false;
};

[[noreturn]] void fail_nonconv(const std::string& msg) {
  throw NonconvergenceError(msg);
}

std::string state_context(const PhaseState& l, const PhaseState& v) {
  std::ostringstream os;
  os << " [liquid rho=" << l.w.rho << " u=" << l.w.u << " p=" << l.w.p
     << " j=" << l.w.j << " T=" << l.T << "; vapor rho=" << v.w.rho
     << " u=" << v.w.u << " p=" << v.w.p << " j=" << v.w.j << " T=" << v.T
     << "]";
  return os.str();
}

// Full thermodynamic evaluation for the mq solver. Returns nullopt on
// mechanical failure or a non-physical temperature so the Newton can damp.
std::optional<MicroEval> eval_mq(const gpr_core::Material& liq,
                                 const gpr_core::Material& vap,
                                 const PhaseState& l, const PhaseState& v,
                                 double mdot_star, double q_v_star, double dps) {
  MicroEval ev;
  ev.mech = solve_mechanical(l, v, mdot_star, dps);
  if (!ev.mech.ok) return std::nullopt;
  ev.en = energy_stars(ev.mech, mdot_star, q_v_star, dps, l, v);

  const double S_l = ev.mech.m_l * l.w.j + l.T;
  const double disc_l = S_l * S_l - 4.0 * ev.mech.m_l * ev.en.q_l / liq.alpha2;
  if (disc_l >= 0.0) {
    ev.T_l = 0.5 * (S_l + std::sqrt(disc_l));
  } else {
    ev.fallback = true;
    ev.T_l = thermo::temperature_from_rho_eps(
        liq.eos, ev.mech.rho_l, ev.en.e_l - 0.5 * ev.mech.u_l * ev.mech.u_l);
  }
  const double S_v = ev.mech.m_v * v.w.j + v.T;
  const double disc_v = S_v * S_v - 4.0 * ev.mech.m_v * q_v_star / vap.alpha2;
  if (disc_v >= 0.0) {
    ev.T_v = 0.5 * (S_v + std::sqrt(disc_v));
  } else {
    ev.fallback = true;
    ev.T_v = thermo::temperature_from_rho_eps(
        vap.eos, ev.mech.rho_v, ev.en.e_v - 0.5 * ev.mech.u_v * ev.mech.u_v);
  }
  if (!(ev.T_l > 0.0 && ev.T_v > 0.0)) return std::nullopt;
  ev.j_l = ev.en.q_l / (liq.alpha2 * ev.T_l);
  ev.j_v = q_v_star / (vap.alpha2 * ev.T_v);
  try {
    ev.fl = phase_model::closure_fluxes(liq.eos, ev.T_l, ev.mech.p_l, ev.T_v,
                                        ev.mech.p_v);
  } catch (const thermo::EosError&) {
    return std::nullopt;
  }
  return ev;
}

// Reduced evaluation for the scalar solver: heat conduction neglected across
// the outer waves, star temperatures from the EOS.
std::optional<MicroEval> eval_m(const gpr_core::Material& liq,
                                const gpr_core::Material& vap, const PhaseState& l,
                                const PhaseState& v, double mdot_star, double dps) {
  MicroEval ev;
  ev.mech = solve_mechanical(l, v, mdot_star, dps);
  if (!ev.mech.ok) return std::nullopt;
  const double eps_m_l = 1e-12 * l.w.rho * l.cs;
  const double eps_m_v = 1e-12 * v.w.rho * v.cs;
  if (std::abs(ev.mech.m_l) < eps_m_l || std::abs(ev.mech.m_v) < eps_m_v)
    throw SolverError("degenerate outer wave: vanishing mass flux across an acoustic wave");
  ev.en.e_l = l.e + (l.w.u * l.w.p - ev.mech.u_l * ev.mech.p_l) / ev.mech.m_l;
  ev.en.e_v = v.e + (v.w.u * v.w.p - ev.mech.u_v * ev.mech.p_v) / ev.mech.m_v;
  try {
    ev.T_l = thermo::temperature_from_rho_eps(
        liq.eos, ev.mech.rho_l, ev.en.e_l - 0.5 * ev.mech.u_l * ev.mech.u_l);
    ev.T_v = thermo::temperature_from_rho_eps(
        vap.eos, ev.mech.rho_v, ev.en.e_v - 0.5 * ev.mech.u_v * ev.mech.u_v);
    if (!(ev.T_l > 0.0 && ev.T_v > 0.0)) return std::nullopt;
    ev.j_l = (ev.mech.m_l * l.w.j + l.T - ev.T_l) / ev.mech.m_l;
    ev.j_v = (ev.mech.m_v * v.w.j + v.T - ev.T_v) / ev.mech.m_v;
    ev.fl = phase_model::closure_fluxes(liq.eos, ev.T_l, ev.mech.p_l, ev.T_v,
                                        ev.mech.p_v);
  } catch (const thermo::EosError&) {
    return std::nullopt;
  }
  return ev;
}

InterfaceSolution assemble(const MicroEval& r, double mdot, double q_v,
                           double dps, double residual, int iterations) {
  InterfaceSolution s;
  s.star_l = {r.mech.rho_l, r.mech.u_l, r.mech.p_l, r.j_l};
  s.star_v = {r.mech.rho_v, r.mech.u_v, r.mech.p_v, r.j_v};
  s.T_l = r.T_l;
  s.T_v = r.T_v;
  s.e_l = r.en.e_l;
  s.e_v = r.en.e_v;
  s.s_l = r.mech.s_l;
  s.s_v = r.mech.s_v;
  s.s_sharp = r.mech.s_sharp;
  s.mdot = mdot;
  s.q_v = q_v;
  s.q_l = r.en.q_l;
  s.delta_T = mdot * r.j_v + r.T_v - (mdot * r.j_l + r.T_l);
  s.chi = r.fl.chi;
  s.delta_p_sigma = dps;
  s.F_m = r.fl.F_m;
  s.F_e = r.fl.F_e;
  s.sigma_c = r.fl.closure.sigma_c;
  s.iterations = iterations;
  s.residual = residual;
  s.fallback_used = r.fallback;
  if (s.chi < -1e-12) {
    std::ostringstream os;
    os << "interfacial entropy production negative: chi=" << s.chi
       << " F_m=" << s.F_m << " F_e=" << s.F_e << " mdot=" << s.mdot
       << " q_v=" << s.q_v;
    throw SolverError(os.str());
  }
  return s;
}

}  // namespace

PhaseState phase_state(const gpr_core::Material& m, const gpr_core::Prim& w) {
  PhaseState s;
  s.w = w;
  const double v = 1.0 / w.rho;
  s.T = thermo::temperature_from_rho_p(m.eos, w.rho, w.p);
  const double c2 = thermo::sound_speed_sq_Tv(m.eos, s.T, v);
  if (c2 <= 0.0)
    throw thermo::SpinodalError("state inside the spinodal region: imaginary sound speed");
  s.cs = std::sqrt(c2);
  s.e = thermo::internal_energy_Tv(m.eos, s.T, v) + 0.5 * w.u * w.u +
        0.5 * m.alpha2 * w.j * w.j;
  s.q = m.alpha2 * s.T * w.j;
  return s;
}

MechanicalStars solve_mechanical(const PhaseState& l, const PhaseState& v,
                                 double mdot_star, double dps) {
  MechanicalStars m;
  m.s_l = l.w.u - l.cs;
  m.s_v = v.w.u + v.cs;
  m.m_l = l.w.rho * (l.w.u - m.s_l);
  m.m_v = v.w.rho * (v.w.u - m.s_v);
  m.s_sharp = (dps + l.w.p - v.w.p + m.m_l * l.w.u - m.m_v * v.w.u -
               mdot_star * (m.s_v - m.s_l)) /
              (m.m_l - m.m_v);
  m.rho_l = (m.m_l - mdot_star) / (m.s_sharp - m.s_l);
  m.rho_v = (m.m_v - mdot_star) / (m.s_sharp - m.s_v);
  m.u_l = m.s_sharp + mdot_star * (m.s_sharp - m.s_l) / (m.m_l - mdot_star);
  m.u_v = m.s_sharp + mdot_star * (m.s_sharp - m.s_v) / (m.m_v - mdot_star);
  m.p_l = l.w.p + m.m_l * (l.w.u - m.u_l);
  m.p_v = v.w.p + m.m_v * (v.w.u - m.u_v);
  m.ok = m.rho_l > 0.0 && m.rho_v > 0.0 && m.s_l < m.s_sharp && m.s_sharp < m.s_v;
  return m;
}

EnergyStars energy_stars(const MechanicalStars& m, double mdot_star, double q_v_star,
                         double dps, const PhaseState& l, const PhaseState& v) {
  EnergyStars en;
  const double b_l = m.m_l * l.e + l.w.u * l.w.p + l.q - m.u_l * m.p_l;
  const double b_v = m.m_v * v.e + v.w.u * v.w.p + v.q - m.u_v * m.p_v;
  en.e_v = (b_v - q_v_star) / m.m_v;
  const double b_i = mdot_star * en.e_v + m.u_v * m.p_v + q_v_star -
                     m.u_l * m.p_l - m.s_sharp * dps;
  en.e_l = (b_l - b_i) / (m.m_l - mdot_star);
  en.q_l = b_l - m.m_l * en.e_l;
  return en;
}

InterfaceSolution solve_hllp_mq(const gpr_core::Material& liq,
                                const gpr_core::Material& vap,
                                const gpr_core::Prim& prim_l,
                                const gpr_core::Prim& prim_v, double dps) {
  const PhaseState l = phase_state(liq, prim_l);
  const PhaseState v = phase_state(vap, prim_v);
  const double scale_m = v.w.rho * v.cs;
  const double scale_q = v.w.rho * v.cs * vap.eos.cv * v.T;

  double z0 = 0.0, z1 = 0.0;
  const auto G = [&](double a, double b) { return eval_mq(liq, vap, l, v, a, b, dps); };

  for (int it = 0; it < 50; ++it) {
    const auto r = G(z0, z1);
    if (!r)
      fail_nonconv("interface state evaluation failed at the current iterate" +
                   state_context(l, v));
    const double res0 = (z0 - r->fl.mdot) / scale_m;
    const double res1 = (z1 - r->fl.q_v) / scale_q;
    const double rmax = std::max(std::abs(res0), std::abs(res1));
    if (rmax < 1e-10) {
      if (r->fallback)
        fail_nonconv("EOS temperature fallback active at the accepted iterate" +
                     state_context(l, v));
      return assemble(*r, z0, z1, dps, rmax, it);
    }

    // Forward-difference Jacobian of the scaled fixed-point residual, with a
    // backward fallback when the forward point is mechanically inadmissible.
    double J[2][2];
    const double scales[2] = {scale_m, scale_q};
    const double zc[2] = {z0, z1};
    for (int c = 0; c < 2; ++c) {
      double dz = 1e-6 * std::max(std::abs(zc[c]), scales[c] * 1e-3);
      double zp0 = z0, zp1 = z1;
      (c == 0 ? zp0 : zp1) += dz;
      auto rp = G(zp0, zp1);
      if (!rp) {
        zp0 = z0;
        zp1 = z1;
        (c == 0 ? zp0 : zp1) -= dz;
        rp = G(zp0, zp1);
        dz = -dz;
        if (!rp)
          fail_nonconv("Jacobian evaluation failed on both sides of the iterate" +
                       state_context(l, v));
      }
      const double rp0 = (zp0 - rp->fl.mdot) / scale_m;
      const double rp1 = (zp1 - rp->fl.q_v) / scale_q;
      J[0][c] = (rp0 - res0) / dz;
      J[1][c] = (rp1 - res1) / dz;
    }
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    if (det == 0.0 || !std::isfinite(det))
      fail_nonconv("singular Jacobian in the interface iteration" + state_context(l, v));
    const double step0 = (-res0 * J[1][1] + res1 * J[0][1]) / det;
    const double step1 = (-res1 * J[0][0] + res0 * J[1][0]) / det;

    double lam = 1.0;
    double zn0 = z0, zn1 = z1;
    for (int k = 0; k < 8; ++k) {
      zn0 = z0 + lam * step0;
      zn1 = z1 + lam * step1;
      if (G(zn0, zn1)) break;
      lam *= 0.5;
    }
    z0 = zn0;
    z1 = zn1;
  }
  fail_nonconv("interface fixed-point iteration did not converge in 50 steps" +
               state_context(l, v));
}

InterfaceSolution solve_hllp_m(const gpr_core::Material& liq,
                               const gpr_core::Material& vap,
                               const gpr_core::Prim& prim_l,
                               const gpr_core::Prim& prim_v, double dps) {
  const PhaseState l = phase_state(liq, prim_l);
  const PhaseState v = phase_state(vap, prim_v);
  const double scale_m = v.w.rho * v.cs;

  double ms = 0.0;
  std::optional<MicroEval> r;
  int converged_at = -1;
  double res_at = 0.0;
  for (int it = 0; it < 50; ++it) {
    r = eval_m(liq, vap, l, v, ms, dps);
    if (!r)
      fail_nonconv("interface state evaluation failed at the current iterate" +
                   state_context(l, v));
    const double res = (ms - r->fl.mdot) / scale_m;
    if (std::abs(res) < 1e-10) {
      converged_at = it;
      res_at = std::abs(res);
      break;
    }
    const double d = 1e-6 * std::max(std::abs(ms), scale_m * 1e-3);
    const auto rp = eval_m(liq, vap, l, v, ms + d, dps);
    if (!rp)
      fail_nonconv("secant probe evaluation failed" + state_context(l, v));
    const double resp = (ms + d - rp->fl.mdot) / scale_m;
    const double slope = (resp - res) / d;
    if (slope == 0.0 || !std::isfinite(slope))
      fail_nonconv("degenerate secant slope in the mass-flux iteration" +
                   state_context(l, v));
    ms -= res / slope;
  }
  if (converged_at < 0)
    fail_nonconv("mass-flux iteration did not converge in 50 steps" +
                 state_context(l, v));

  // Correction: re-close the energies with the converged closure heat flux so
  // the full energy jumps (heat conduction included) hold; T*, j* are kept.
  MicroEval acc = *r;
  const double q_v_star = acc.fl.q_v;
  acc.en = energy_stars(acc.mech, ms, q_v_star, dps, l, v);
  return assemble(acc, ms, q_v_star, dps, res_at, converged_at);
}

InterfaceSolution solve(SolverKind kind, const gpr_core::Material& liq,
                        const gpr_core::Material& vap, const gpr_core::Prim& ql,
                        const gpr_core::Prim& qv, double dps) {
  return kind == SolverKind::Mq ? solve_hllp_mq(liq, vap, ql, qv, dps)
                                : solve_hllp_m(liq, vap, ql, qv, dps);
}

JumpResiduals jump_residuals(const gpr_core::Material& liq,
                             const gpr_core::Material& vap, const PhaseState& l,
                             const PhaseState& v, const InterfaceSolution& s) {
  const double m_l = l.w.rho * (l.w.u - s.s_l);
  const double m_v = v.w.rho * (v.w.u - s.s_v);
  const auto scaled = [](std::initializer_list<double> terms) {
    double sum = 0.0, big = 0.0;
    for (double t : terms) {
      sum += t;
      big = std::max(big, std::abs(t));
    }
    return big > 0.0 ? std::abs(sum) / big : std::abs(sum);
  };
  const auto& a = s.star_l;
  const auto& b = s.star_v;

  JumpResiduals out;
  auto add = [&](const char* name, double r) { out.entries.emplace_back(name, r); };
  add("mass_l", scaled({m_l, -a.rho * (a.u - s.s_l)}));
  add("mass_v", scaled({m_v, -b.rho * (b.u - s.s_v)}));
  add("mass_il", scaled({s.mdot, -a.rho * (a.u - s.s_sharp)}));
  add("mass_iv", scaled({s.mdot, -b.rho * (b.u - s.s_sharp)}));
  add("mom_l", scaled({m_l * l.w.u, l.w.p, -m_l * a.u, -a.p}));
  add("mom_v", scaled({m_v * v.w.u, v.w.p, -m_v * b.u, -b.p}));
  add("mom_i", scaled({s.mdot * b.u, -s.mdot * a.u, b.p, -a.p, -s.delta_p_sigma}));
  add("en_l", scaled({m_l * l.e, l.w.u * l.w.p, l.q, -m_l * s.e_l, -a.u * a.p, -s.q_l}));
  add("en_v", scaled({m_v * v.e, v.w.u * v.w.p, v.q, -m_v * s.e_v, -b.u * b.p, -s.q_v}));
  add("en_i", scaled({s.mdot * s.e_v, b.u * b.p, s.q_v, -s.mdot * s.e_l, -a.u * a.p,
                      -s.q_l, -s.s_sharp * s.delta_p_sigma}));
  add("j_l", scaled({m_l * l.w.j, l.T, -m_l * a.j, -s.T_l}));
  add("j_v", scaled({m_v * v.w.j, v.T, -m_v * b.j, -s.T_v}));
  add("q_l_const", scaled({s.q_l, -liq.alpha2 * s.T_l * a.j}));
  add("q_v_const", scaled({s.q_v, -vap.alpha2 * s.T_v * b.j}));

  for (int i = 0; i < 7; ++i)
    out.max_mechanical = std::max(out.max_mechanical, out.entries[i].second);
  for (int i = 7; i < 12; ++i)
    out.max_thermodynamic = std::max(out.max_thermodynamic, out.entries[i].second);
  for (int i = 12; i < 14; ++i)
    out.max_constitutive = std::max(out.max_constitutive, out.entries[i].second);
  return out;
}

}  // namespace gpr1d::hllp
