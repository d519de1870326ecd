// Config parsing and validation. Every key must be consumed; leftovers are
// reported with their section-qualified path so typos fail loudly.
#include "gpr1d/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "gpr1d/errors.hpp"

namespace gpr1d::config {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

class Store {
 public:
  Store(const std::string& text, std::string origin)
      : origin_(std::move(origin)) {
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const std::string s = trim(raw);
      if (s.empty() || s[0] == '#' || s[0] == ';') continue;
      if (s.front() == '[') {
        if (s.back() != ']')
          fail_line(line, "malformed section header '" + s + "'");
        section = trim(s.substr(1, s.size() - 2));
        if (section.empty()) fail_line(line, "empty section name");
        sections_[section];  // record even if it stays empty
        continue;
      }
      const size_t eq = s.find('=');
      if (eq == std::string::npos)
        fail_line(line, "expected 'key = value', got '" + s + "'");
      const std::string key = trim(s.substr(0, eq));
      const std::string value = trim(s.substr(eq + 1));
      if (key.empty()) fail_line(line, "empty key");
      if (value.empty()) fail_line(line, "empty value for key '" + key + "'");
      if (section.empty())
        fail_line(line, "key '" + key + "' appears before any [section]");
      auto [it, fresh] = sections_[section].emplace(key, Entry{value, line});
      if (!fresh)
        fail_line(line, "duplicate key '" + section + "." + key +
                            "' (first at line " +
                            std::to_string(it->second.line) + ")");
    }
  }

  bool has_section(const std::string& s) const { return sections_.count(s) > 0; }

  std::optional<std::string> find(const std::string& sec,
                                  const std::string& key) {
    auto s = sections_.find(sec);
    if (s == sections_.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    k->second.used = true;
    return k->second.value;
  }

  std::string require(const std::string& sec, const std::string& key) {
    auto v = find(sec, key);
    if (!v) fail(sec + "." + key + ": required key is missing");
    return *v;
  }

  double to_double(const std::string& sec, const std::string& key,
                   const std::string& v) const {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
      fail(sec + "." + key + ": '" + v + "' is not a number");
    return x;
  }

  double require_double(const std::string& sec, const std::string& key) {
    return to_double(sec, key, require(sec, key));
  }

  double find_double(const std::string& sec, const std::string& key,
                     double fallback) {
    auto v = find(sec, key);
    return v ? to_double(sec, key, *v) : fallback;
  }

  std::optional<double> find_double_opt(const std::string& sec,
                                        const std::string& key) {
    auto v = find(sec, key);
    if (!v) return std::nullopt;
    return to_double(sec, key, *v);
  }

  int require_int(const std::string& sec, const std::string& key) {
    const std::string v = require(sec, key);
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
      fail(sec + "." + key + ": '" + v + "' is not an integer");
    return static_cast<int>(x);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(origin_ + ": " + msg);
  }
  [[noreturn]] void fail_line(int line, const std::string& msg) const {
    throw ConfigError(origin_ + ":" + std::to_string(line) + ": " + msg);
  }

  void finish(const std::vector<std::string>& allowed_sections) const {
    for (const auto& [sec, entries] : sections_) {
      if (std::find(allowed_sections.begin(), allowed_sections.end(), sec) ==
          allowed_sections.end())
        fail("unknown section [" + sec + "]");
      for (const auto& [key, e] : entries)
        if (!e.used)
          fail_line(e.line, "unknown key '" + sec + "." + key + "'");
    }
  }

  const std::string& origin() const { return origin_; }

 private:
  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::string origin_;
};

thermo::Eos parse_eos(Store& st, const std::string& sec) {
  const std::string kind = st.require(sec, "eos");
  if (kind == "ideal")
    return thermo::make_ideal(st.require_double(sec, "gamma"),
                              st.require_double(sec, "cv"));
  if (kind == "stiffened")
    return thermo::make_stiffened(st.require_double(sec, "gamma"),
                                  st.require_double(sec, "cv"),
                                  st.require_double(sec, "p_inf"));
  if (kind == "peng_robinson")
    return thermo::make_peng_robinson(
        st.require_double(sec, "rho_c"), st.require_double(sec, "p_c"),
        st.require_double(sec, "T_c"), st.require_double(sec, "M"),
        st.require_double(sec, "omega"), st.require_double(sec, "cv"));
  st.fail(sec + ".eos: unknown kind '" + kind +
          "' (ideal | stiffened | peng_robinson)");
}

MaterialSpec parse_material(Store& st, const std::string& sec) {
  MaterialSpec m;
  try {
    m.eos = parse_eos(st, sec);
  } catch (const thermo::EosError& e) {
    st.fail(sec + ": " + e.what());
  }
  m.lambda = st.require_double(sec, "lambda");
  if (!(m.lambda >= 0.0)) st.fail(sec + ".lambda: must be non-negative");
  const std::string tm = st.find(sec, "tau_model").value_or("kinetic");
  if (tm == "kinetic") {
    m.tau_model = gpr_core::TauModel::Kinetic;
  } else if (tm == "thermomass") {
    m.tau_model = gpr_core::TauModel::Thermomass;
  } else if (tm == "fixed") {
    m.tau_model = gpr_core::TauModel::Fixed;
    m.tau = st.require_double(sec, "tau");
    if (!(m.tau > 0.0)) st.fail(sec + ".tau: must be positive");
  } else {
    st.fail(sec + ".tau_model: unknown value '" + tm +
            "' (kinetic | thermomass | fixed)");
  }
  m.rho_ref = st.find_double_opt(sec, "rho_ref");
  m.T_ref = st.find_double_opt(sec, "T_ref");
  return m;
}

StateSpec parse_state(Store& st, const std::string& sec,
                      const thermo::Eos& eos) {
  StateSpec s;
  s.p = st.require_double(sec, "p");
  s.u = st.find_double(sec, "u", 0.0);
  s.j = st.find_double(sec, "j", 0.0);
  const auto rho = st.find_double_opt(sec, "rho");
  const auto T = st.find_double_opt(sec, "T");
  if (rho.has_value() == T.has_value())
    st.fail(sec + ": give exactly one of 'rho' or 'T'");
  if (rho) {
    s.rho = *rho;
  } else {
    switch (eos.kind) {
      case thermo::EosKind::Ideal:
        s.rho = s.p / (eos.R * *T);
        break;
      case thermo::EosKind::Stiffened:
        s.rho = (s.p + eos.p_inf) / (eos.R * *T);
        break;
      case thermo::EosKind::PengRobinson:
        st.fail(sec + ".T: give 'rho' explicitly for Peng-Robinson initial "
                      "states (the volume branch is ambiguous)");
    }
  }
  if (!(s.rho > 0.0)) st.fail(sec + ".rho: must be positive");
  if (!(s.p > 0.0)) st.fail(sec + ".p: must be positive");
  return s;
}

field_solver::Boundary parse_boundary(Store& st, const std::string& sec) {
  field_solver::Boundary b;
  if (!st.has_section(sec)) return b;  // transmissive default
  const std::string kind = st.find(sec, "kind").value_or("transmissive");
  if (kind == "transmissive") {
    b.kind = field_solver::BcKind::Transmissive;
  } else if (kind == "reflective") {
    b.kind = field_solver::BcKind::Reflective;
  } else if (kind == "heat_flux_wall") {
    b.kind = field_solver::BcKind::HeatFluxWall;
    b.T_wall = st.require_double(sec, "T_wall");
    b.h = st.require_double(sec, "h");
  } else if (kind == "inflow") {
    b.kind = field_solver::BcKind::Inflow;
    b.inflow.rho = st.require_double(sec, "rho");
    b.inflow.u = st.require_double(sec, "u");
    b.inflow.p = st.require_double(sec, "p");
    b.inflow.j = st.find_double(sec, "j", 0.0);
  } else {
    st.fail(sec + ".kind: unknown value '" + kind +
            "' (transmissive | reflective | heat_flux_wall | inflow)");
  }
  return b;
}

}  // namespace

RunConfig parse_string(const std::string& text, const std::string& origin) {
  Store st(text, origin);
  RunConfig c;

  c.name = st.find("scenario", "name")
               .value_or(std::filesystem::path(origin).stem().string());
  if (c.name.empty()) c.name = "run";

  const std::string model = st.find("scenario", "model").value_or("gpr");
  if (model == "gpr") {
    c.model = Model::Gpr;
  } else if (model == "euler_fourier") {
    c.model = Model::EulerFourier;
  } else {
    st.fail("scenario.model: unknown value '" + model +
            "' (gpr | euler_fourier)");
  }

  const std::string integ =
      st.find("scenario", "source_integrator").value_or("semi_analytic");
  if (integ == "semi_analytic") {
    c.integrator = relax_integrator::SourceIntegrator::SemiAnalytic;
  } else if (integ == "explicit") {
    c.integrator = relax_integrator::SourceIntegrator::Explicit;
  } else {
    st.fail("scenario.source_integrator: unknown value '" + integ +
            "' (semi_analytic | explicit)");
  }

  c.t_end = st.require_double("scenario", "t_end");
  if (!(c.t_end > 0.0)) st.fail("scenario.t_end: must be positive");
  c.cfl = st.find_double("scenario", "cfl", 0.9);
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) st.fail("scenario.cfl: must lie in (0, 1]");

  c.cells = st.require_int("domain", "cells");
  if (c.cells < 4) st.fail("domain.cells: must be at least 4");
  c.x_min = st.require_double("domain", "x_min");
  c.x_max = st.require_double("domain", "x_max");
  if (!(c.x_max > c.x_min)) st.fail("domain: x_max must exceed x_min");

  c.bc_left = parse_boundary(st, "boundary.left");
  c.bc_right = parse_boundary(st, "boundary.right");

  c.two_phase = st.has_section("interface");
  std::vector<std::string> allowed = {"scenario", "domain", "boundary.left",
                                      "boundary.right"};

  if (c.two_phase) {
    if (c.model != Model::Gpr)
      st.fail("scenario.model: the Euler-Fourier reference model does not "
              "support two-phase scenarios");
    allowed.insert(allowed.end(), {"interface", "material.liquid",
                                   "material.vapor", "init.left",
                                   "init.right"});
    c.x_gamma = st.require_double("interface", "x_gamma");
    if (!(c.x_gamma > c.x_min && c.x_gamma < c.x_max))
      st.fail("interface.x_gamma: must lie strictly inside the domain");
    const std::string side =
        st.find("interface", "liquid_side").value_or("left");
    if (side == "left") {
      c.liquid_side = ghost_fluid::Side::Left;
    } else if (side == "right") {
      c.liquid_side = ghost_fluid::Side::Right;
    } else {
      st.fail("interface.liquid_side: unknown value '" + side +
              "' (left | right)");
    }
    const std::string solver =
        st.find("interface", "interface_solver").value_or("hllp_mq");
    if (solver == "hllp_mq") {
      c.solver = hllp::SolverKind::Mq;
    } else if (solver == "hllp_m") {
      c.solver = hllp::SolverKind::M;
    } else {
      st.fail("interface.interface_solver: unknown value '" + solver +
              "' (hllp_mq | hllp_m)");
    }
    const std::string closure =
        st.find("interface", "closure").value_or("cipolla");
    if (closure != "cipolla")
      st.fail("interface.closure: unknown value '" + closure +
              "' (cipolla)");
    c.delta_p_sigma = st.find_double("interface", "delta_p_sigma", 0.0);

    c.liquid = parse_material(st, "material.liquid");
    c.vapor = parse_material(st, "material.vapor");
    const std::string lsec =
        c.liquid_side == ghost_fluid::Side::Left ? "init.left" : "init.right";
    const std::string vsec =
        c.liquid_side == ghost_fluid::Side::Left ? "init.right" : "init.left";
    StateSpec liq_state = parse_state(st, lsec, c.liquid.eos);
    StateSpec vap_state = parse_state(st, vsec, c.vapor.eos);
    c.init_kind = InitKind::Riemann;
    if (c.liquid_side == ghost_fluid::Side::Left) {
      c.init_left = liq_state;
      c.init_right = vap_state;
    } else {
      c.init_left = vap_state;
      c.init_right = liq_state;
    }
  } else {
    allowed.insert(allowed.end(), {"material", "init"});
    c.material = parse_material(st, "material");
    const std::string kind = st.find("init", "kind").value_or("uniform");
    if (kind == "uniform") {
      c.init_kind = InitKind::Uniform;
      c.init_state = parse_state(st, "init", c.material.eos);
    } else if (kind == "riemann") {
      c.init_kind = InitKind::Riemann;
      allowed.insert(allowed.end(), {"init.left", "init.right"});
      c.x_split = st.require_double("init", "x_split");
      if (!(c.x_split > c.x_min && c.x_split < c.x_max))
        st.fail("init.x_split: must lie strictly inside the domain");
      c.init_left = parse_state(st, "init.left", c.material.eos);
      c.init_right = parse_state(st, "init.right", c.material.eos);
    } else {
      st.fail("init.kind: unknown value '" + kind + "' (uniform | riemann)");
    }
  }

  if (c.model == Model::Gpr) {
    if (c.two_phase) {
      if (!(c.liquid.lambda > 0.0))
        st.fail("material.liquid.lambda: must be positive for the gpr model");
      if (!(c.vapor.lambda > 0.0))
        st.fail("material.vapor.lambda: must be positive for the gpr model");
    } else if (!(c.material.lambda > 0.0)) {
      st.fail("material.lambda: must be positive for the gpr model");
    }
  }

  st.finish(allowed);
  return c;
}

RunConfig parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_string(text.str(), path);
}

void apply_overrides(RunConfig& c, const Overrides& o) {
  if (o.solver) {
    if (!c.two_phase)
      throw ConfigError("--solver requires a two-phase scenario");
    if (*o.solver == "hllp_mq") {
      c.solver = hllp::SolverKind::Mq;
    } else if (*o.solver == "hllp_m") {
      c.solver = hllp::SolverKind::M;
    } else {
      throw ConfigError("--solver: unknown value '" + *o.solver +
                        "' (hllp_mq | hllp_m)");
    }
  }
  if (o.model) {
    if (*o.model == "gpr") {
      c.model = Model::Gpr;
    } else if (*o.model == "euler_fourier") {
      c.model = Model::EulerFourier;
    } else {
      throw ConfigError("--model: unknown value '" + *o.model +
                        "' (gpr | euler_fourier)");
    }
    if (c.model == Model::EulerFourier && c.two_phase)
      throw ConfigError(
          "--model euler_fourier: two-phase scenarios are not supported");
    if (c.model == Model::Gpr && !c.two_phase && !(c.material.lambda > 0.0))
      throw ConfigError("--model gpr: material.lambda must be positive");
  }
  if (o.integrator) {
    if (*o.integrator == "semi_analytic") {
      c.integrator = relax_integrator::SourceIntegrator::SemiAnalytic;
    } else if (*o.integrator == "explicit") {
      c.integrator = relax_integrator::SourceIntegrator::Explicit;
    } else {
      throw ConfigError("--integrator: unknown value '" + *o.integrator +
                        "' (semi_analytic | explicit)");
    }
  }
  if (o.cells) {
    if (*o.cells < 4) throw ConfigError("--cells: must be at least 4");
    c.cells = *o.cells;
  }
  if (o.cfl) {
    if (!(*o.cfl > 0.0 && *o.cfl <= 1.0))
      throw ConfigError("--cfl: must lie in (0, 1]");
    c.cfl = *o.cfl;
  }
}

gpr_core::Material build_material(const MaterialSpec& m,
                                  const StateSpec& init) {
  const double rho0 = m.rho_ref.value_or(init.rho);
  const double T0 =
      m.T_ref ? *m.T_ref
              : thermo::temperature_from_rho_p(m.eos, init.rho, init.p);
  return gpr_core::make_material(m.eos, m.lambda, rho0, T0, m.tau_model,
                                 m.tau);
}

}  // namespace gpr1d::config
