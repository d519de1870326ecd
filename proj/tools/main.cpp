// Command-line entry point: `run <config>` marches a scenario and writes CSV
// outputs; `compare <a> <b>` reports relative differences between two runs.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "gpr1d/config.hpp"
#include "gpr1d/errors.hpp"
#include "gpr1d/io.hpp"
#include "gpr1d/runner.hpp"

namespace {

std::string resolve_profile_path(const std::string& arg) {
  if (std::filesystem::is_directory(arg)) return arg + "/profile.csv";
  return arg;
}

std::vector<int> parse_cells_list(const std::string& s) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    const size_t comma = s.find(',', pos);
    const std::string tok =
        s.substr(pos, comma == std::string::npos ? std::string::npos
                                                 : comma - pos);
    if (tok.empty())
      throw gpr1d::ConfigError("--convergence: empty entry in cell list");
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw gpr1d::ConfigError("--convergence: '" + tok +
                               "' is not an integer");
    }
    if (used != tok.size())
      throw gpr1d::ConfigError("--convergence: '" + tok +
                               "' is not an integer");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D hyperbolic heat-conduction and liquid-vapor phase "
               "transition solver"};
  app.require_subcommand(1);

  std::string cfg_path, out_dir = "out";
  std::string solver, model, integrator, convergence;
  int cells = 0;
  double cfl = 0.0;
  CLI::App* run = app.add_subcommand("run", "Run a scenario config file");
  run->add_option("config", cfg_path, "Scenario config file")->required();
  run->add_option("--out", out_dir, "Output directory (default: out)");
  run->add_option("--solver", solver, "Interface solver override")
      ->check(CLI::IsMember({"hllp_mq", "hllp_m"}));
  run->add_option("--model", model, "Model override")
      ->check(CLI::IsMember({"gpr", "euler_fourier"}));
  run->add_option("--integrator", integrator, "Source integrator override")
      ->check(CLI::IsMember({"semi_analytic", "explicit"}));
  run->add_option("--cells", cells, "Cell count override");
  run->add_option("--cfl", cfl, "CFL number override");
  run->add_option("--convergence", convergence,
                  "Comma-separated cell counts; runs the scenario at each "
                  "resolution and prints successive L2 differences");

  std::string path_a, path_b;
  CLI::App* cmp = app.add_subcommand(
      "compare", "Compare two run outputs (directories or profile CSVs)");
  cmp->add_option("a", path_a, "First run directory or profile.csv")
      ->required();
  cmp->add_option("b", path_b, "Second run directory or profile.csv")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      gpr1d::config::RunConfig cfg = gpr1d::config::parse_file(cfg_path);
      gpr1d::config::Overrides o;
      if (!solver.empty()) o.solver = solver;
      if (!model.empty()) o.model = model;
      if (!integrator.empty()) o.integrator = integrator;
      if (cells > 0) o.cells = cells;
      if (cfl > 0.0) o.cfl = cfl;
      gpr1d::config::apply_overrides(cfg, o);

      if (!convergence.empty()) {
        const std::vector<int> list = parse_cells_list(convergence);
        const auto rows = gpr1d::runner::run_convergence(cfg, list);
        std::printf("cells_coarse,cells_fine,rel_l2_rho,rel_l2_u\n");
        for (const auto& r : rows)
          std::printf("%d,%d,%s,%s\n", r.cells_coarse, r.cells_fine,
                      gpr1d::io::format_double(r.rel_l2_rho).c_str(),
                      gpr1d::io::format_double(r.rel_l2_u).c_str());
        return 0;
      }

      const gpr1d::runner::RunResult res = gpr1d::runner::run_scenario(cfg);
      gpr1d::runner::write_outputs(res, out_dir);
      for (const auto& [k, v] : res.diagnostics)
        std::printf("%s = %s\n", k.c_str(), v.c_str());
      return 0;
    }

    const gpr1d::io::Profile a =
        gpr1d::io::read_profile_csv(resolve_profile_path(path_a));
    const gpr1d::io::Profile b =
        gpr1d::io::read_profile_csv(resolve_profile_path(path_b));
    const auto diffs = gpr1d::runner::compare_profiles(a, b);
    std::printf("field,rel_l2,rel_linf\n");
    for (const auto& fd : diffs)
      std::printf("%s,%s,%s\n", fd.field.c_str(),
                  gpr1d::io::format_double(fd.rel_l2).c_str(),
                  gpr1d::io::format_double(fd.rel_linf).c_str());
    return 0;
  } catch (const gpr1d::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const gpr1d::Error& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
