// Run orchestration: build a simulation from a parsed config, march to
// t_end, extract the profile, and support comparison and convergence drivers.
#pragma once

#include <string>
#include <vector>

#include "gpr1d/config.hpp"
#include "gpr1d/io.hpp"

namespace gpr1d::runner {

struct RunResult {
  long steps = 0;
  double wall_seconds = 0.0;
  double final_time = 0.0;
  io::Profile profile;
  io::Summary diagnostics;  // full summary, ordered for the summary file
};

RunResult run_scenario(const config::RunConfig&);

// Writes <out_dir>/profile.csv and <out_dir>/summary.txt.
void write_outputs(const RunResult&, const std::string& out_dir);

// Relative L2/Linf differences per field, normalized by the second profile.
struct FieldDiff {
  std::string field;
  double rel_l2 = 0.0;
  double rel_linf = 0.0;
};
std::vector<FieldDiff> compare_profiles(const io::Profile& a,
                                        const io::Profile& b);

// Factor-average restriction onto a coarser grid; sizes must divide evenly.
std::vector<double> restrict_average(const std::vector<double>& fine,
                                     int coarse_cells);

// L2 differences between successive resolutions (fine restricted onto the
// coarse grid, normalized by the coarse solution).
struct ConvergenceRow {
  int cells_coarse = 0, cells_fine = 0;
  double rel_l2_rho = 0.0, rel_l2_u = 0.0;
};
std::vector<ConvergenceRow> run_convergence(const config::RunConfig&,
                                            const std::vector<int>& cells);

}  // namespace gpr1d::runner
