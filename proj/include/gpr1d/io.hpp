// Profile CSV and run-summary file formats. Doubles are written with %.17g
// so values round-trip exactly and identical runs produce identical bytes.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gpr1d::io {

// Column layout of profile.csv: x, rho, u, p, T, j, q, phase.
// phase is 0 for liquid (and all single-phase) cells, 1 for vapor.
struct Profile {
  std::vector<double> x, rho, u, p, T, j, q;
  std::vector<int> phase;
  size_t size() const { return x.size(); }
};

std::string format_double(double v);

void write_profile_csv(const std::string& path, const Profile&);
Profile read_profile_csv(const std::string& path);

// Ordered key = value pairs; order is preserved in the file.
using Summary = std::vector<std::pair<std::string, std::string>>;
void write_summary(const std::string& path, const Summary&);

}  // namespace gpr1d::io
