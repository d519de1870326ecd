// CSV writer/reader for profiles and the plain-text run summary.
#include "gpr1d/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gpr1d/errors.hpp"

namespace gpr1d::io {

namespace {

constexpr const char* kHeader = "x,rho,u,p,T,j,q,phase";

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_profile_csv(const std::string& path, const Profile& p) {
  const size_t n = p.size();
  if (p.rho.size() != n || p.u.size() != n || p.p.size() != n ||
      p.T.size() != n || p.j.size() != n || p.q.size() != n ||
      p.phase.size() != n)
    throw ConfigError(path + ": profile columns have mismatched lengths");
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  out << kHeader << '\n';
  for (size_t i = 0; i < n; ++i) {
    out << format_double(p.x[i]) << ',' << format_double(p.rho[i]) << ','
        << format_double(p.u[i]) << ',' << format_double(p.p[i]) << ','
        << format_double(p.T[i]) << ',' << format_double(p.j[i]) << ','
        << format_double(p.q[i]) << ',' << p.phase[i] << '\n';
  }
  if (!out) fail(path, "write failed");
}

Profile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open profile CSV");
  std::string line;
  if (!std::getline(in, line)) fail(path, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    fail(path, "unexpected header '" + line + "' (want '" + kHeader + "')");

  Profile p;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double vals[7];
    const char* s = line.c_str();
    char* end = nullptr;
    for (int c = 0; c < 7; ++c) {
      vals[c] = std::strtod(s, &end);
      if (end == s || *end != ',')
        fail(path, "line " + std::to_string(lineno) + ": malformed row");
      s = end + 1;
    }
    const long phase = std::strtol(s, &end, 10);
    if (end == s || *end != '\0')
      fail(path, "line " + std::to_string(lineno) + ": malformed phase column");
    p.x.push_back(vals[0]);
    p.rho.push_back(vals[1]);
    p.u.push_back(vals[2]);
    p.p.push_back(vals[3]);
    p.T.push_back(vals[4]);
    p.j.push_back(vals[5]);
    p.q.push_back(vals[6]);
    p.phase.push_back(static_cast<int>(phase));
  }
  if (p.size() == 0) fail(path, "profile has no rows");
  return p;
}

void write_summary(const std::string& path, const Summary& s) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  for (const auto& [k, v] : s) out << k << " = " << v << '\n';
  if (!out) fail(path, "write failed");
}

}  // namespace gpr1d::io
