#include "annulus/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>

#include "annulus/errors.hpp"

namespace annulus {

void write_field_csv(const std::string& path, const ScalarField& f) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> out(std::fopen(path.c_str(), "w"), &std::fclose);
  if (!out) throw SolverError(ErrorKind::ConfigError, "cannot write '" + path + "'");
  const AnnulusGrid& g = f.grid();
  std::fputs("r,theta,value\n", out.get());
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.ntheta(); ++j)
      std::fprintf(out.get(), "%.17g,%.17g,%.17g\n", g.r(i), g.theta(j), f(i, j));
}

ScalarField read_field_csv(const std::string& path, const AnnulusGrid& grid) {
  std::ifstream in(path);
  if (!in) throw SolverError(ErrorKind::ConfigError, "cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "r,theta,value")
    throw SolverError(ErrorKind::ConfigError, "'" + path + "' lacks the r,theta,value header");
  ScalarField f(grid);
  for (int i = 0; i < grid.nr(); ++i)
    for (int j = 0; j < grid.ntheta(); ++j) {
      if (!std::getline(in, line))
        throw SolverError(ErrorKind::ConfigError, "'" + path + "' ends early");
      char* end = nullptr;
      const double r = std::strtod(line.c_str(), &end);
      const double t = std::strtod(end + 1, &end);
      const double v = std::strtod(end + 1, &end);
      if (r != grid.r(i) || t != grid.theta(j))
        throw SolverError(ErrorKind::ConfigError,
                          "'" + path + "' does not match the grid at line " + std::to_string(i * grid.ntheta() + j + 2));
      f(i, j) = v;
    }
  return f;
}

}  // namespace annulus
