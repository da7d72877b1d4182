#pragma once

#include <string>

#include "annulus/field.hpp"

namespace annulus {

// CSV with header "r,theta,value", one line per node, r outermost, numbers
// printed with %.17g so that reading back is exact.
void write_field_csv(const std::string& path, const ScalarField& f);

// Reads a file written by write_field_csv on `grid`; throws ConfigError when
// the node count or coordinates do not match.
ScalarField read_field_csv(const std::string& path, const AnnulusGrid& grid);

}  // namespace annulus
