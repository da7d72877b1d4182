#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "annulus/boundary_function.hpp"
#include "annulus/grad_shafranov.hpp"
#include "annulus/transport.hpp"

namespace annulus {

enum class BCKind { BC1, BC2, BC3, BC3prime, BC4, BC5, BC5prime, BC1star, BC2star };
enum class Method { grad_shafranov, vortex_transport, both };

std::string_view to_string(BCKind kind);
std::string_view to_string(Method method);
BCKind parse_bc_kind(std::string_view s);
Method parse_method(std::string_view s);

bool is_primed(BCKind kind);
// Throws ConfigError when the method cannot solve the boundary condition.
void check_compatibility(BCKind kind, Method method);

struct GridSpec {
  double r0 = 1.0, r1 = 2.0;
  int nr = 65, ntheta = 128;

  AnnulusGrid make() const { return {r0, r1, nr, ntheta}; }
};

// Exact solutions used as error references by verify and converge.
struct Oracle {
  enum class Kind { none, base_flow, swirl } kind = Kind::none;
  double a = 1.0, c = 0.0;  // swirl u = (a/r, c/r)
};

// All boundary data are perturbations of the reference flow: r0 u_r = 1 + f0,
// r1 u_r = 1 + f1, p0 and p1 add to -1/(2 r^2), T(theta) = theta + T_shift.
struct RunConfig {
  BCKind bc_kind = BCKind::BC4;
  Method method = Method::vortex_transport;
  GridSpec grid;
  BoundaryFunction f0, f1, b0, p0, p1, T_shift;
  double j0 = 0.0;
  // Primed kinds: value imposed for p1(0) in the compatibility check. Unset
  // means p1(0) from the series; p1_at_trace uses the computed trace.
  std::optional<double> p1_at_0;
  bool p1_at_trace = false;
  GSConfig gs;
  FixedPointConfig fixed_point;
  double curl_const = 10.0;
  double compat_tol = 1e-6;
  Oracle oracle;
  std::string out_dir = "out";
  bool write_fields = true;
};

RunConfig parse_config(const std::string& yaml_text);
RunConfig load_config(const std::string& path);

// "NRxNT", e.g. "65x128".
GridSpec parse_grid(std::string_view s, GridSpec base);

}  // namespace annulus
