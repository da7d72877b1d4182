#include "annulus/config.hpp"

#include <yaml-cpp/yaml.h>

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "annulus/errors.hpp"

namespace annulus {

namespace {

constexpr std::array<std::pair<BCKind, std::string_view>, 9> kKinds{{
    {BCKind::BC1, "BC1"},
    {BCKind::BC2, "BC2"},
    {BCKind::BC3, "BC3"},
    {BCKind::BC3prime, "BC3prime"},
    {BCKind::BC4, "BC4"},
    {BCKind::BC5, "BC5"},
    {BCKind::BC5prime, "BC5prime"},
    {BCKind::BC1star, "BC1star"},
    {BCKind::BC2star, "BC2star"},
}};

constexpr std::array<std::pair<Method, std::string_view>, 3> kMethods{{
    {Method::grad_shafranov, "grad_shafranov"},
    {Method::vortex_transport, "vortex_transport"},
    {Method::both, "both"},
}};

[[noreturn]] void config_error(const std::string& msg) {
  throw SolverError(ErrorKind::ConfigError, msg);
}

void check_keys(const YAML::Node& node, const std::string& where,
                std::initializer_list<std::string_view> allowed) {
  if (!node.IsMap()) config_error(where + " must be a mapping");
  const std::set<std::string_view> ok(allowed);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!ok.count(key)) config_error("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get(const YAML::Node& node, const char* key, T fallback, const std::string& where) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    config_error("bad value for '" + std::string(key) + "' in " + where);
  }
}

BoundaryFunction fourier(const YAML::Node& node, const std::string& where) {
  if (!node) return BoundaryFunction::constant(0.0);
  if (node.IsScalar()) {
    try {
      return BoundaryFunction::constant(node.as<double>());
    } catch (const YAML::Exception&) {
      config_error("bad value for " + where);
    }
  }
  check_keys(node, where, {"mean", "cos", "sin"});
  return BoundaryFunction(get<double>(node, "mean", 0.0, where),
                          get<std::vector<double>>(node, "cos", {}, where),
                          get<std::vector<double>>(node, "sin", {}, where));
}

}  // namespace

std::string_view to_string(BCKind kind) {
  for (const auto& [k, s] : kKinds)
    if (k == kind) return s;
  return "?";
}

std::string_view to_string(Method method) {
  for (const auto& [m, s] : kMethods)
    if (m == method) return s;
  return "?";
}

BCKind parse_bc_kind(std::string_view s) {
  for (const auto& [k, name] : kKinds)
    if (name == s) return k;
  config_error("unknown bc_kind '" + std::string(s) + "'");
}

Method parse_method(std::string_view s) {
  for (const auto& [m, name] : kMethods)
    if (name == s) return m;
  config_error("unknown method '" + std::string(s) + "'");
}

bool is_primed(BCKind kind) { return kind == BCKind::BC3prime || kind == BCKind::BC5prime; }

void check_compatibility(BCKind kind, Method method) {
  bool ok = false;
  switch (method) {
    case Method::grad_shafranov:
      ok = kind == BCKind::BC1 || kind == BCKind::BC2 || kind == BCKind::BC3;
      break;
    case Method::vortex_transport:
      ok = kind != BCKind::BC1 && kind != BCKind::BC2;
      break;
    case Method::both:
      ok = kind == BCKind::BC1 || kind == BCKind::BC2 || kind == BCKind::BC1star ||
           kind == BCKind::BC2star || kind == BCKind::BC3;
      break;
  }
  if (!ok)
    config_error("method " + std::string(to_string(method)) + " does not support " +
                 std::string(to_string(kind)));
}

GridSpec parse_grid(std::string_view s, GridSpec base) {
  const auto x = s.find('x');
  auto number = [&](std::string_view part) {
    int v = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size())
      config_error("grid must look like NRxNT, got '" + std::string(s) + "'");
    return v;
  };
  if (x == std::string_view::npos) config_error("grid must look like NRxNT, got '" + std::string(s) + "'");
  base.nr = number(s.substr(0, x));
  base.ntheta = number(s.substr(x + 1));
  return base;
}

RunConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    config_error(std::string("cannot parse config: ") + e.what());
  }
  check_keys(root, "config",
             {"bc_kind", "method", "grid", "data", "solver", "oracle", "output"});
  RunConfig cfg;
  if (!root["bc_kind"]) config_error("bc_kind is required");
  cfg.bc_kind = parse_bc_kind(root["bc_kind"].as<std::string>());
  cfg.method = parse_method(get<std::string>(root, "method", "vortex_transport", "config"));

  if (const YAML::Node g = root["grid"]) {
    check_keys(g, "grid", {"r0", "r1", "nr", "ntheta"});
    cfg.grid.r0 = get<double>(g, "r0", cfg.grid.r0, "grid");
    cfg.grid.r1 = get<double>(g, "r1", cfg.grid.r1, "grid");
    cfg.grid.nr = get<int>(g, "nr", cfg.grid.nr, "grid");
    cfg.grid.ntheta = get<int>(g, "ntheta", cfg.grid.ntheta, "grid");
  }

  if (const YAML::Node d = root["data"]) {
    check_keys(d, "data", {"f0", "f1", "b0", "p0", "p1", "T_shift", "j0", "p1_at_0"});
    cfg.f0 = fourier(d["f0"], "data.f0");
    cfg.f1 = fourier(d["f1"], "data.f1");
    cfg.b0 = fourier(d["b0"], "data.b0");
    cfg.p0 = fourier(d["p0"], "data.p0");
    cfg.p1 = fourier(d["p1"], "data.p1");
    cfg.T_shift = fourier(d["T_shift"], "data.T_shift");
    cfg.j0 = get<double>(d, "j0", 0.0, "data");
    if (const YAML::Node p = d["p1_at_0"]) {
      if (p.IsScalar() && p.Scalar() == "trace")
        cfg.p1_at_trace = true;
      else
        cfg.p1_at_0 = get<double>(d, "p1_at_0", 0.0, "data");
    }
  }

  if (const YAML::Node s = root["solver"]) {
    check_keys(s, "solver", {"gs", "fixed_point", "pressure"});
    if (const YAML::Node gs = s["gs"]) {
      check_keys(gs, "solver.gs",
                 {"picard_tol", "max_iters", "relaxation", "relaxation_fallback", "smallness_cap"});
      cfg.gs.picard_tol = get<double>(gs, "picard_tol", cfg.gs.picard_tol, "solver.gs");
      cfg.gs.max_iters = get<int>(gs, "max_iters", cfg.gs.max_iters, "solver.gs");
      cfg.gs.relaxation = get<double>(gs, "relaxation", cfg.gs.relaxation, "solver.gs");
      cfg.gs.relaxation_fallback =
          get<bool>(gs, "relaxation_fallback", cfg.gs.relaxation_fallback, "solver.gs");
      cfg.gs.smallness_cap = get<double>(gs, "smallness_cap", cfg.gs.smallness_cap, "solver.gs");
    }
    if (const YAML::Node fp = s["fixed_point"]) {
      check_keys(fp, "solver.fixed_point", {"fp_tol", "max_iters", "ode_steps_per_cell"});
      auto& f = cfg.fixed_point;
      f.fp_tol = get<double>(fp, "fp_tol", f.fp_tol, "solver.fixed_point");
      f.max_iters = get<int>(fp, "max_iters", f.max_iters, "solver.fixed_point");
      f.ode_steps_per_cell = get<int>(fp, "ode_steps_per_cell", f.ode_steps_per_cell, "solver.fixed_point");
    }
    if (const YAML::Node p = s["pressure"]) {
      check_keys(p, "solver.pressure", {"curl_const", "compat_tol"});
      cfg.curl_const = get<double>(p, "curl_const", cfg.curl_const, "solver.pressure");
      cfg.compat_tol = get<double>(p, "compat_tol", cfg.compat_tol, "solver.pressure");
    }
  }

  if (const YAML::Node o = root["oracle"]) {
    check_keys(o, "oracle", {"kind", "a", "c"});
    const auto kind = get<std::string>(o, "kind", "none", "oracle");
    if (kind == "none")
      cfg.oracle.kind = Oracle::Kind::none;
    else if (kind == "base_flow")
      cfg.oracle.kind = Oracle::Kind::base_flow;
    else if (kind == "swirl")
      cfg.oracle.kind = Oracle::Kind::swirl;
    else
      config_error("unknown oracle kind '" + kind + "'");
    cfg.oracle.a = get<double>(o, "a", 1.0, "oracle");
    cfg.oracle.c = get<double>(o, "c", 0.0, "oracle");
  }

  if (const YAML::Node out = root["output"]) {
    check_keys(out, "output", {"dir", "write_fields"});
    cfg.out_dir = get<std::string>(out, "dir", cfg.out_dir, "output");
    cfg.write_fields = get<bool>(out, "write_fields", cfg.write_fields, "output");
  }

  if (cfg.gs.picard_tol <= 0 || cfg.gs.max_iters <= 0 || cfg.gs.relaxation <= 0 ||
      cfg.gs.relaxation > 1)
    config_error("solver.gs needs picard_tol > 0, max_iters > 0, 0 < relaxation <= 1");
  if (cfg.fixed_point.fp_tol <= 0 || cfg.fixed_point.max_iters <= 0 ||
      cfg.fixed_point.ode_steps_per_cell <= 0)
    config_error("solver.fixed_point values must be positive");
  if (cfg.compat_tol <= 0 || cfg.curl_const <= 0) config_error("solver.pressure values must be positive");
  check_compatibility(cfg.bc_kind, cfg.method);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace annulus
