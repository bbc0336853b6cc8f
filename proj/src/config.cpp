#include "ipm/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "ipm/errors.hpp"

namespace ipm {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("expected a number, got '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw ConfigError("expected true or false, got '" + s + "'");
}

std::vector<double> to_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) out.push_back(to_double(item));
  return out;
}

QuadratureKind to_quadrature_kind(const std::string& s) {
  if (s == "gauss_legendre") return QuadratureKind::GaussLegendre;
  if (s == "clenshaw_curtis") return QuadratureKind::ClenshawCurtis;
  throw ConfigError("unknown quadrature kind '" + s + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"run.preset", [](RunConfig&, const std::string&) {}},
      {"run.seed", [](RunConfig& c, const std::string& v) {
         c.seed = static_cast<unsigned long>(to_int(v));
       }},

      {"problem.flux", [](RunConfig& c, const std::string& v) { c.problem.flux = parse_flux_kind(v); }},
      {"problem.advection_speed", [](RunConfig& c, const std::string& v) { c.problem.advection_speed = to_double(v); }},
      {"problem.ic", [](RunConfig& c, const std::string& v) { c.problem.ic = parse_ic_kind(v); }},
      {"problem.x0", [](RunConfig& c, const std::string& v) { c.problem.p.x0 = to_double(v); }},
      {"problem.x1", [](RunConfig& c, const std::string& v) { c.problem.p.x1 = to_double(v); }},
      {"problem.x2", [](RunConfig& c, const std::string& v) { c.problem.p.x2 = to_double(v); }},
      {"problem.x3", [](RunConfig& c, const std::string& v) { c.problem.p.x3 = to_double(v); }},
      {"problem.u_l", [](RunConfig& c, const std::string& v) { c.problem.p.u_l = to_double(v); }},
      {"problem.u_m", [](RunConfig& c, const std::string& v) { c.problem.p.u_m = to_double(v); }},
      {"problem.u_r", [](RunConfig& c, const std::string& v) { c.problem.p.u_r = to_double(v); }},
      {"problem.sigma", [](RunConfig& c, const std::string& v) { c.problem.p.sigma = to_double(v); }},
      {"problem.sigma0", [](RunConfig& c, const std::string& v) { c.problem.p.sigma0 = to_double(v); }},
      {"problem.sigma1", [](RunConfig& c, const std::string& v) { c.problem.p.sigma1 = to_double(v); }},
      {"problem.value", [](RunConfig& c, const std::string& v) { c.problem.p.value = to_double(v); }},
      {"problem.wave_number", [](RunConfig& c, const std::string& v) { c.problem.p.wave_number = to_double(v); }},
      {"problem.sine_shift", [](RunConfig& c, const std::string& v) { c.problem.p.sine_shift = to_double(v); }},
      {"problem.a", [](RunConfig& c, const std::string& v) { c.problem.a = to_double(v); }},
      {"problem.b", [](RunConfig& c, const std::string& v) { c.problem.b = to_double(v); }},
      {"problem.n_cells", [](RunConfig& c, const std::string& v) { c.problem.n_cells = to_int(v); }},
      {"problem.boundary", [](RunConfig& c, const std::string& v) { c.problem.boundary = parse_boundary_kind(v); }},
      {"problem.t_end", [](RunConfig& c, const std::string& v) { c.problem.t_end = to_double(v); }},

      {"quadrature.kind", [](RunConfig& c, const std::string& v) { c.problem.quadrature.kind = to_quadrature_kind(v); }},
      {"quadrature.points", [](RunConfig& c, const std::string& v) { c.problem.quadrature.points = to_int(v); }},
      {"quadrature.level", [](RunConfig& c, const std::string& v) { c.problem.quadrature.level = to_int(v); }},
      {"quadrature.dimension", [](RunConfig& c, const std::string& v) { c.problem.quadrature.dimension = to_int(v); }},

      {"basis.moments", [](RunConfig& c, const std::string& v) { c.problem.n_moments = to_int(v); }},

      {"entropy.kind", [](RunConfig& c, const std::string& v) { c.problem.entropy = parse_entropy_kind(v); }},
      {"entropy.delta_u", [](RunConfig& c, const std::string& v) { c.problem.delta_u = to_double(v); }},
      {"entropy.k", [](RunConfig& c, const std::string& v) { c.problem.power_k = to_int(v); }},

      {"solver.scheme", [](RunConfig& c, const std::string& v) { c.solver.scheme = parse_scheme(v); }},
      {"solver.integrator", [](RunConfig& c, const std::string& v) { c.solver.integrator = parse_integrator(v); }},
      {"solver.cfl", [](RunConfig& c, const std::string& v) { c.solver.cfl = to_double(v); }},
      {"solver.tau", [](RunConfig& c, const std::string& v) {
         if (v == "dx^(p+1)") {
           c.solver.tau_from_grid = true;
         } else {
           c.solver.tau_from_grid = false;
           c.solver.tau = to_double(v);
         }
       }},
      {"solver.gamma", [](RunConfig& c, const std::string& v) { c.solver.gamma = to_double(v); }},
      {"solver.zeta", [](RunConfig& c, const std::string& v) { c.solver.zeta = to_double(v); }},
      {"solver.max_iterations", [](RunConfig& c, const std::string& v) { c.solver.max_iterations = to_int(v); }},
      {"solver.min_newton_steps", [](RunConfig& c, const std::string& v) { c.solver.min_newton_steps = to_int(v); }},
      {"solver.parallel", [](RunConfig& c, const std::string& v) { c.solver.parallel = to_bool(v); }},

      {"output.dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; }},
      {"output.slices", [](RunConfig& c, const std::string& v) { c.slices = to_doubles(v); }},

      {"sweep.tau", [](RunConfig& c, const std::string& v) { c.sweep.tau = to_doubles(v); }},
      {"sweep.delta_u", [](RunConfig& c, const std::string& v) { c.sweep.delta_u = to_doubles(v); }},
      {"sweep.gamma", [](RunConfig& c, const std::string& v) { c.sweep.gamma = to_doubles(v); }},
      {"sweep.scheme", [](RunConfig& c, const std::string& v) {
         c.sweep.scheme.clear();
         for (const auto& s : split_list(v)) c.sweep.scheme.push_back(parse_scheme(s));
       }},
      {"sweep.n_cells", [](RunConfig& c, const std::string& v) {
         c.sweep.n_cells.clear();
         for (const auto& s : split_list(v)) c.sweep.n_cells.push_back(to_int(s));
       }},
  };
  return table;
}

}  // namespace

std::size_t SweepAxes::product_size() const {
  auto len = [](std::size_t n) { return n == 0 ? std::size_t{1} : n; };
  return len(tau.size()) * len(delta_u.size()) * len(gamma.size()) * len(scheme.size()) *
         len(n_cells.size());
}

ConfigEntries parse_config_text(const std::string& text) {
  ConfigEntries out;
  std::istringstream in(text);
  std::string raw;
  std::string section = "run";
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError(where + "malformed section header '" + line + "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    const std::string full = section + "." + key;
    if (out.values.count(full)) throw ConfigError(where + "duplicate key '" + full + "'");
    out.values[full] = {value, line_no};
  }
  return out;
}

RunConfig run_config_from_text(const std::string& text,
                               const std::optional<std::string>& preset_override) {
  const ConfigEntries entries = parse_config_text(text);
  std::string name = "burgers_ic1";
  if (auto it = entries.values.find("run.preset"); it != entries.values.end()) {
    name = it->second.value;
  }
  if (preset_override) name = *preset_override;

  RunConfig cfg;
  try {
    const Preset p = preset(name);
    cfg.problem = p.problem;
    cfg.solver = p.solver;
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("run.preset: ") + e.what());
  }
  cfg.preset_name = name;
  cfg.output_dir = std::filesystem::path("out") / name;

  const auto& table = setters();
  for (const auto& [key, entry] : entries.values) {
    const std::string where = "line " + std::to_string(entry.line) + ", key '" + key + "': ";
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(where + "unknown key");
    try {
      it->second(cfg, entry.value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  cfg.solver.t_end = cfg.problem.t_end;
  if (cfg.problem.n_moments < 1) throw ConfigError("basis.moments must be >= 1");
  if (cfg.problem.n_cells < 1) throw ConfigError("problem.n_cells must be >= 1");
  if (cfg.problem.delta_u < 0.0) throw ConfigError("entropy.delta_u must be >= 0");
  cfg.solver.validate();
  return cfg;
}

RunConfig load_run_config(const std::optional<std::filesystem::path>& path,
                          const std::optional<std::string>& preset_override) {
  std::string text;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw IoError("cannot read config file '" + path->string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return run_config_from_text(text, preset_override);
}

}  // namespace ipm
