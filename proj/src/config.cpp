#include "boltz/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "boltz/error.hpp"

namespace boltz {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (...) {
    throw ConfigError("config: bad number for " + key + ": '" + v + "'");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (...) {
    throw ConfigError("config: bad integer for " + key + ": '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config: bad boolean for " + key + ": '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  if (out.empty()) throw ConfigError("config: empty list for " + key);
  return out;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void RunConfig::apply_override(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "kernel.gamma") kernel.gamma = to_double(key, v);
  else if (key == "kernel.s") kernel.s = to_double(key, v);
  else if (key == "kernel.K") kernel.K = to_double(key, v);
  else if (key == "kernel.theta_min") kernel.theta_min = to_double(key, v);
  else if (key == "kernel.lambda") {
    if (v == "calibrate") {
      lambda_calibrate = true;
      kernel.lambda = 0.0;
    } else {
      lambda_calibrate = false;
      kernel.lambda = to_double(key, v);
    }
  } else if (key == "grid.N") grid_N = int(to_long(key, v));
  else if (key == "grid.L") grid_L = to_double(key, v);
  else if (key == "solver.scheme") {
    if (v == "euler") solver.scheme = Scheme::euler;
    else if (v == "rk4") solver.scheme = Scheme::rk4;
    else if (v == "picard") solver.scheme = Scheme::picard;
    else throw ConfigError("config: solver.scheme must be euler|rk4|picard");
  } else if (key == "solver.dt") solver.dt = to_double(key, v);
  else if (key == "solver.T") solver.T = to_double(key, v);
  else if (key == "solver.eps") solver.eps = to_double(key, v);
  else if (key == "solver.mode") {
    if (v == "cutoff-only") solver.mode = Mode::cutoff_only;
    else if (v == "compensated") solver.mode = Mode::compensated;
    else if (v == "grazing-reference") solver.mode = Mode::grazing_reference;
    else throw ConfigError("config: solver.mode must be cutoff-only|compensated|grazing-reference");
  } else if (key == "solver.record_every") solver.record_every = int(to_long(key, v));
  else if (key == "solver.snapshot_every") solver.snapshot_every = int(to_long(key, v));
  else if (key == "solver.diag_q") solver.diag_q = to_double(key, v);
  else if (key == "solver.diag_l") solver.diag_l = to_double(key, v);
  else if (key == "picard.outer_iters") solver.picard.outer_iters = int(to_long(key, v));
  else if (key == "picard.inner_dt") solver.picard.inner_dt = to_double(key, v);
  else if (key == "picard.tol_l1") solver.picard.tol_l1 = to_double(key, v);
  else if (key == "picard.gap_l") solver.picard.gap_l = to_double(key, v);
  else if (key == "picard.lagged_gain") solver.picard.lagged_gain = to_bool(key, v);
  else if (key == "quad.polar_nodes_per_panel")
    solver.collide.polar_nodes_per_panel = int(to_long(key, v));
  else if (key == "quad.panels_per_decade")
    solver.collide.panels_per_decade = int(to_long(key, v));
  else if (key == "quad.n_azimuth") solver.collide.n_azimuth = int(to_long(key, v));
  else if (key == "quad.hybrid_switch") solver.collide.hybrid_switch = to_double(key, v);
  else if (key == "quad.prune_rel") solver.collide.prune_rel = to_double(key, v);
  else if (key == "init.kind") {
    if (v != "maxwellian" && v != "gaussian-mixture" && v != "anisotropic")
      throw ConfigError("config: init.kind must be maxwellian|gaussian-mixture|anisotropic");
    init_kind = v;
  } else if (key == "init.rho") init_rho = to_double(key, v);
  else if (key == "init.ux") init_u.x = to_double(key, v);
  else if (key == "init.uy") init_u.y = to_double(key, v);
  else if (key == "init.uz") init_u.z = to_double(key, v);
  else if (key == "init.T") init_T = to_double(key, v);
  else if (key == "init.Tx") init_T_axis.x = to_double(key, v);
  else if (key == "init.Ty") init_T_axis.y = to_double(key, v);
  else if (key == "init.Tz") init_T_axis.z = to_double(key, v);
  else if (key == "init.sep") init_sep = to_double(key, v);
  else if (key == "study.eps_list") study_eps_list = to_list(key, v);
  else if (key == "study.eps_ref") study_eps_ref = to_double(key, v);
  else if (key == "study.l") study_l = to_double(key, v);
  else if (key == "study.T") study_T = to_double(key, v);
  else if (key == "io.output_dir") io_output_dir = v;
  else if (key == "io.binary") io_binary = to_bool(key, v);
  else if (key == "seed") seed = (unsigned long)(to_long(key, v));
  else throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig RunConfig::parse_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    cfg.apply_override(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os << "kernel.gamma = " << fmt(kernel.gamma) << "\n";
  os << "kernel.s = " << fmt(kernel.s) << "\n";
  os << "kernel.K = " << fmt(kernel.K) << "\n";
  os << "kernel.theta_min = " << fmt(kernel.theta_min) << "\n";
  os << "kernel.lambda = "
     << (lambda_calibrate ? std::string("calibrate") : fmt(kernel.lambda)) << "\n";
  os << "grid.N = " << grid_N << "\n";
  os << "grid.L = " << fmt(grid_L) << "\n";
  os << "solver.scheme = "
     << (solver.scheme == Scheme::euler ? "euler"
                                        : (solver.scheme == Scheme::rk4 ? "rk4" : "picard"))
     << "\n";
  os << "solver.dt = " << fmt(solver.dt) << "\n";
  os << "solver.T = " << fmt(solver.T) << "\n";
  os << "solver.eps = " << fmt(solver.eps) << "\n";
  os << "solver.mode = "
     << (solver.mode == Mode::cutoff_only
             ? "cutoff-only"
             : (solver.mode == Mode::compensated ? "compensated" : "grazing-reference"))
     << "\n";
  os << "solver.record_every = " << solver.record_every << "\n";
  os << "solver.snapshot_every = " << solver.snapshot_every << "\n";
  os << "solver.diag_q = " << fmt(solver.diag_q) << "\n";
  os << "solver.diag_l = " << fmt(solver.diag_l) << "\n";
  os << "picard.outer_iters = " << solver.picard.outer_iters << "\n";
  os << "picard.inner_dt = " << fmt(solver.picard.inner_dt) << "\n";
  os << "picard.tol_l1 = " << fmt(solver.picard.tol_l1) << "\n";
  os << "picard.gap_l = " << fmt(solver.picard.gap_l) << "\n";
  os << "picard.lagged_gain = " << (solver.picard.lagged_gain ? "true" : "false") << "\n";
  os << "quad.polar_nodes_per_panel = " << solver.collide.polar_nodes_per_panel << "\n";
  os << "quad.panels_per_decade = " << solver.collide.panels_per_decade << "\n";
  os << "quad.n_azimuth = " << solver.collide.n_azimuth << "\n";
  os << "quad.hybrid_switch = " << fmt(solver.collide.hybrid_switch) << "\n";
  os << "quad.prune_rel = " << fmt(solver.collide.prune_rel) << "\n";
  os << "init.kind = " << init_kind << "\n";
  os << "init.rho = " << fmt(init_rho) << "\n";
  os << "init.ux = " << fmt(init_u.x) << "\n";
  os << "init.uy = " << fmt(init_u.y) << "\n";
  os << "init.uz = " << fmt(init_u.z) << "\n";
  os << "init.T = " << fmt(init_T) << "\n";
  os << "init.Tx = " << fmt(init_T_axis.x) << "\n";
  os << "init.Ty = " << fmt(init_T_axis.y) << "\n";
  os << "init.Tz = " << fmt(init_T_axis.z) << "\n";
  os << "init.sep = " << fmt(init_sep) << "\n";
  os << "study.eps_list = ";
  for (std::size_t i = 0; i < study_eps_list.size(); ++i)
    os << (i ? "," : "") << fmt(study_eps_list[i]);
  os << "\n";
  os << "study.eps_ref = " << fmt(study_eps_ref) << "\n";
  os << "study.l = " << fmt(study_l) << "\n";
  os << "study.T = " << fmt(study_T) << "\n";
  os << "io.output_dir = " << io_output_dir << "\n";
  os << "io.binary = " << (io_binary ? "true" : "false") << "\n";
  os << "seed = " << seed << "\n";
  return os.str();
}

GaussianMixture RunConfig::initial_mixture() const {
  if (init_kind == "maxwellian")
    return GaussianMixture::isotropic(init_rho, init_u, init_T);
  if (init_kind == "anisotropic")
    return GaussianMixture({GaussianMixture::Component{init_rho, init_u, init_T_axis}});
  // two-component mixture split along x
  const Vec3 off{init_sep, 0, 0};
  return GaussianMixture({GaussianMixture::Component{0.5 * init_rho, init_u + off, init_T_axis},
                          GaussianMixture::Component{0.5 * init_rho, init_u - off,
                                                     {init_T, init_T, init_T}}});
}

void RunConfig::validate() const {
  kernel.validate();
  VelocityGrid g(grid_N, grid_L);  // throws on bad N, L
  solver.validate();
  if (study_eps_list.size() < 4) throw ConfigError("config: study.eps_list needs >= 4 values");
  for (std::size_t i = 1; i < study_eps_list.size(); ++i)
    if (!(study_eps_list[i] < study_eps_list[i - 1]))
      throw ConfigError("config: study.eps_list must be strictly decreasing");
}

}  // namespace boltz
