#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tailent/error.hpp"
#include "tailent/experiment.hpp"
#include "tailent/numeric.hpp"

namespace tailent {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used == v.size() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::kConfig, "field '" + key + "': bad number '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long long d = std::stoll(v, &used);
    if (used == v.size() && d >= -(1LL << 31) && d < (1LL << 31)) return static_cast<int>(d);
  } catch (const std::exception&) {
  }
  fail(ErrorKind::kConfig, "field '" + key + "': bad integer '" + v + "'");
}

const std::vector<std::string>& param_keys(const std::string& experiment) {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"eps-entropy", {"lap_n_max"}},
      {"tail", {"x_count", "period_max"}},
      {"bounds", {"r"}},
      {"reparam", {"m", "seeds", "policy"}},
      {"sft", {"m_max"}},
      {"thickness", {}},
      {"weights", {"l", "m", "D", "check"}},
      {"snake", {"lambda", "C"}},
      {"modulus", {"M0", "p_cap"}},
  };
  static const std::vector<std::string> none;
  auto it = keys.find(experiment);
  return it == keys.end() ? none : it->second;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"eps-entropy", "tail",    "bounds",  "reparam", "sft",
                                                 "thickness",   "weights", "snake",   "modulus"};
  return names;
}

std::vector<double> ExperimentConfig::eps_schedule() const {
  std::vector<double> e(eps_count);
  for (int i = 0; i < eps_count; ++i) e[i] = eps_start * std::pow(eps_ratio, i);
  return e;
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "experiment=" << experiment << "\nspec=" << spec << "\neps_start=" << format_double(eps_start)
     << "\neps_ratio=" << format_double(eps_ratio) << "\neps_count=" << eps_count << "\nn_min=" << n_min
     << "\nn_max=" << n_max << "\ndelta_levels=" << delta_levels << "\ngrid_bits=" << grid_bits << "\n";
  for (const auto& [k, v] : params) os << k << "=" << v << "\n";
  return os.str();
}

unsigned long long ExperimentConfig::hash() const { return fnv1a(canonical()); }

void apply_setting(ExperimentConfig& c, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in), v = trim(value_in);
  if (key == "experiment") c.experiment = v;
  else if (key == "spec" || key == "map" || key == "sft" || key == "weight" || key == "cantor") c.spec = v;
  else if (key == "eps_start") c.eps_start = to_double(key, v);
  else if (key == "eps_ratio") c.eps_ratio = to_double(key, v);
  else if (key == "eps_count") c.eps_count = to_int(key, v);
  else if (key == "n_min") c.n_min = to_int(key, v);
  else if (key == "n_max") c.n_max = to_int(key, v);
  else if (key == "delta_levels") c.delta_levels = to_int(key, v);
  else if (key == "grid_bits") c.grid_bits = to_int(key, v);
  else if (key == "threads") c.threads = to_int(key, v);
  else if (key == "out") c.out = v;
  else if (!key.empty()) c.params[key] = v;
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::kConfig, "line " + std::to_string(lineno) + ": expected key=value");
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kConfig, "field 'config': cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

void validate(const ExperimentConfig& c) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), c.experiment) == names.end())
    fail(ErrorKind::kConfig, "field 'experiment': unknown experiment '" + c.experiment + "'");
  if (c.eps_count < 1) fail(ErrorKind::kConfig, "field 'eps_count': schedule must be nonempty");
  if (!(c.eps_ratio > 0 && c.eps_ratio < 1)) fail(ErrorKind::kConfig, "field 'eps_ratio': must lie in (0,1)");
  if (!(c.eps_start > 0)) fail(ErrorKind::kConfig, "field 'eps_start': must be positive");
  if (c.n_min < 1 || c.n_max < c.n_min) fail(ErrorKind::kConfig, "field 'n_max': need 1 <= n_min <= n_max");
  if (c.delta_levels < 1) fail(ErrorKind::kConfig, "field 'delta_levels': must be >= 1");
  if (c.grid_bits < 4 || c.grid_bits > 24) fail(ErrorKind::kConfig, "field 'grid_bits': must lie in 4..24");
  if (c.threads < 0) fail(ErrorKind::kConfig, "field 'threads': must be >= 0");
  const auto& allowed = param_keys(c.experiment);
  for (const auto& [k, v] : c.params)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      fail(ErrorKind::kConfig, "field '" + k + "': unknown for experiment " + c.experiment);
}

}  // namespace tailent
