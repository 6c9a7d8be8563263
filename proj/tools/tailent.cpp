#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>

#include "tailent/error.hpp"
#include "tailent/experiment.hpp"
#include "tailent/parallel.hpp"
#include "tailent/verify.hpp"

namespace {

struct Flags {
  std::string config;
  std::string map;
  std::optional<double> eps_start, eps_ratio;
  std::optional<int> eps_count, n_min, n_max, grid_bits, delta_levels, threads;
  std::string out;
  std::vector<std::string> params;
};

void add_experiment_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "key=value config file; flags override it");
  sub->add_option("--map,--spec", f.map, "map, sft, weight, cantor or rate spec");
  sub->add_option("--eps-start", f.eps_start, "first scale of the geometric eps schedule");
  sub->add_option("--eps-ratio", f.eps_ratio, "ratio of the eps schedule, in (0,1)");
  sub->add_option("--eps-count", f.eps_count, "number of scales");
  sub->add_option("--n-min", f.n_min, "first n (or r, p) of the range");
  sub->add_option("--n-max", f.n_max, "last n (or r, p) of the range");
  sub->add_option("--grid-bits", f.grid_bits, "log2 of the grid size");
  sub->add_option("--delta-levels", f.delta_levels, "delta = eps/2^j for j = 1..levels");
  sub->add_option("--threads", f.threads, "worker threads (default TAILENT_THREADS)");
  sub->add_option("--out", f.out, "CSV output path, - for stdout");
  sub->add_option("--param,-p", f.params, "experiment-specific key=value");
}

tailent::ExperimentConfig build_config(const std::string& experiment, const Flags& f) {
  tailent::ExperimentConfig c;
  if (!f.config.empty()) c = tailent::load_config(f.config, c);
  if (c.experiment.empty()) c.experiment = experiment;
  if (c.experiment != experiment)
    tailent::fail(tailent::ErrorKind::kConfig,
                  "field 'experiment': config says '" + c.experiment + "' but subcommand is " + experiment);
  if (!f.map.empty()) c.spec = f.map;
  if (f.eps_start) c.eps_start = *f.eps_start;
  if (f.eps_ratio) c.eps_ratio = *f.eps_ratio;
  if (f.eps_count) c.eps_count = *f.eps_count;
  if (f.n_min) c.n_min = *f.n_min;
  if (f.n_max) c.n_max = *f.n_max;
  if (f.grid_bits) c.grid_bits = *f.grid_bits;
  if (f.delta_levels) c.delta_levels = *f.delta_levels;
  if (f.threads) c.threads = *f.threads;
  if (!f.out.empty()) c.out = f.out;
  for (const auto& kv : f.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      tailent::fail(tailent::ErrorKind::kConfig, "field 'param': '" + kv + "' needs key=value");
    tailent::apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tail entropy experiments for interval maps and subshifts"};
  app.require_subcommand(1);

  const std::map<std::string, std::string> subcommands = {
      {"entropy", "eps-entropy"}, {"tail", "tail"},       {"bounds", "bounds"},   {"reparam", "reparam"},
      {"sft", "sft"},             {"thickness", "thickness"}, {"weights", "weights"}, {"snake", "snake"},
      {"modulus", "modulus"},
  };
  Flags flags;
  std::map<CLI::App*, std::string> experiment_of;
  for (const auto& [cmd, exp] : subcommands) {
    auto* sub = app.add_subcommand(cmd, "run the " + exp + " experiment and write CSV");
    add_experiment_flags(sub, flags);
    experiment_of[sub] = exp;
  }

  std::string tag = "full";
  int verify_threads = 0;
  auto* verify = app.add_subcommand("verify", "run acceptance checks and print one line per criterion");
  verify->add_option("tag", tag, "full, quick, a criterion tag or number");
  verify->add_option("--threads", verify_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      if (verify_threads > 0) tailent::set_thread_count(verify_threads);
      auto results = tailent::verify_all(tag, std::cout);
      int passed = 0;
      for (const auto& r : results) passed += r.pass;
      std::cout << passed << "/" << results.size() << " criteria passed\n";
      return passed == static_cast<int>(results.size()) ? 0 : 1;
    }
    for (const auto& [sub, exp] : experiment_of)
      if (sub->parsed()) return tailent::run_experiment_main(build_config(exp, flags), std::cerr);
  } catch (const tailent::Error& e) {
    std::cerr << "tailent: " << e.what() << '\n';
    return e.kind() == tailent::ErrorKind::kConfig ? 2 : 3;
  }
  return 2;
}
