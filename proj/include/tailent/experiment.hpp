#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tailent {

inline constexpr int kCsvSchemaVersion = 1;

const std::vector<std::string>& experiment_names();

struct ExperimentConfig {
  std::string experiment;
  std::string spec;  // map, sft, weight, cantor or rate spec depending on the experiment
  double eps_start = 0.125;
  double eps_ratio = 0.5;
  int eps_count = 6;
  int n_min = 1;
  int n_max = 24;
  int delta_levels = 4;
  int grid_bits = 14;
  int threads = 0;  // 0: TAILENT_THREADS or hardware concurrency
  std::string out;  // empty or "-": stdout
  // Experiment-specific keys (x_count, M0, D, l, m, lambda, C, seeds, ...).
  std::map<std::string, std::string> params;

  std::vector<double> eps_schedule() const;
  // key=value lines of every field that affects the numbers; threads and out
  // are excluded.
  std::string canonical() const;
  unsigned long long hash() const;
};

// Sets one field from a key=value pair; unknown keys and bad values raise a
// config error naming the key.
void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value);
// Flat key=value text, '#' starts a comment.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});
void validate(const ExperimentConfig& c);

struct CsvTable {
  std::vector<std::string> header;  // after schema_version,config_hash
  std::vector<std::vector<std::string>> rows;
};

// Deterministic for a fixed config, independent of the thread count.
CsvTable run_experiment(const ExperimentConfig& c);
void write_csv(std::ostream& os, const CsvTable& t, const ExperimentConfig& c);
std::string render_csv(const ExperimentConfig& c);

// Runs, writes to c.out, reports errors on err. Exit 0, 2 (config) or 3.
int run_experiment_main(const ExperimentConfig& c, std::ostream& err);

}  // namespace tailent
