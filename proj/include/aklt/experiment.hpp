#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "aklt/lattice.hpp"
#include "aklt/percolation.hpp"
#include "aklt/reduction.hpp"
#include "aklt/sampler.hpp"
#include "aklt/threshold.hpp"

namespace aklt {

enum class DeletionKind { site, bond };

/// One experiment: a lattice family at several sizes, pushed through
/// sampling, reduction and a deletion sweep.
struct ExperimentConfig {
  std::string name;
  LatticeKind kind = LatticeKind::fig1a;
  std::vector<int> sizes;
  Boundary boundary = Boundary::cylinder;
  Scenario scenario = Scenario::worst;
  ErrorPolicy policy = ErrorPolicy::all_x;
  DeletionKind deletion = DeletionKind::site;
  int graphs = 200;  // sampled configurations per size
  int burn_in = 200;
  int thinning = 5;
  int chains = 8;
  std::vector<double> p_grid;
  int trials = 20;  // deletion trials per graph and grid point
  int bootstrap = 200;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string output;    // directory; empty means do not write files
  bool persist = false;  // also write sampled configurations and reduced graphs
};

/// Names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Flat "key = value" text, '#' comments. Keys: name, kind, sizes, boundary,
/// scenario, policy, deletion, graphs, burn_in, thinning, chains, p_grid or
/// p_min/p_max/p_step, trials, bootstrap, seed, output, persist.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config_file(const std::string& path);
void check_config(const ExperimentConfig& config);

/// Canonical text of every field that affects results (not output/persist).
std::string canonical_text(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);
std::string hex64(std::uint64_t value);

/// Shipped figure presets: fig4a, fig4b, fig4c, fig5a, fig5b, kagome.
std::vector<std::string> preset_names();
ExperimentConfig preset(const std::string& id);

struct ExperimentOutput {
  std::vector<PercolationResult> results;  // one per size, ascending L
  ThresholdEstimate threshold;
  std::uint64_t hash = 0;
  std::string csv;
  std::string json;
};

/// Graphs for one size, reduced according to the config.
std::vector<SpanningGraph> reduced_ensemble(const ExperimentConfig& config, int L,
                                            std::ostream* persist_configs = nullptr,
                                            std::ostream* persist_graphs = nullptr);

/// Runs everything and, if config.output is set, writes percolation.csv and
/// threshold.json there. Deterministic in (config, seed).
ExperimentOutput run_experiment(const ExperimentConfig& config, std::ostream* log = nullptr);

std::string results_csv(const std::vector<PercolationResult>& results, std::uint64_t hash, std::uint64_t seed);
std::string threshold_json(const ThresholdEstimate& estimate, const std::string& kind, Scenario scenario,
                           std::uint64_t hash, std::uint64_t seed);

}  // namespace aklt
