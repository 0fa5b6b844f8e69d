#include "aklt/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "aklt/domain_graph.hpp"
#include "aklt/domains.hpp"
#include "aklt/rng.hpp"

namespace aklt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value) || !(in >> std::ws).eof()) throw ConfigError(key, "not a number: '" + text + "'");
  return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::string item;
  std::istringstream in(text);
  while (in >> item) {
    if (item.back() == ',') item.pop_back();
    if (!item.empty()) out.push_back(parse_number<T>(key, item));
  }
  return out;
}

template <typename F>
auto enum_field(const std::string& key, const std::string& value, F parse) {
  try {
    return parse(value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

std::string_view to_string(DeletionKind d) { return d == DeletionKind::site ? "site" : "bond"; }

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  std::map<std::string, std::string> kv;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number), "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (kv.count(key)) throw ConfigError(key, "given twice");
    kv[key] = trim(line.substr(eq + 1));
  }

  std::optional<double> p_min, p_max, p_step;
  for (const auto& [key, value] : kv) {
    if (key == "name") c.name = value;
    else if (key == "kind") c.kind = enum_field(key, value, parse_lattice_kind);
    else if (key == "sizes") c.sizes = parse_list<int>(key, value);
    else if (key == "boundary") c.boundary = enum_field(key, value, parse_boundary);
    else if (key == "scenario") c.scenario = enum_field(key, value, parse_scenario);
    else if (key == "policy") c.policy = enum_field(key, value, parse_error_policy);
    else if (key == "deletion") {
      if (value == "site") c.deletion = DeletionKind::site;
      else if (value == "bond") c.deletion = DeletionKind::bond;
      else throw ConfigError(key, "expected site or bond");
    }
    else if (key == "graphs") c.graphs = parse_number<int>(key, value);
    else if (key == "burn_in") c.burn_in = parse_number<int>(key, value);
    else if (key == "thinning") c.thinning = parse_number<int>(key, value);
    else if (key == "chains") c.chains = parse_number<int>(key, value);
    else if (key == "p_grid") c.p_grid = parse_list<double>(key, value);
    else if (key == "p_min") p_min = parse_number<double>(key, value);
    else if (key == "p_max") p_max = parse_number<double>(key, value);
    else if (key == "p_step") p_step = parse_number<double>(key, value);
    else if (key == "trials") c.trials = parse_number<int>(key, value);
    else if (key == "bootstrap") c.bootstrap = parse_number<int>(key, value);
    else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(key, value);
      c.has_seed = true;
    }
    else if (key == "output") c.output = value;
    else if (key == "persist") {
      if (value != "true" && value != "false") throw ConfigError(key, "expected true or false");
      c.persist = value == "true";
    }
    else throw ConfigError(key, "unknown key");
  }
  if (p_min || p_max || p_step) {
    if (!c.p_grid.empty()) throw ConfigError("p_grid", "give either p_grid or p_min/p_max/p_step");
    try {
      c.p_grid = make_grid(p_min.value_or(0.0), p_max.value_or(0.4), p_step.value_or(0.02));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("p_step", e.what());
    }
  }
  if (c.p_grid.empty()) c.p_grid = make_grid(0.0, 0.4, 0.02);
  check_config(c);
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  return parse_config(in);
}

void check_config(const ExperimentConfig& c) {
  if (!c.has_seed) throw ConfigError("seed", "required");
  if (c.kind == LatticeKind::custom) throw ConfigError("kind", "experiments need a named lattice kind");
  if (c.sizes.empty()) throw ConfigError("sizes", "empty");
  for (int L : c.sizes)
    if (L < 2) throw ConfigError("sizes", "every size must be >= 2");
  auto sorted = c.sizes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ConfigError("sizes", "duplicate size");
  if (c.boundary == Boundary::torus) throw ConfigError("boundary", "torus has no spanning sides");
  if (c.graphs < 1) throw ConfigError("graphs", "must be >= 1");
  if (c.burn_in < 0) throw ConfigError("burn_in", "must be >= 0");
  if (c.thinning < 1) throw ConfigError("thinning", "must be >= 1");
  if (c.chains < 1) throw ConfigError("chains", "must be >= 1");
  if (c.trials < 1) throw ConfigError("trials", "must be >= 1");
  if (c.bootstrap < 0) throw ConfigError("bootstrap", "must be >= 0");
  if (c.p_grid.empty()) throw ConfigError("p_grid", "empty");
  for (std::size_t i = 0; i < c.p_grid.size(); ++i) {
    if (!(c.p_grid[i] >= 0.0 && c.p_grid[i] <= 1.0)) throw ConfigError("p_grid", "values must lie in [0, 1]");
    if (i > 0 && c.p_grid[i] <= c.p_grid[i - 1]) throw ConfigError("p_grid", "must be strictly increasing");
  }
}

std::string canonical_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "kind=" << to_string(c.kind) << "\nsizes=";
  for (std::size_t i = 0; i < c.sizes.size(); ++i) out << (i ? " " : "") << c.sizes[i];
  out << "\nboundary=" << to_string(c.boundary) << "\nscenario=" << to_string(c.scenario)
      << "\npolicy=" << to_string(c.policy) << "\ndeletion=" << to_string(c.deletion) << "\ngraphs=" << c.graphs
      << "\nburn_in=" << c.burn_in << "\nthinning=" << c.thinning << "\nchains=" << c.chains << "\np_grid=";
  for (std::size_t i = 0; i < c.p_grid.size(); ++i) out << (i ? " " : "") << format_double(c.p_grid[i]);
  out << "\ntrials=" << c.trials << "\nbootstrap=" << c.bootstrap << "\nseed=" << c.seed << '\n';
  return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& c) {
  // FNV-1a, 64 bit
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_text(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::vector<std::string> preset_names() { return {"fig4a", "fig4b", "fig4c", "fig5a", "fig5b", "kagome"}; }

ExperimentConfig preset(const std::string& id) {
  ExperimentConfig c;
  c.name = id;
  c.has_seed = true;
  c.p_grid = make_grid(0.0, 0.4, 0.02);
  c.policy = ErrorPolicy::phase;
  if (id == "fig4a" || id == "fig4b" || id == "fig4c") {
    c.kind = id == "fig4a" ? LatticeKind::fig1a : id == "fig4b" ? LatticeKind::fig1b : LatticeKind::fig1c;
    c.sizes = {10, 20, 40};
    c.seed = id == "fig4a" ? 41 : id == "fig4b" ? 42 : 43;
  } else if (id == "fig5a") {
    c.kind = LatticeKind::decorated_kagome;
    c.sizes = {20, 40, 60};
    c.p_grid = make_grid(0.0, 0.1, 0.01);
    c.seed = 51;
  } else if (id == "fig5b") {
    c.kind = LatticeKind::decorated_star;
    c.sizes = {10, 20, 40};
    c.seed = 52;
  } else if (id == "kagome") {
    c.kind = LatticeKind::kagome;
    c.sizes = {10, 20, 30};
    c.scenario = Scenario::best;
    c.seed = 61;
  } else {
    throw ConfigError("figure", "unknown preset '" + id + "'");
  }
  c.output = "results/" + id;
  return c;
}

std::vector<SpanningGraph> reduced_ensemble(const ExperimentConfig& config, int L, std::ostream* persist_configs,
                                            std::ostream* persist_graphs) {
  const Lattice lattice = build_lattice(config.kind, L, config.boundary);
  ChainParams chain;
  chain.burn_in_sweeps = config.burn_in;
  chain.thinning_sweeps = config.thinning;
  chain.chains = config.chains;
  chain.seed = derive_seed(config.seed, {1, static_cast<std::uint64_t>(L)});
  const auto samples = sample_configurations(lattice, config.graphs, chain);

  std::vector<DomainGraph> reduced(samples.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t k = 0; k < samples.size(); ++k)
    reduced[k] = config.scenario == Scenario::worst ? worst_case_reduce(lattice, samples[k], config.policy)
                                                    : best_case_reduce(lattice, samples[k]);

  std::vector<SpanningGraph> graphs;
  graphs.reserve(reduced.size());
  for (std::size_t k = 0; k < reduced.size(); ++k) {
    if (persist_configs) {
      *persist_configs << "# sample " << k << '\n';
      write_configuration(*persist_configs, samples[k]);
    }
    if (persist_graphs) {
      *persist_graphs << "# graph " << k << '\n';
      write_domain_graph(*persist_graphs, reduced[k]);
    }
    graphs.push_back(SpanningGraph::from(reduced[k]));
  }
  return graphs;
}

std::string results_csv(const std::vector<PercolationResult>& results, std::uint64_t hash, std::uint64_t seed) {
  std::ostringstream out;
  out << "# config_hash=" << hex64(hash) << " seed=" << seed << '\n';
  out << "kind,scenario,L,p_delete,p_span,stderr,trials,seed\n";
  for (const auto& r : results)
    for (std::size_t i = 0; i < r.p_grid.size(); ++i)
      out << r.kind << ',' << to_string(r.scenario) << ',' << r.L << ',' << format_double(r.p_grid[i]) << ','
          << format_double(r.p_span(i)) << ',' << format_double(r.stderr_at(i)) << ',' << r.trials << ',' << r.seed
          << '\n';
  return out.str();
}

std::string threshold_json(const ThresholdEstimate& est, const std::string& kind, Scenario scenario,
                           std::uint64_t hash, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  j["scenario"] = std::string(to_string(scenario));
  j["status"] = std::string(to_string(est.status));
  if (est.status == ThresholdStatus::no_crossing) {
    j["p_c"] = nullptr;
    j["uncertainty"] = nullptr;
  } else {
    j["p_c"] = est.p_c;
    j["uncertainty"] = nullptr;
    if (est.status == ThresholdStatus::crossing) j["uncertainty"] = est.uncertainty;
  }
  j["sizes"] = est.sizes;
  auto crossings = nlohmann::ordered_json::array();
  for (const auto& c : est.crossings) crossings.push_back({{"L_small", c.L_small}, {"L_large", c.L_large}, {"p", c.p}});
  j["crossings"] = crossings;
  j["bootstrap_used"] = est.bootstrap_used;
  j["config_hash"] = hex64(hash);
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

ExperimentOutput run_experiment(const ExperimentConfig& config, std::ostream* log) {
  check_config(config);
  ExperimentOutput out;
  out.hash = config_hash(config);
  auto sizes = config.sizes;
  std::sort(sizes.begin(), sizes.end());

  namespace fs = std::filesystem;
  if (!config.output.empty()) fs::create_directories(config.output);

  for (int L : sizes) {
    std::ofstream configs_file, graphs_file;
    if (config.persist && !config.output.empty()) {
      configs_file.open(fs::path(config.output) / ("configs_L" + std::to_string(L) + ".txt"));
      graphs_file.open(fs::path(config.output) / ("graphs_L" + std::to_string(L) + ".txt"));
      configs_file << "# config_hash=" << hex64(out.hash) << " seed=" << config.seed << '\n';
      graphs_file << "# config_hash=" << hex64(out.hash) << " seed=" << config.seed << '\n';
    }
    const auto graphs = reduced_ensemble(config, L, configs_file.is_open() ? &configs_file : nullptr,
                                         graphs_file.is_open() ? &graphs_file : nullptr);
    const std::uint64_t sweep_seed = derive_seed(config.seed, {2, static_cast<std::uint64_t>(L)});
    PercolationResult r = config.deletion == DeletionKind::site
                              ? deletion_sweep(graphs, config.p_grid, config.trials, sweep_seed)
                              : bond_deletion_sweep(graphs, config.p_grid, config.trials, sweep_seed);
    r.kind = std::string(to_string(config.kind));
    r.scenario = config.scenario;
    r.L = L;
    r.seed = config.seed;
    if (log) {
      *log << to_string(config.kind) << " L=" << L << " p_span:";
      for (std::size_t i = 0; i < r.p_grid.size(); ++i) *log << ' ' << format_double(r.p_span(i));
      if (r.missing_side) *log << " (graphs missing a side: " << r.missing_side << ')';
      *log << '\n';
    }
    out.results.push_back(std::move(r));
  }

  if (out.results.size() >= 2 && config.p_grid.size() >= 2) {
    ThresholdOptions options;
    options.bootstrap_resamples = config.bootstrap;
    options.seed = derive_seed(config.seed, {3});
    out.threshold = estimate_threshold(out.results, options);
  } else {
    out.threshold.sizes = sizes;
  }
  out.csv = results_csv(out.results, out.hash, config.seed);
  out.json = threshold_json(out.threshold, std::string(to_string(config.kind)), config.scenario, out.hash, config.seed);

  if (!config.output.empty()) {
    std::ofstream(fs::path(config.output) / "percolation.csv") << out.csv;
    std::ofstream(fs::path(config.output) / "threshold.json") << out.json;
  }
  return out;
}

}  // namespace aklt
