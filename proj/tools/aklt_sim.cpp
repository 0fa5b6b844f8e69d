// aklt-sim: command-line front end for the lattice / sampling / reduction /
// percolation pipeline.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "aklt/domain_graph.hpp"
#include "aklt/experiment.hpp"
#include "aklt/lattice.hpp"
#include "aklt/lattice_io.hpp"
#include "aklt/percolation.hpp"
#include "aklt/reduction.hpp"
#include "aklt/sampler.hpp"
#include "aklt/selfcheck.hpp"
#include "aklt/threshold.hpp"

using namespace aklt;

namespace {

struct LatticeOpts {
  std::string kind = "fig1a";
  int L = 4;
  std::string boundary = "cylinder";
  std::string custom;

  void add(CLI::App* app) {
    app->add_option("--kind", kind, "fig1a fig1b fig1c kagome decorated_kagome decorated_star");
    app->add_option("-L,--size", L, "linear size in unit cells");
    app->add_option("--boundary", boundary, "open, cylinder or torus");
    app->add_option("--custom", custom, "load a custom graph file instead");
  }
  Lattice build() const {
    if (!custom.empty()) return load_custom_file(custom);
    return build_lattice(parse_lattice_kind(kind), L, parse_boundary(boundary));
  }
};

// Writes to the named file, or stdout for "" / "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

// True if more non-comment content follows.
bool more_records(std::istream& in) {
  while (in) {
    const int c = in.peek();
    if (c == EOF) return false;
    if (c == '#' || c == '\n' || c == '\r' || c == ' ') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    return true;
  }
  return false;
}

std::vector<double> grid_from(const std::string& list, double lo, double hi, double step) {
  if (list.empty()) return make_grid(lo, hi, step);
  std::vector<double> grid;
  std::istringstream in(list);
  for (double p; in >> p;) {
    grid.push_back(p);
    if (in.peek() == ',') in.ignore();
  }
  return grid;
}

// Parses the CSV written by results_csv back into per-size results.
std::vector<PercolationResult> read_results_csv(std::istream& in) {
  std::map<int, PercolationResult> by_size;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("kind,", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 8) throw std::runtime_error("bad CSV row: " + line);
    const int L = std::stoi(f[2]);
    auto& r = by_size[L];
    r.kind = f[0];
    r.scenario = parse_scenario(f[1]);
    r.L = L;
    r.trials = std::stoll(f[6]);
    r.seed = std::stoull(f[7]);
    r.p_grid.push_back(std::stod(f[3]));
    r.spanning.push_back(std::llround(std::stod(f[4]) * static_cast<double>(r.trials)));
  }
  std::vector<PercolationResult> out;
  for (auto& [L, r] : by_size) out.push_back(std::move(r));
  return out;
}

void print_threshold(const ThresholdEstimate& t) {
  std::cerr << "threshold: " << to_string(t.status);
  if (t.status == ThresholdStatus::crossing) std::cerr << " p_c = " << t.p_c << " +- " << t.uncertainty;
  if (t.status == ThresholdStatus::below_resolution) std::cerr << " (positive, below " << t.p_c << ")";
  std::cerr << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid AKLT lattice sampling, graph reduction and percolation"};
  app.require_subcommand(1);

  // lattice
  LatticeOpts lat_opts;
  std::string lat_out;
  auto* lat = app.add_subcommand("lattice", "write a lattice file");
  lat_opts.add(lat);
  lat->add_option("-o,--output", lat_out);
  lat->callback([&] {
    const Lattice lattice = lat_opts.build();
    Sink sink(lat_out);
    write_lattice(sink.get(), lattice);
  });

  // sample
  LatticeOpts smp_opts;
  int n_samples = 10;
  ChainParams chain;
  std::string smp_out;
  auto* smp = app.add_subcommand("sample", "draw F-outcome configurations");
  smp_opts.add(smp);
  smp->add_option("-n,--samples", n_samples);
  smp->add_option("--burn-in", chain.burn_in_sweeps);
  smp->add_option("--thinning", chain.thinning_sweeps);
  smp->add_option("--chains", chain.chains);
  smp->add_option("--seed", chain.seed)->required();
  smp->add_option("-o,--output", smp_out);
  smp->callback([&] {
    const Lattice lattice = smp_opts.build();
    const auto samples = sample_configurations(lattice, n_samples, chain);
    Sink sink(smp_out);
    auto& out = sink.get();
    out << "# kind=" << to_string(lattice.kind()) << " L=" << lattice.linear_size()
        << " boundary=" << to_string(lattice.boundary()) << " seed=" << chain.seed
        << " burn_in=" << chain.burn_in_sweeps << " thinning=" << chain.thinning_sweeps
        << " chains=" << chain.chains << '\n';
    for (std::size_t k = 0; k < samples.size(); ++k) {
      out << "# sample " << k << '\n';
      write_configuration(out, samples[k]);
    }
  });

  // reduce
  LatticeOpts red_opts;
  std::string red_in, red_out, scenario = "worst", policy = "all_x";
  auto* red = app.add_subcommand("reduce", "turn configurations into reduced domain graphs");
  red_opts.add(red);
  red->add_option("--configs", red_in, "file written by 'sample'")->required();
  red->add_option("--scenario", scenario, "worst or best");
  red->add_option("--policy", policy, "by_basis, all_x, all_y or phase");
  red->add_option("-o,--output", red_out);
  red->callback([&] {
    const Lattice lattice = red_opts.build();
    const Scenario sc = parse_scenario(scenario);
    const ErrorPolicy pol = parse_error_policy(policy);
    auto in = open_input(red_in);
    Sink sink(red_out);
    auto& out = sink.get();
    out << "# scenario=" << to_string(sc) << " policy=" << to_string(pol) << '\n';
    for (int k = 0; more_records(in); ++k) {
      const PovmConfiguration config = read_configuration(in, lattice.num_sites());
      const DomainGraph g = sc == Scenario::worst ? worst_case_reduce(lattice, config, pol)
                                                  : best_case_reduce(lattice, config);
      out << "# graph " << k << '\n';
      write_domain_graph(out, g);
    }
  });

  // percolate
  std::string perc_in, perc_out, grid_list, deletion = "site", label_kind = "custom", label_scenario = "worst";
  double p_min = 0.0, p_max = 0.4, p_step = 0.02;
  int trials = 20, label_L = 0;
  std::uint64_t perc_seed = 1;
  auto* perc = app.add_subcommand("percolate", "deletion sweep over a file of domain graphs");
  perc->add_option("--graphs", perc_in, "file written by 'reduce'")->required();
  perc->add_option("--p-grid", grid_list, "comma or space separated list");
  perc->add_option("--p-min", p_min);
  perc->add_option("--p-max", p_max);
  perc->add_option("--p-step", p_step);
  perc->add_option("--trials", trials);
  perc->add_option("--seed", perc_seed)->required();
  perc->add_option("--deletion", deletion, "site or bond");
  perc->add_option("--label-kind", label_kind, "kind column of the CSV");
  perc->add_option("--label-scenario", label_scenario);
  perc->add_option("--label-L", label_L);
  perc->add_option("-o,--output", perc_out);
  perc->callback([&] {
    auto in = open_input(perc_in);
    std::vector<SpanningGraph> graphs;
    while (more_records(in)) graphs.push_back(SpanningGraph::from(read_domain_graph(in)));
    const auto grid = grid_from(grid_list, p_min, p_max, p_step);
    PercolationResult r = deletion == "bond" ? bond_deletion_sweep(graphs, grid, trials, perc_seed)
                                             : deletion_sweep(graphs, grid, trials, perc_seed);
    r.kind = label_kind;
    r.scenario = parse_scenario(label_scenario);
    r.L = label_L;
    Sink sink(perc_out);
    sink.get() << results_csv({r}, 0, perc_seed);
    if (r.missing_side) std::cerr << "warning: " << r.missing_side << " graphs lack a left or right vertex\n";
  });

  // threshold
  std::vector<std::string> csv_files;
  std::string thr_out;
  int bootstrap = 200;
  std::uint64_t thr_seed = 1;
  auto* thr = app.add_subcommand("threshold", "crossing estimate from percolation CSV files");
  thr->add_option("csv", csv_files, "one or more CSV files")->required();
  thr->add_option("--bootstrap", bootstrap);
  thr->add_option("--seed", thr_seed);
  thr->add_option("-o,--output", thr_out);
  thr->callback([&] {
    std::stringstream all;
    for (const auto& f : csv_files) all << open_input(f).rdbuf() << '\n';
    const auto results = read_results_csv(all);
    ThresholdOptions options;
    options.bootstrap_resamples = bootstrap;
    options.seed = thr_seed;
    const auto est = estimate_threshold(results, options);
    print_threshold(est);
    Sink sink(thr_out);
    sink.get() << threshold_json(est, results.front().kind, results.front().scenario, 0, thr_seed);
  });

  // reproduce
  std::string figure, repro_out;
  auto* repro = app.add_subcommand("reproduce", "run a shipped figure preset");
  repro->add_option("figure", figure, "fig4a fig4b fig4c fig5a fig5b kagome")->required();
  repro->add_option("-o,--output", repro_out, "output directory (default results/<figure>)");
  repro->callback([&] {
    ExperimentConfig config = preset(figure);
    if (!repro_out.empty()) config.output = repro_out;
    const auto out = run_experiment(config, &std::cerr);
    print_threshold(out.threshold);
    std::cout << out.json;
  });

  // run
  std::string config_path, run_out;
  auto* run = app.add_subcommand("run", "run an experiment described by a config file");
  run->add_option("--config", config_path)->required();
  run->add_option("-o,--output", run_out, "output directory (overrides the config)");
  run->callback([&] {
    auto config = load_config_file(config_path);
    if (!run_out.empty()) config.output = run_out;
    const auto out = run_experiment(config, &std::cerr);
    print_threshold(out.threshold);
    std::cout << out.json;
  });

  // selfcheck
  SelfcheckOptions sc_opts;
  auto* sc = app.add_subcommand("selfcheck", "oracle, completeness and graph-rule checks");
  sc->add_option("--oracle-cap", sc_opts.oracle_cap, "virtual-qubit cap; 0 skips the weight check");
  int exit_code = 0;
  sc->callback([&] {
    const auto report = validate_install(sc_opts);
    print_report(std::cout, report);
    exit_code = report.ok() ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
