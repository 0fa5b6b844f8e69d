#include "aklt/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aklt/domains.hpp"
#include "aklt/rng.hpp"

namespace aklt {

std::string_view to_string(Scenario scenario) { return scenario == Scenario::worst ? "worst" : "best"; }

Scenario parse_scenario(std::string_view name) {
  if (name == "worst") return Scenario::worst;
  if (name == "best") return Scenario::best;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

SpanningGraph SpanningGraph::from(const DomainGraph& g) {
  SpanningGraph out;
  std::vector<std::int32_t> index(g.capacity(), -1);
  for (VertexId v : g.vertex_ids()) {
    index[v] = out.num_vertices++;
    const DomainVertex& dv = g.vertex(v);
    out.side.push_back(static_cast<std::uint8_t>((dv.left ? 1 : 0) | (dv.right ? 2 : 0)));
  }
  for (auto [a, b] : g.edge_list()) out.edges.emplace_back(index[a], index[b]);
  return out;
}

bool SpanningGraph::has_left() const {
  return std::any_of(side.begin(), side.end(), [](std::uint8_t s) { return s & 1; });
}

bool SpanningGraph::has_right() const {
  return std::any_of(side.begin(), side.end(), [](std::uint8_t s) { return s & 2; });
}

namespace {

enum class DeletionMode { site, bond };

struct Scratch {
  DisjointSets sets;
  std::vector<std::uint8_t> alive;
  std::vector<std::uint8_t> reaches_left;
};

// Spanning test on the surviving subgraph. `alive` may be empty (all alive).
bool spans(const SpanningGraph& g, std::span<const std::uint8_t> alive, Scratch& s,
           std::span<const std::uint8_t> edge_kept = {}) {
  const auto n = static_cast<std::size_t>(g.num_vertices);
  s.sets.reset(n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!edge_kept.empty() && !edge_kept[e]) continue;
    const auto [a, b] = g.edges[e];
    if (!alive.empty() && (!alive[a] || !alive[b])) continue;
    s.sets.unite(a, b);
  }
  s.reaches_left.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    if ((g.side[v] & 1) && (alive.empty() || alive[v])) s.reaches_left[s.sets.find(static_cast<std::int32_t>(v))] = 1;
  for (std::size_t v = 0; v < n; ++v)
    if ((g.side[v] & 2) && (alive.empty() || alive[v]) && s.reaches_left[s.sets.find(static_cast<std::int32_t>(v))])
      return true;
  return false;
}

bool run_trial(const SpanningGraph& g, double p, DeletionMode mode, std::uint64_t stream, Scratch& s) {
  Engine engine(stream);
  const std::span<const std::uint8_t> none;
  if (mode == DeletionMode::site) {
    s.alive.resize(static_cast<std::size_t>(g.num_vertices));
    for (auto& a : s.alive) a = uniform01(engine) >= p ? 1 : 0;
    return spans(g, s.alive, s);
  }
  s.alive.resize(g.edges.size());
  for (auto& a : s.alive) a = uniform01(engine) >= p ? 1 : 0;
  return spans(g, none, s, s.alive);
}

void check_inputs(std::span<const SpanningGraph> graphs, std::span<const double> p_grid, int trials) {
  if (graphs.empty()) throw std::invalid_argument("deletion sweep: needs at least one graph");
  if (trials < 1) throw std::invalid_argument("deletion sweep: trials_per_graph must be >= 1");
  for (double p : p_grid)
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("deletion sweep: p outside [0, 1]");
}

PercolationResult aggregate(std::span<const SpanningGraph> graphs, std::span<const double> p_grid, int trials,
                            std::uint64_t seed, const std::vector<std::uint8_t>& outcome) {
  PercolationResult r;
  r.seed = seed;
  r.p_grid.assign(p_grid.begin(), p_grid.end());
  r.spanning.assign(p_grid.size(), 0);
  r.trials = static_cast<std::int64_t>(graphs.size()) * trials;
  const std::size_t P = p_grid.size();
  for (std::size_t item = 0; item < outcome.size(); ++item) r.spanning[(item / trials) % P] += outcome[item];
  for (const auto& g : graphs)
    if (!g.has_left() || !g.has_right()) ++r.missing_side;
  return r;
}

std::uint64_t item_seed(std::uint64_t seed, std::size_t g, std::size_t pi, std::size_t t) {
  return derive_seed(seed, {g, pi, t});
}

PercolationResult sweep_parallel(std::span<const SpanningGraph> graphs, std::span<const double> p_grid, int trials,
                                 std::uint64_t seed, DeletionMode mode) {
  check_inputs(graphs, p_grid, trials);
  const std::size_t P = p_grid.size();
  const std::size_t T = static_cast<std::size_t>(trials);
  const auto items = static_cast<std::int64_t>(graphs.size() * P * T);
  std::vector<std::uint8_t> outcome(static_cast<std::size_t>(items));
#pragma omp parallel
  {
    Scratch scratch;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t item = 0; item < items; ++item) {
      const auto i = static_cast<std::size_t>(item);
      const std::size_t g = i / (P * T);
      const std::size_t pi = (i / T) % P;
      const std::size_t t = i % T;
      outcome[i] = run_trial(graphs[g], p_grid[pi], mode, item_seed(seed, g, pi, t), scratch) ? 1 : 0;
    }
  }
  return aggregate(graphs, p_grid, trials, seed, outcome);
}

PercolationResult sweep_serial(std::span<const SpanningGraph> graphs, std::span<const double> p_grid, int trials,
                               std::uint64_t seed, DeletionMode mode) {
  check_inputs(graphs, p_grid, trials);
  std::vector<std::uint8_t> outcome;
  outcome.reserve(graphs.size() * p_grid.size() * static_cast<std::size_t>(trials));
  Scratch scratch;
  for (std::size_t g = 0; g < graphs.size(); ++g)
    for (std::size_t pi = 0; pi < p_grid.size(); ++pi)
      for (std::size_t t = 0; t < static_cast<std::size_t>(trials); ++t)
        outcome.push_back(run_trial(graphs[g], p_grid[pi], mode, item_seed(seed, g, pi, t), scratch) ? 1 : 0);
  return aggregate(graphs, p_grid, trials, seed, outcome);
}

}  // namespace

SpanningCheck has_spanning_path(const SpanningGraph& g) {
  SpanningCheck check;
  check.missing_side = !g.has_left() || !g.has_right();
  if (check.missing_side) return check;
  Scratch scratch;
  check.spanning = spans(g, {}, scratch);
  return check;
}

SpanningCheck has_spanning_path(const DomainGraph& g) { return has_spanning_path(SpanningGraph::from(g)); }

double PercolationResult::stderr_at(std::size_t i) const {
  if (trials == 0) return 0.0;
  const double p = p_span(i);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::vector<std::size_t> monotonicity_violations(const PercolationResult& result) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < result.p_grid.size(); ++i) {
    const double se = std::hypot(result.stderr_at(i), result.stderr_at(i + 1));
    if (result.p_span(i + 1) > result.p_span(i) + 3.0 * se) out.push_back(i);
  }
  return out;
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("make_grid: need step > 0 and hi >= lo");
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long k = 0; k <= n; ++k) grid.push_back(std::round((lo + k * step) * 1e12) / 1e12);
  return grid;
}

PercolationResult deletion_sweep(std::span<const SpanningGraph> graphs, std::span<const double> p_grid,
                                 int trials_per_graph, std::uint64_t seed) {
  return sweep_parallel(graphs, p_grid, trials_per_graph, seed, DeletionMode::site);
}

PercolationResult bond_deletion_sweep(std::span<const SpanningGraph> graphs, std::span<const double> p_grid,
                                      int trials_per_graph, std::uint64_t seed) {
  return sweep_parallel(graphs, p_grid, trials_per_graph, seed, DeletionMode::bond);
}

namespace serial {

PercolationResult deletion_sweep(std::span<const SpanningGraph> graphs, std::span<const double> p_grid,
                                 int trials_per_graph, std::uint64_t seed) {
  return sweep_serial(graphs, p_grid, trials_per_graph, seed, DeletionMode::site);
}

PercolationResult bond_deletion_sweep(std::span<const SpanningGraph> graphs, std::span<const double> p_grid,
                                      int trials_per_graph, std::uint64_t seed) {
  return sweep_serial(graphs, p_grid, trials_per_graph, seed, DeletionMode::bond);
}

}  // namespace serial

namespace {

void mean_and_error(const std::vector<double>& xs, double& mean, double& error) {
  const double n = static_cast<double>(xs.size());
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  error = 0.0;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    error = std::sqrt(ss / (n - 1.0) / n);
  }
}

}  // namespace

BondOccupancy kagome_bond_check(const Lattice& lattice, std::span<const PovmConfiguration> samples) {
  BondOccupancy out;
  out.samples = samples.size();
  if (samples.empty() || lattice.num_edges() == 0) return out;
  std::vector<double> occupied(samples.size()), connected(samples.size());
  const double edges = static_cast<double>(lattice.num_edges());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const DomainPartition partition = find_domains(lattice, samples[k]);
    const DomainGraph g = domain_graph(lattice, partition);
    std::size_t inter = 0, intra = 0;
    for (const Edge& e : lattice.edges()) {
      const DomainId a = partition.domain_of[e.a];
      const DomainId b = partition.domain_of[e.b];
      if (a == b) ++intra;
      else if (g.adjacent(a, b)) ++inter;
    }
    occupied[k] = static_cast<double>(inter) / edges;
    connected[k] = static_cast<double>(inter + intra) / edges;
  }
  mean_and_error(occupied, out.occupancy, out.standard_error);
  mean_and_error(connected, out.connectivity, out.connectivity_error);
  return out;
}

DomainGraph square_lattice_graph(int L) {
  if (L < 2) throw std::invalid_argument("square_lattice_graph: L must be >= 2");
  std::vector<DomainVertex> vertices(static_cast<std::size_t>(L) * L);
  for (int x = 0; x < L; ++x) {
    for (int y = 0; y < L; ++y) {
      DomainVertex& v = vertices[x * L + y];
      v.position = {static_cast<double>(x), static_cast<double>(y)};
      v.encoded_sites = 1;
      v.left = x == 0;
      v.right = x == L - 1;
    }
  }
  DomainGraph g(std::move(vertices));
  for (int x = 0; x < L; ++x) {
    for (int y = 0; y < L; ++y) {
      if (x + 1 < L) g.add_edge(x * L + y, (x + 1) * L + y);
      if (y + 1 < L) g.add_edge(x * L + y, x * L + y + 1);
    }
  }
  return g;
}

}  // namespace aklt
