#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aklt/domain_graph.hpp"
#include "aklt/lattice.hpp"
#include "aklt/povm.hpp"

namespace aklt {

enum class Scenario { worst, best };
std::string_view to_string(Scenario scenario);
Scenario parse_scenario(std::string_view name);

/// Compact copy of the alive part of a DomainGraph: vertices renumbered
/// 0..n-1, side flags bit 0 = left, bit 1 = right.
struct SpanningGraph {
  std::int32_t num_vertices = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  std::vector<std::uint8_t> side;

  static SpanningGraph from(const DomainGraph& g);
  bool has_left() const;
  bool has_right() const;
};

struct SpanningCheck {
  bool spanning = false;
  bool missing_side = false;  // no surviving vertex on the left or on the right
};

/// True iff one connected component touches both sides (union-find).
SpanningCheck has_spanning_path(const DomainGraph& g);
SpanningCheck has_spanning_path(const SpanningGraph& g);

struct PercolationResult {
  std::string kind;
  Scenario scenario = Scenario::worst;
  int L = 0;
  std::uint64_t seed = 0;
  std::vector<double> p_grid;
  std::vector<std::int64_t> spanning;  // spanning trials per grid point
  std::int64_t trials = 0;             // trials per grid point
  std::int64_t missing_side = 0;       // graphs lacking a left or right vertex

  double p_span(std::size_t i) const { return trials ? static_cast<double>(spanning[i]) / trials : 0.0; }
  /// Binomial standard error sqrt(p (1 - p) / trials).
  double stderr_at(std::size_t i) const;
};

/// Grid indices i where p_span(i + 1) exceeds p_span(i) by more than three
/// combined standard errors.
std::vector<std::size_t> monotonicity_violations(const PercolationResult& result);

/// Uniform grid lo, lo + step, ..., hi (inclusive, within rounding).
std::vector<double> make_grid(double lo, double hi, double step);

// Deletion sweeps. Every (graph, p, trial) is an independent work item whose
// RNG stream is derived from (seed, graph index, grid index, trial index), so
// results are identical for any thread count. The OpenMP kernels below must
// agree bit for bit with the serial reference in namespace `serial`.

/// Deletes each vertex independently with probability p.
PercolationResult deletion_sweep(std::span<const SpanningGraph> graphs, std::span<const double> p_grid,
                                 int trials_per_graph, std::uint64_t seed);
/// Deletes each edge independently with probability p.
PercolationResult bond_deletion_sweep(std::span<const SpanningGraph> graphs, std::span<const double> p_grid,
                                      int trials_per_graph, std::uint64_t seed);

namespace serial {
PercolationResult deletion_sweep(std::span<const SpanningGraph> graphs, std::span<const double> p_grid,
                                 int trials_per_graph, std::uint64_t seed);
PercolationResult bond_deletion_sweep(std::span<const SpanningGraph> graphs, std::span<const double> p_grid,
                                      int trials_per_graph, std::uint64_t seed);
}  // namespace serial

/// occupancy: fraction of lattice edges that survive as domain-graph edges (the
/// endpoints lie in different domains and those domains are adjacent, odd
/// multiplicity). connectivity: fraction of edges that still connect their
/// endpoints, i.e. the above plus intra-domain edges; this is the bond
/// occupation of the equivalent bond-percolation problem.
struct BondOccupancy {
  double occupancy = 0.0;
  double standard_error = 0.0;  // across samples
  double connectivity = 0.0;
  double connectivity_error = 0.0;
  double threshold_ref = 0.5244;
  std::size_t samples = 0;
};
BondOccupancy kagome_bond_check(const Lattice& lattice, std::span<const PovmConfiguration> samples);

/// L x L open square grid with the first column on the left and the last on the
/// right; the bond-percolation validation target (threshold 1/2).
DomainGraph square_lattice_graph(int L);

}  // namespace aklt
