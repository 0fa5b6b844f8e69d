#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "aklt/domains.hpp"
#include "aklt/lattice.hpp"
#include "aklt/povm.hpp"

namespace aklt {

using VertexId = std::int32_t;

struct DomainVertex {
  Vec2 position;                 // centroid of the member sites
  std::vector<SiteId> members;
  Basis basis = Basis::z;
  int encoded_sites = 0;         // members still carrying the code after reductions
  bool left = false;
  bool right = false;
};

/// Simple undirected graph of the encoded graph state. Vertex ids are stable:
/// deleting a vertex marks it dead and drops its edges, so ids of the
/// survivors never change.
class DomainGraph {
 public:
  DomainGraph() = default;
  explicit DomainGraph(std::size_t capacity);
  explicit DomainGraph(std::vector<DomainVertex> vertices);

  /// Builds a bare graph on vertices 0..n-1 from an edge list.
  static DomainGraph from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges);

  std::size_t capacity() const { return vertices_.size(); }
  std::size_t num_vertices() const { return alive_count_; }
  std::size_t num_edges() const;
  bool contains(VertexId v) const {
    return v >= 0 && static_cast<std::size_t>(v) < vertices_.size() && alive_[v];
  }

  const DomainVertex& vertex(VertexId v) const { return vertices_[v]; }
  DomainVertex& vertex(VertexId v) { return vertices_[v]; }
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
  int degree(VertexId v) const { return static_cast<int>(adjacency_[v].size()); }
  bool adjacent(VertexId a, VertexId b) const;

  void add_edge(VertexId a, VertexId b);
  void remove_edge(VertexId a, VertexId b);
  void toggle_edge(VertexId a, VertexId b);
  void remove_vertex(VertexId v);

  /// Alive vertex ids in ascending order.
  std::vector<VertexId> vertex_ids() const;
  /// Edges (a < b) in lexicographic order.
  std::vector<std::pair<VertexId, VertexId>> edge_list() const;

  friend bool operator==(const DomainGraph& a, const DomainGraph& b) {
    return a.alive_ == b.alive_ && a.adjacency_ == b.adjacency_;
  }

 private:
  void require(VertexId v) const;

  std::vector<DomainVertex> vertices_;
  std::vector<std::vector<VertexId>> adjacency_;  // sorted
  std::vector<std::uint8_t> alive_;
  std::size_t alive_count_ = 0;
};

/// Domains become vertices; two domains are adjacent iff an odd number of
/// lattice edges join them.
DomainGraph domain_graph(const Lattice& lattice, const DomainPartition& partition);

// Graph-state Pauli measurement rules. Each throws std::out_of_range if v is
// not a vertex. The apply_* forms mutate in place; the others return a copy.

void apply_local_complement(DomainGraph& g, VertexId v);
void apply_measure_z(DomainGraph& g, VertexId v);
void apply_measure_y(DomainGraph& g, VertexId v);
void apply_treat_x(DomainGraph& g, VertexId v);

/// Chooses the neighbour that receives the extra Z measurement when a Y-treated
/// vertex has degree 4. Receives the neighbours in ascending order.
using TieBreak = std::function<VertexId(std::span<const VertexId>)>;
VertexId lowest_neighbor(std::span<const VertexId> neighbors);

void apply_treat_y(DomainGraph& g, VertexId v, const TieBreak& tie_break = lowest_neighbor);

DomainGraph local_complement(DomainGraph g, VertexId v);
DomainGraph measure_z(DomainGraph g, VertexId v);
DomainGraph measure_y(DomainGraph g, VertexId v);
DomainGraph treat_x(DomainGraph g, VertexId v);
DomainGraph treat_y(DomainGraph g, VertexId v, const TieBreak& tie_break = lowest_neighbor);

/// Export: "vertices N", then "id x y side encoded_sites" per alive vertex
/// (side is left, right, both or -), then "edges M" and "a b" per edge.
void write_domain_graph(std::ostream& out, const DomainGraph& g);
DomainGraph read_domain_graph(std::istream& in);

}  // namespace aklt
