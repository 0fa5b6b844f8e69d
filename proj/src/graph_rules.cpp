#include "aklt/domain_graph.hpp"

#include <stdexcept>
#include <string>

namespace aklt {

namespace {

void require(const DomainGraph& g, VertexId v) {
  if (!g.contains(v)) throw std::out_of_range("domain graph has no vertex " + std::to_string(v));
}

}  // namespace

VertexId lowest_neighbor(std::span<const VertexId> neighbors) { return neighbors.front(); }

void apply_local_complement(DomainGraph& g, VertexId v) {
  require(g, v);
  const std::vector<VertexId> nbrs(g.neighbors(v).begin(), g.neighbors(v).end());
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) g.toggle_edge(nbrs[i], nbrs[j]);
}

void apply_measure_z(DomainGraph& g, VertexId v) {
  require(g, v);
  g.remove_vertex(v);
}

void apply_measure_y(DomainGraph& g, VertexId v) {
  apply_local_complement(g, v);
  g.remove_vertex(v);
}

void apply_treat_x(DomainGraph& g, VertexId v) {
  require(g, v);
  const std::vector<VertexId> nbrs(g.neighbors(v).begin(), g.neighbors(v).end());
  for (VertexId u : nbrs) g.remove_vertex(u);
  g.remove_vertex(v);
}

void apply_treat_y(DomainGraph& g, VertexId v, const TieBreak& tie_break) {
  require(g, v);
  // Degree 4 costs one neighbour; higher degrees (reachable only after earlier
  // complementations) are trimmed the same way down to 3.
  while (g.degree(v) >= 4) {
    const VertexId chosen = tie_break(g.neighbors(v));
    if (!g.adjacent(v, chosen)) throw std::logic_error("treat_y: tie break chose a non-neighbour");
    apply_measure_z(g, chosen);
  }
  apply_measure_y(g, v);
}

DomainGraph local_complement(DomainGraph g, VertexId v) {
  apply_local_complement(g, v);
  return g;
}

DomainGraph measure_z(DomainGraph g, VertexId v) {
  apply_measure_z(g, v);
  return g;
}

DomainGraph measure_y(DomainGraph g, VertexId v) {
  apply_measure_y(g, v);
  return g;
}

DomainGraph treat_x(DomainGraph g, VertexId v) {
  apply_treat_x(g, v);
  return g;
}

DomainGraph treat_y(DomainGraph g, VertexId v, const TieBreak& tie_break) {
  apply_treat_y(g, v, tie_break);
  return g;
}

}  // namespace aklt
