#include "aklt/domain_graph.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace aklt {

DomainGraph::DomainGraph(std::size_t capacity)
    : vertices_(capacity), adjacency_(capacity), alive_(capacity, 1), alive_count_(capacity) {}

DomainGraph::DomainGraph(std::vector<DomainVertex> vertices)
    : vertices_(std::move(vertices)),
      adjacency_(vertices_.size()),
      alive_(vertices_.size(), 1),
      alive_count_(vertices_.size()) {}

DomainGraph DomainGraph::from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges) {
  DomainGraph g(n);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

void DomainGraph::require(VertexId v) const {
  if (!contains(v)) throw std::out_of_range("domain graph has no vertex " + std::to_string(v));
}

std::size_t DomainGraph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency_) twice += adj.size();
  return twice / 2;
}

bool DomainGraph::adjacent(VertexId a, VertexId b) const {
  if (!contains(a) || !contains(b)) return false;
  return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
}

namespace {

bool insert_sorted(std::vector<VertexId>& list, VertexId v) {
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it != list.end() && *it == v) return false;
  list.insert(it, v);
  return true;
}

bool erase_sorted(std::vector<VertexId>& list, VertexId v) {
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it == list.end() || *it != v) return false;
  list.erase(it);
  return true;
}

}  // namespace

void DomainGraph::add_edge(VertexId a, VertexId b) {
  require(a);
  require(b);
  if (a == b) throw std::invalid_argument("domain graph: self-loop");
  insert_sorted(adjacency_[a], b);
  insert_sorted(adjacency_[b], a);
}

void DomainGraph::remove_edge(VertexId a, VertexId b) {
  require(a);
  require(b);
  erase_sorted(adjacency_[a], b);
  erase_sorted(adjacency_[b], a);
}

void DomainGraph::toggle_edge(VertexId a, VertexId b) {
  require(a);
  require(b);
  if (a == b) throw std::invalid_argument("domain graph: self-loop");
  if (erase_sorted(adjacency_[a], b)) {
    erase_sorted(adjacency_[b], a);
  } else {
    insert_sorted(adjacency_[a], b);
    insert_sorted(adjacency_[b], a);
  }
}

void DomainGraph::remove_vertex(VertexId v) {
  require(v);
  for (VertexId u : adjacency_[v]) erase_sorted(adjacency_[u], v);
  adjacency_[v].clear();
  alive_[v] = 0;
  --alive_count_;
}

std::vector<VertexId> DomainGraph::vertex_ids() const {
  std::vector<VertexId> ids;
  ids.reserve(alive_count_);
  for (std::size_t v = 0; v < alive_.size(); ++v)
    if (alive_[v]) ids.push_back(static_cast<VertexId>(v));
  return ids;
}

std::vector<std::pair<VertexId, VertexId>> DomainGraph::edge_list() const {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t a = 0; a < adjacency_.size(); ++a)
    for (VertexId b : adjacency_[a])
      if (static_cast<VertexId>(a) < b) edges.emplace_back(static_cast<VertexId>(a), b);
  return edges;
}

DomainGraph domain_graph(const Lattice& lattice, const DomainPartition& partition) {
  std::vector<DomainVertex> vertices(partition.size());
  for (std::size_t d = 0; d < partition.size(); ++d) {
    DomainVertex& dv = vertices[d];
    dv.members = partition.members[d];
    dv.basis = partition.basis_of_domain[d];
    dv.encoded_sites = static_cast<int>(dv.members.size());
    for (SiteId s : dv.members) {
      dv.position.x += lattice.sites()[s].position.x;
      dv.position.y += lattice.sites()[s].position.y;
      dv.left = dv.left || lattice.is_left(s);
      dv.right = dv.right || lattice.is_right(s);
    }
    dv.position.x /= static_cast<double>(dv.members.size());
    dv.position.y /= static_cast<double>(dv.members.size());
  }

  std::vector<std::pair<VertexId, VertexId>> crossings;
  for (const Edge& e : lattice.edges()) {
    const DomainId a = partition.domain_of[e.a];
    const DomainId b = partition.domain_of[e.b];
    if (a != b) crossings.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(crossings.begin(), crossings.end());

  DomainGraph g(std::move(vertices));
  for (std::size_t k = 0; k < crossings.size();) {
    std::size_t run = k;
    while (run < crossings.size() && crossings[run] == crossings[k]) ++run;
    if ((run - k) % 2 == 1) g.add_edge(crossings[k].first, crossings[k].second);
    k = run;
  }
  return g;
}

void write_domain_graph(std::ostream& out, const DomainGraph& g) {
  const auto ids = g.vertex_ids();
  out << "vertices " << ids.size() << '\n' << std::setprecision(17);
  for (VertexId v : ids) {
    const DomainVertex& dv = g.vertex(v);
    const char* side = dv.left && dv.right ? "both" : dv.left ? "left" : dv.right ? "right" : "-";
    out << v << ' ' << dv.position.x << ' ' << dv.position.y << ' ' << side << ' ' << dv.encoded_sites << '\n';
  }
  const auto edges = g.edge_list();
  out << "edges " << edges.size() << '\n';
  for (auto [a, b] : edges) out << a << ' ' << b << '\n';
}

DomainGraph read_domain_graph(std::istream& in) {
  std::string line;
  auto next = [&](std::istringstream& fields) {
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      fields.clear();
      fields.str(line);
      return true;
    }
    return false;
  };
  std::istringstream fields;
  std::string word;
  long long count = -1;
  if (!next(fields) || !(fields >> word >> count) || word != "vertices" || count < 0)
    throw std::runtime_error("domain graph: expected 'vertices N'");

  std::map<VertexId, DomainVertex> parsed;
  for (long long k = 0; k < count; ++k) {
    long long id = -1;
    DomainVertex dv;
    std::string side;
    if (!next(fields) || !(fields >> id >> dv.position.x >> dv.position.y >> side >> dv.encoded_sites) || id < 0)
      throw std::runtime_error("domain graph: bad vertex line '" + line + "'");
    dv.left = side == "left" || side == "both";
    dv.right = side == "right" || side == "both";
    if (!parsed.emplace(static_cast<VertexId>(id), dv).second)
      throw std::runtime_error("domain graph: repeated vertex " + std::to_string(id));
  }
  const std::size_t capacity = parsed.empty() ? 0 : static_cast<std::size_t>(parsed.rbegin()->first) + 1;
  std::vector<DomainVertex> vertices(capacity);
  for (auto& [id, dv] : parsed) vertices[id] = dv;
  DomainGraph g(std::move(vertices));
  for (std::size_t v = 0; v < capacity; ++v)
    if (!parsed.count(static_cast<VertexId>(v))) g.remove_vertex(static_cast<VertexId>(v));

  if (!next(fields) || !(fields >> word >> count) || word != "edges" || count < 0)
    throw std::runtime_error("domain graph: expected 'edges M'");
  for (long long k = 0; k < count; ++k) {
    long long a = -1, b = -1;
    if (!next(fields) || !(fields >> a >> b)) throw std::runtime_error("domain graph: bad edge line");
    g.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
  }
  return g;
}

}  // namespace aklt
