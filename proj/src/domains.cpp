#include "aklt/domains.hpp"

#include <queue>

namespace aklt {

DomainPartition find_domains(const Lattice& lattice, std::span<const Basis> basis) {
  const std::size_t n = lattice.num_sites();
  if (basis.size() != n) throw std::invalid_argument("find_domains: basis size does not match lattice");
  DisjointSets sets(n);
  for (const Edge& e : lattice.edges())
    if (basis[e.a] == basis[e.b]) sets.unite(e.a, e.b);

  DomainPartition p;
  p.domain_of.assign(n, -1);
  std::vector<DomainId> id_of_root(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    const auto root = sets.find(static_cast<std::int32_t>(v));
    if (id_of_root[root] < 0) {
      id_of_root[root] = static_cast<DomainId>(p.members.size());
      p.members.emplace_back();
      p.basis_of_domain.push_back(basis[v]);
    }
    const DomainId d = id_of_root[root];
    p.domain_of[v] = d;
    p.members[d].push_back(static_cast<SiteId>(v));
  }
  return p;
}

std::size_t intra_domain_edges(const Lattice& lattice, const DomainPartition& partition) {
  std::size_t count = 0;
  for (const Edge& e : lattice.edges())
    if (partition.domain_of[e.a] == partition.domain_of[e.b]) ++count;
  return count;
}

bool domains_unfrustrated(const Lattice& lattice, const DomainPartition& partition) {
  std::vector<int> color(lattice.num_sites(), -1);
  std::queue<SiteId> queue;
  for (const auto& members : partition.members) {
    const SiteId root = members.front();
    const DomainId d = partition.domain_of[root];
    color[root] = 0;
    queue.push(root);
    while (!queue.empty()) {
      const SiteId v = queue.front();
      queue.pop();
      for (SiteId u : lattice.neighbors(v)) {
        if (partition.domain_of[u] != d) continue;
        if (color[u] < 0) {
          color[u] = 1 - color[v];
          queue.push(u);
        } else if (color[u] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace aklt
