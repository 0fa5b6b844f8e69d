#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "aklt/lattice.hpp"
#include "aklt/povm.hpp"

namespace aklt {

using DomainId = std::int32_t;

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0) { reset(n); }

  void reset(std::size_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(n, 1);
  }
  std::int32_t find(std::int32_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  bool unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> size_;
};

/// Maximal connected sets of equal-basis sites. Domain ids are ordered by the
/// smallest member site, members are sorted ascending.
struct DomainPartition {
  std::vector<DomainId> domain_of;
  std::vector<std::vector<SiteId>> members;
  std::vector<Basis> basis_of_domain;

  std::size_t size() const { return members.size(); }
};

DomainPartition find_domains(const Lattice& lattice, std::span<const Basis> basis);
inline DomainPartition find_domains(const Lattice& lattice, const PovmConfiguration& config) {
  return find_domains(lattice, config.basis);
}

/// Lattice edges whose endpoints share a domain.
std::size_t intra_domain_edges(const Lattice& lattice, const DomainPartition& partition);

/// True iff the subgraph induced by every domain is bipartite.
bool domains_unfrustrated(const Lattice& lattice, const DomainPartition& partition);

}  // namespace aklt
