#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aklt {

using SiteId = std::int32_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

enum class LatticeKind { fig1a, fig1b, fig1c, kagome, decorated_kagome, decorated_star, custom };

/// open: both directions open. cylinder: periodic vertically, open horizontally.
/// torus: periodic both ways; has no spanning sides and is only used for
/// bulk composition checks.
enum class Boundary { open, cylinder, torus };

std::string_view to_string(LatticeKind kind);
std::string_view to_string(Boundary boundary);
LatticeKind parse_lattice_kind(std::string_view name);
Boundary parse_boundary(std::string_view name);

struct Site {
  SiteId id = 0;
  Vec2 position;
  int spin2x = 0;  // 2S, equal to the coordination number
};

struct Edge {
  SiteId a = 0;
  SiteId b = 0;
};

/// Thrown when a lattice fails its structural invariants.
class InvalidLattice : public std::invalid_argument {
 public:
  explicit InvalidLattice(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Embedded graph of spin sites. Spin magnitudes follow S = degree / 2.
class Lattice {
 public:
  Lattice() = default;
  Lattice(LatticeKind kind, int linear_size, Boundary boundary, std::vector<Vec2> positions,
          std::vector<Edge> edges, std::vector<SiteId> boundary_left,
          std::vector<SiteId> boundary_right);

  LatticeKind kind() const { return kind_; }
  int linear_size() const { return linear_size_; }
  Boundary boundary() const { return boundary_; }

  std::size_t num_sites() const { return sites_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Site>& sites() const { return sites_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<SiteId>& boundary_left() const { return boundary_left_; }
  const std::vector<SiteId>& boundary_right() const { return boundary_right_; }

  std::span<const SiteId> neighbors(SiteId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  int degree(SiteId v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  int spin2x(SiteId v) const { return sites_[v].spin2x; }
  bool is_left(SiteId v) const { return side_[v] & 1; }
  bool is_right(SiteId v) const { return side_[v] & 2; }

 private:
  LatticeKind kind_ = LatticeKind::custom;
  int linear_size_ = 0;
  Boundary boundary_ = Boundary::open;
  std::vector<Site> sites_;
  std::vector<Edge> edges_;
  std::vector<SiteId> boundary_left_;
  std::vector<SiteId> boundary_right_;
  std::vector<std::size_t> offsets_;
  std::vector<SiteId> adjacency_;
  std::vector<std::uint8_t> side_;
};

/// Builds one of the named lattices on L x L unit cells. Deterministic.
/// Periodic directions need L >= 2 (L = 1 would close bonds onto themselves).
Lattice build_lattice(LatticeKind kind, int L, Boundary boundary = Boundary::cylinder);

/// Lists every violated invariant; empty iff the lattice is valid.
std::vector<std::string> validate(const Lattice& lattice);

/// True iff the graph has no odd cycle.
bool is_bipartite(const Lattice& lattice);

}  // namespace aklt
