#include "aklt/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace aklt {

namespace {

constexpr std::pair<LatticeKind, std::string_view> kKindNames[] = {
    {LatticeKind::fig1a, "fig1a"},
    {LatticeKind::fig1b, "fig1b"},
    {LatticeKind::fig1c, "fig1c"},
    {LatticeKind::kagome, "kagome"},
    {LatticeKind::decorated_kagome, "decorated_kagome"},
    {LatticeKind::decorated_star, "decorated_star"},
    {LatticeKind::custom, "custom"},
};

constexpr std::pair<Boundary, std::string_view> kBoundaryNames[] = {
    {Boundary::open, "open"},
    {Boundary::cylinder, "cylinder"},
    {Boundary::torus, "torus"},
};

// A bond from basis site `from` in cell c to basis site `to` in cell c + (di, dj),
// with `decorators` spin-1 sites inserted in series.
struct BondTemplate {
  int from;
  int to;
  int di;
  int dj;
  int decorators;
};

struct CellSpec {
  Vec2 a1;
  Vec2 a2;
  std::vector<Vec2> basis;
  std::vector<BondTemplate> bonds;
};

CellSpec square_decorated(int decorators) {
  return {{1.0, 0.0}, {0.0, 1.0}, {{0.0, 0.0}}, {{0, 0, 1, 0, decorators}, {0, 0, 0, 1, decorators}}};
}

// Square lattice with the checkerboard B sublattice at plaquette centres replaced
// by 4-rings; each ring corner keeps the bond to one former neighbour.
CellSpec fig1a_cell() {
  constexpr double d = 0.2;
  return {{1.0, 0.0},
          {0.0, 1.0},
          {{0.0, 0.0}, {0.5 - d, 0.5 - d}, {0.5 + d, 0.5 - d}, {0.5 + d, 0.5 + d}, {0.5 - d, 0.5 + d}},
          {{1, 2, 0, 0, 0},
           {2, 3, 0, 0, 0},
           {3, 4, 0, 0, 0},
           {4, 1, 0, 0, 0},
           {1, 0, 0, 0, 0},
           {2, 0, 1, 0, 0},
           {3, 0, 1, 1, 0},
           {4, 0, 0, 1, 0}}};
}

CellSpec kagome_cell(int decorators) {
  const double h = std::sqrt(3.0) / 2.0;
  return {{1.0, 0.0},
          {0.5, h},
          {{0.0, 0.0}, {0.5, 0.0}, {0.25, h / 2.0}},
          {{0, 1, 0, 0, decorators},
           {0, 2, 0, 0, decorators},
           {1, 2, 0, 0, decorators},
           {1, 0, 1, 0, decorators},
           {2, 0, 0, 1, decorators},
           {1, 2, 1, -1, decorators}}};
}

// Star lattice: honeycomb vertices A, B expanded into triangles. The A triangles
// point down and carry one decoration site per edge.
CellSpec decorated_star_cell() {
  const double h = std::sqrt(3.0) / 2.0;
  const Vec2 a1{1.0, 0.0};
  const Vec2 a2{0.5, h};
  const Vec2 A{0.0, 0.0};
  const Vec2 B{(a1.x + a2.x) / 3.0, (a1.y + a2.y) / 3.0};
  constexpr double t = 0.25;
  auto toward = [&](Vec2 from, Vec2 to) {
    return Vec2{from.x + t * (to.x - from.x), from.y + t * (to.y - from.y)};
  };
  const Vec2 b_here = B;
  const Vec2 b_left{B.x - a1.x, B.y - a1.y};
  const Vec2 b_down{B.x - a2.x, B.y - a2.y};
  const Vec2 a_right{A.x + a1.x, A.y + a1.y};
  const Vec2 a_up{A.x + a2.x, A.y + a2.y};
  return {a1,
          a2,
          {toward(A, b_here), toward(A, b_left), toward(A, b_down), toward(B, A), toward(B, a_right),
           toward(B, a_up)},
          {{0, 1, 0, 0, 1},
           {1, 2, 0, 0, 1},
           {2, 0, 0, 0, 1},
           {3, 4, 0, 0, 0},
           {4, 5, 0, 0, 0},
           {5, 3, 0, 0, 0},
           {0, 3, 0, 0, 0},
           {1, 4, -1, 0, 0},
           {2, 5, 0, -1, 0}}};
}

CellSpec cell_spec(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::fig1a: return fig1a_cell();
    case LatticeKind::fig1b: return square_decorated(2);
    case LatticeKind::fig1c: return square_decorated(1);
    case LatticeKind::kagome: return kagome_cell(0);
    case LatticeKind::decorated_kagome: return kagome_cell(1);
    case LatticeKind::decorated_star: return decorated_star_cell();
    case LatticeKind::custom: break;
  }
  throw std::invalid_argument("build_lattice: custom lattices are loaded, not built");
}

}  // namespace

std::string_view to_string(LatticeKind kind) {
  for (auto [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::string_view to_string(Boundary boundary) {
  for (auto [b, name] : kBoundaryNames)
    if (b == boundary) return name;
  return "unknown";
}

LatticeKind parse_lattice_kind(std::string_view name) {
  for (auto [k, n] : kKindNames)
    if (n == name) return k;
  throw std::invalid_argument("unknown lattice kind '" + std::string(name) + "'");
}

Boundary parse_boundary(std::string_view name) {
  for (auto [b, n] : kBoundaryNames)
    if (n == name) return b;
  throw std::invalid_argument("unknown boundary '" + std::string(name) + "'");
}

InvalidLattice::InvalidLattice(std::vector<std::string> violations)
    : std::invalid_argument([&] {
        std::string msg = "invalid lattice:";
        for (const auto& v : violations) msg += "\n  " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

Lattice::Lattice(LatticeKind kind, int linear_size, Boundary boundary, std::vector<Vec2> positions,
                 std::vector<Edge> edges, std::vector<SiteId> boundary_left,
                 std::vector<SiteId> boundary_right)
    : kind_(kind),
      linear_size_(linear_size),
      boundary_(boundary),
      edges_(std::move(edges)),
      boundary_left_(std::move(boundary_left)),
      boundary_right_(std::move(boundary_right)) {
  const std::size_t n = positions.size();
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges_) {
    if (e.a < 0 || e.b < 0 || static_cast<std::size_t>(e.a) >= n || static_cast<std::size_t>(e.b) >= n)
      throw std::out_of_range("lattice edge refers to a missing site");
    ++degree[e.a];
    ++degree[e.b];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[fill[e.a]++] = e.b;
    adjacency_[fill[e.b]++] = e.a;
  }
  for (std::size_t v = 0; v < n; ++v)
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);

  sites_.resize(n);
  for (std::size_t v = 0; v < n; ++v)
    sites_[v] = Site{static_cast<SiteId>(v), positions[v], static_cast<int>(degree[v])};

  std::sort(boundary_left_.begin(), boundary_left_.end());
  std::sort(boundary_right_.begin(), boundary_right_.end());
  side_.assign(n, 0);
  for (SiteId v : boundary_left_) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::out_of_range("boundary site out of range");
    side_[v] |= 1;
  }
  for (SiteId v : boundary_right_) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::out_of_range("boundary site out of range");
    side_[v] |= 2;
  }
}

Lattice build_lattice(LatticeKind kind, int L, Boundary boundary) {
  if (L < 1) throw std::invalid_argument("build_lattice: L must be >= 1");
  const CellSpec spec = cell_spec(kind);
  if (boundary != Boundary::open && L < 2)
    throw std::invalid_argument("build_lattice: periodic boundaries need L >= 2");

  const bool wrap_i = boundary == Boundary::torus;
  const bool wrap_j = boundary != Boundary::open;
  const int base = static_cast<int>(spec.basis.size());
  std::vector<int> decorator_offset;
  int per_cell = base;
  for (const auto& b : spec.bonds) {
    decorator_offset.push_back(per_cell);
    per_cell += b.decorators;
  }

  const std::size_t n = static_cast<std::size_t>(per_cell) * L * L;
  std::vector<Vec2> positions(n);
  std::vector<Edge> edges;
  std::vector<std::uint8_t> cut(n, 0);  // bit 0: bond cut on the left, bit 1: on the right

  auto cell_id = [&](int i, int j) { return (i * L + j) * per_cell; };
  auto origin = [&](int i, int j) {
    return Vec2{i * spec.a1.x + j * spec.a2.x, i * spec.a1.y + j * spec.a2.y};
  };
  // Resolves a possibly out-of-range cell; returns false if it does not exist.
  auto resolve = [&](int& i, int& j) {
    if (wrap_i) i = ((i % L) + L) % L;
    if (wrap_j) j = ((j % L) + L) % L;
    return i >= 0 && i < L && j >= 0 && j < L;
  };

  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      const Vec2 o = origin(i, j);
      const int c = cell_id(i, j);
      for (int s = 0; s < base; ++s) positions[c + s] = {o.x + spec.basis[s].x, o.y + spec.basis[s].y};
    }
  }

  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      const int c = cell_id(i, j);
      for (std::size_t t = 0; t < spec.bonds.size(); ++t) {
        const BondTemplate& bond = spec.bonds[t];
        const Vec2 from = positions[c + bond.from];
        const Vec2 to_origin = origin(i + bond.di, j + bond.dj);
        const Vec2 to{to_origin.x + spec.basis[bond.to].x, to_origin.y + spec.basis[bond.to].y};

        SiteId prev = c + bond.from;
        for (int k = 1; k <= bond.decorators; ++k) {
          const SiteId d = c + decorator_offset[t] + (k - 1);
          const double f = static_cast<double>(k) / (bond.decorators + 1);
          positions[d] = {from.x + f * (to.x - from.x), from.y + f * (to.y - from.y)};
          edges.push_back({prev, d});
          prev = d;
        }

        int ti = i + bond.di;
        int tj = j + bond.dj;
        if (resolve(ti, tj)) {
          edges.push_back({prev, cell_id(ti, tj) + bond.to});
        } else if (!wrap_i && (ti < 0 || ti >= L)) {
          cut[prev] |= bond.di > 0 ? 2 : 1;
        }

        // The receiving end of the same template, seen from this cell.
        const int si = i - bond.di;
        if (!wrap_i && (si < 0 || si >= L)) cut[c + bond.to] |= bond.di > 0 ? 1 : 2;
      }
    }
  }

  std::vector<SiteId> left;
  std::vector<SiteId> right;
  for (std::size_t v = 0; v < n; ++v) {
    if (cut[v] & 1) left.push_back(static_cast<SiteId>(v));
    if (cut[v] & 2) right.push_back(static_cast<SiteId>(v));
  }
  return Lattice(kind, L, boundary, std::move(positions), std::move(edges), std::move(left),
                 std::move(right));
}

std::vector<std::string> validate(const Lattice& lattice) {
  std::vector<std::string> out;
  std::set<std::pair<SiteId, SiteId>> seen;
  for (const Edge& e : lattice.edges()) {
    if (e.a == e.b) {
      out.push_back("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + "): self-loop");
      continue;
    }
    auto key = std::minmax(e.a, e.b);
    if (!seen.insert(key).second)
      out.push_back("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                    "): duplicate edge");
  }
  for (const Site& s : lattice.sites()) {
    const int deg = lattice.degree(s.id);
    if (deg > 4) out.push_back("site " + std::to_string(s.id) + ": degree exceeds 4");
    if (deg == 0) out.push_back("site " + std::to_string(s.id) + ": isolated site (S = 0)");
    if (s.spin2x != deg) out.push_back("site " + std::to_string(s.id) + ": spin2x differs from degree");
  }
  for (SiteId v : lattice.boundary_left()) {
    if (lattice.is_right(v))
      out.push_back("site " + std::to_string(v) + ": on both left and right boundary");
  }
  const bool needs_sides = lattice.kind() != LatticeKind::custom && lattice.boundary() != Boundary::torus;
  if (needs_sides && lattice.boundary_left().empty()) out.push_back("boundary_left is empty");
  if (needs_sides && lattice.boundary_right().empty()) out.push_back("boundary_right is empty");
  return out;
}

bool is_bipartite(const Lattice& lattice) {
  const std::size_t n = lattice.num_sites();
  std::vector<int> color(n, -1);
  std::queue<SiteId> queue;
  for (std::size_t root = 0; root < n; ++root) {
    if (color[root] >= 0) continue;
    color[root] = 0;
    queue.push(static_cast<SiteId>(root));
    while (!queue.empty()) {
      const SiteId v = queue.front();
      queue.pop();
      for (SiteId u : lattice.neighbors(v)) {
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
