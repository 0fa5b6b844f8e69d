#include <doctest.h>

#include <random>
#include <sstream>

#include "aklt/domain_graph.hpp"
#include "aklt/stabilizer_oracle.hpp"
#include "support/dense_aklt.hpp"
#include "support/small_lattice.hpp"

using namespace aklt;

namespace {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

DomainGraph graph(std::size_t n, const EdgeList& e) { return DomainGraph::from_edges(n, e); }

// Graph on n vertices whose edges are the set bits of `mask` over all pairs.
DomainGraph graph_from_mask(int n, std::uint32_t mask) {
  EdgeList e;
  int bit = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b, ++bit)
      if (mask >> bit & 1U) e.emplace_back(a, b);
  return graph(n, e);
}

DomainGraph random_graph(int n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  EdgeList e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) e.emplace_back(a, b);
  return graph(n, e);
}

}  // namespace

TEST_CASE("local complement toggles edges among the neighbours only") {
  const DomainGraph g = graph(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {3, 4}});
  const DomainGraph lc = local_complement(g, 0);
  CHECK_FALSE(lc.adjacent(1, 2));
  CHECK(lc.adjacent(1, 3));
  CHECK(lc.adjacent(2, 3));
  CHECK(lc.adjacent(0, 1));
  CHECK(lc.adjacent(3, 4));
  CHECK(lc.num_edges() == 6);
}

TEST_CASE("local complement is an involution") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) {
    const DomainGraph g = random_graph(8, 0.4, rng);
    const VertexId v = static_cast<VertexId>(rng() % 8);
    CHECK(local_complement(local_complement(g, v), v) == g);
  }
}

TEST_CASE("Z measurements commute") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const DomainGraph g = random_graph(7, 0.5, rng);
    const VertexId a = static_cast<VertexId>(rng() % 7);
    const VertexId b = static_cast<VertexId>((a + 1 + rng() % 6) % 7);
    CHECK(measure_z(measure_z(g, a), b) == measure_z(measure_z(g, b), a));
  }
}

TEST_CASE("Y measurement equals local complement followed by Z") {
  for (int n = 1; n <= 6; ++n)
    for (std::uint32_t mask = 0; mask < (1U << (n * (n - 1) / 2)); ++mask) {
      const DomainGraph g = graph_from_mask(n, mask);
      for (VertexId v = 0; v < n; ++v) CHECK(measure_y(g, v) == measure_z(local_complement(g, v), v));
    }
}

TEST_CASE("Z and Y rules agree with the state-vector oracle on every graph up to 6 vertices") {
  long mismatches = 0, checked = 0;
  for (int n = 2; n <= 6; ++n)
    for (std::uint32_t mask = 0; mask < (1U << (n * (n - 1) / 2)); ++mask) {
      const DomainGraph g = graph_from_mask(n, mask);
      for (VertexId v = 0; v < n; ++v) {
        const auto z = oracle::simulate_measurement(g, v, oracle::Pauli::z);
        const auto y = oracle::simulate_measurement(g, v, oracle::Pauli::y);
        mismatches += !z || !(*z == measure_z(g, v));
        mismatches += !y || !(*y == measure_y(g, v));
        checked += 2;
      }
    }
  CHECK(checked > 0);
  CHECK(mismatches == 0);
}

TEST_CASE("Y rule agrees with the oracle on random graphs up to 10 vertices") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 300; ++k) {
    const int n = 7 + static_cast<int>(rng() % 4);
    const DomainGraph g = random_graph(n, 0.45, rng);
    const VertexId v = static_cast<VertexId>(rng() % n);
    const auto y = oracle::simulate_measurement(g, v, oracle::Pauli::y);
    REQUIRE(y.has_value());
    CHECK(*y == measure_y(g, v));
  }
}

TEST_CASE("treat_x removes the vertex and its neighbourhood") {
  const DomainGraph g = graph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {3, 5}, {4, 5}});
  const DomainGraph t = treat_x(g, 0);
  CHECK(t.vertex_ids() == std::vector<VertexId>{4, 5});
  CHECK(t.adjacent(4, 5));
  CHECK(t.num_edges() == 1);
}

TEST_CASE("treat_y on degree 3 completes the neighbourhood") {
  const DomainGraph g = graph(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
  const DomainGraph t = treat_y(g, 0);
  CHECK(t.vertex_ids() == std::vector<VertexId>{1, 2, 3, 4});
  CHECK(t.edge_list() == EdgeList{{1, 2}, {1, 3}, {2, 3}, {3, 4}});
}

TEST_CASE("treat_y on degree 4 spends one neighbour chosen by the tie break") {
  const DomainGraph g = graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {4, 5}});
  const DomainGraph low = treat_y(g, 0);
  CHECK(low.vertex_ids() == std::vector<VertexId>{2, 3, 4, 5});
  CHECK(low.edge_list() == EdgeList{{2, 3}, {2, 4}, {3, 4}, {4, 5}});
  const DomainGraph high = treat_y(g, 0, [](std::span<const VertexId> n) { return n.back(); });
  CHECK(high.vertex_ids() == std::vector<VertexId>{1, 2, 3, 5});
  CHECK(high.edge_list() == EdgeList{{1, 2}, {1, 3}, {2, 3}});
  CHECK_THROWS_AS(treat_y(g, 0, [](std::span<const VertexId>) { return VertexId{5}; }), std::logic_error);
}

TEST_CASE("rules reject missing vertices") {
  DomainGraph g = graph(3, {{0, 1}});
  g.remove_vertex(2);
  CHECK_THROWS_AS(measure_z(g, 2), std::out_of_range);
  CHECK_THROWS_AS(local_complement(g, 7), std::out_of_range);
  CHECK_THROWS_AS(treat_x(g, -1), std::out_of_range);
}

TEST_CASE("domain adjacency parity matches entanglement of the dense state") {
  using B = Basis;
  const std::vector<B> zzxx{B::z, B::z, B::x, B::x};
  auto rank_across = [&](const Lattice& l) {
    const auto lay = dense::layout(l);
    const auto psi = dense::post_measurement(l, dense::f_operators(l, zzxx));
    std::vector<int> side = lay.of_site[0];
    side.insert(side.end(), lay.of_site[1].begin(), lay.of_site[1].end());
    return dense::schmidt_rank(psi, lay.qubits, side);
  };
  // Two crossing edges: no graph edge, product state between the domains.
  CHECK(rank_across(small::cycle(4)) == 1);
  // One crossing edge: graph edge, one ebit.
  CHECK(rank_across(small::path(4)) == 2);
}

TEST_CASE("export round trip") {
  const Lattice l = build_lattice(LatticeKind::fig1c, 3);
  std::mt19937_64 rng(6);
  const DomainGraph g = domain_graph(l, find_domains(l, small::random_labelling(l.num_sites(), rng)));
  std::stringstream s;
  write_domain_graph(s, g);
  const DomainGraph back = read_domain_graph(s);
  CHECK(back.vertex_ids() == g.vertex_ids());
  CHECK(back.edge_list() == g.edge_list());
  for (VertexId v : g.vertex_ids()) {
    CHECK(back.vertex(v).left == g.vertex(v).left);
    CHECK(back.vertex(v).right == g.vertex(v).right);
    CHECK(back.vertex(v).encoded_sites == g.vertex(v).encoded_sites);
  }
}
