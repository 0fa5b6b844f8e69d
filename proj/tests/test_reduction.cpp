#include <doctest.h>

#include <random>

#include "aklt/domain_graph.hpp"
#include "aklt/reduction.hpp"
#include "aklt/sampler.hpp"
#include "support/dense_aklt.hpp"
#include "support/small_lattice.hpp"

using namespace aklt;
using B = Basis;

namespace {

// Spin-2 centre 0 joined to four leaves; leaf 4 may carry an extra path.
Lattice star_with_tail(int tail) {
  std::vector<std::pair<int, int>> e{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  for (int k = 0; k < tail; ++k) e.emplace_back(4 + k, 5 + k);
  return small::lattice(5 + tail, e, {1}, {4 + tail});
}

PovmConfiguration config(std::vector<Basis> b) { return PovmConfiguration::all_f(std::move(b)); }

}  // namespace

TEST_CASE("policy names round trip") {
  for (auto p : {ErrorPolicy::by_basis, ErrorPolicy::all_x, ErrorPolicy::all_y, ErrorPolicy::phase})
    CHECK(parse_error_policy(to_string(p)) == p);
  CHECK_THROWS_AS(parse_error_policy("sometimes"), std::invalid_argument);
}

TEST_CASE("a lone spin-2 domain becomes an undesired measurement") {
  const Lattice l = star_with_tail(0);
  const auto p = find_domains(l, std::vector<Basis>{B::z, B::x, B::x, B::y, B::y});
  const ErrorPlan x = plan_errors(l, p, ErrorPolicy::all_x);
  CHECK(x.x_vertices == std::vector<VertexId>{0});
  CHECK(x.y_vertices.empty());
  CHECK(x.code_reductions.empty());
  CHECK(plan_errors(l, p, ErrorPolicy::all_y).y_vertices == std::vector<VertexId>{0});
  CHECK(plan_errors(l, p, ErrorPolicy::by_basis).x_vertices == std::vector<VertexId>{0});
}

TEST_CASE("by_basis maps y domains to Y") {
  const Lattice l = star_with_tail(0);
  const auto p = find_domains(l, std::vector<Basis>{B::y, B::x, B::z, B::x, B::z});
  CHECK(plan_errors(l, p, ErrorPolicy::by_basis).y_vertices == std::vector<VertexId>{0});
}

TEST_CASE("spin-2 site inside a larger domain is a code reduction") {
  const Lattice l = star_with_tail(0);
  const std::vector<Basis> b{B::z, B::z, B::x, B::x, B::y};
  const auto p = find_domains(l, b);
  const ErrorPlan plan = plan_errors(l, p, ErrorPolicy::all_x);
  CHECK(plan.code_reductions == std::vector<SiteId>{0});
  CHECK(plan.x_vertices.empty());
  CHECK(plan.y_vertices.empty());

  const DomainGraph before = best_case_reduce(l, config(b));
  const DomainGraph after = worst_case_reduce(l, config(b), ErrorPolicy::all_x);
  CHECK(after == before);
  CHECK(after.vertex(0).encoded_sites == before.vertex(0).encoded_sites - 1);
}

TEST_CASE("worst case with one X vertex equals treat_x on the domain graph") {
  const Lattice l = star_with_tail(2);
  const std::vector<Basis> b{B::z, B::x, B::x, B::y, B::x, B::z, B::y};
  const auto p = find_domains(l, b);
  const DomainGraph g = domain_graph(l, p);
  const DomainGraph worst = worst_case_reduce(l, config(b), ErrorPolicy::all_x);
  CHECK(worst == treat_x(g, p.domain_of[0]));
  const DomainGraph worst_y = worst_case_reduce(l, config(b), ErrorPolicy::all_y);
  CHECK(worst_y == treat_y(g, p.domain_of[0]));
}

TEST_CASE("lattices without spin-2 sites are unaffected by the worst case") {
  const Lattice l = build_lattice(LatticeKind::decorated_star, 4);
  ChainParams params;
  params.burn_in_sweeps = 10;
  params.seed = 3;
  for (const auto& c : sample_configurations(l, 5, params))
    for (auto pol : {ErrorPolicy::all_x, ErrorPolicy::phase})
      CHECK(worst_case_reduce(l, c, pol) == best_case_reduce(l, c));
}

TEST_CASE("worst case never adds vertices and keeps ids stable") {
  const Lattice l = build_lattice(LatticeKind::fig1a, 4);
  ChainParams params;
  params.burn_in_sweeps = 20;
  params.seed = 8;
  for (const auto& c : sample_configurations(l, 10, params)) {
    const DomainGraph best = best_case_reduce(l, c);
    for (auto pol : {ErrorPolicy::by_basis, ErrorPolicy::all_x, ErrorPolicy::all_y, ErrorPolicy::phase}) {
      const DomainGraph worst = worst_case_reduce(l, c, pol);
      CHECK(worst.capacity() == best.capacity());
      CHECK(worst.num_vertices() <= best.num_vertices());
      for (VertexId v : worst.vertex_ids()) CHECK(best.contains(v));
    }
  }
}

// The stabilizer of the encoded centre qubit before the K outcome is
// O(theta) (x) prod Z on its graph neighbours, where O(theta) exchanges the two
// extremal spin-2 states with phase e^{i theta}. K projects onto the -1
// eigenvector of O(0), so it acts as logical X when theta is 0 or pi and as
// logical Y when theta is +-pi/2. The phase policy must predict which.
TEST_CASE("phase policy matches the stabilizer of the dense state") {
  std::mt19937_64 rng(21);
  int checked = 0, y_cases = 0;
  for (int trial = 0; trial < 400 && checked < 60; ++trial) {
    const int tail = static_cast<int>(rng() % 3);
    const Lattice l = star_with_tail(tail);
    auto b = small::random_labelling(l.num_sites(), rng);
    bool lone = true;
    for (SiteId u : l.neighbors(0)) lone = lone && b[u] != b[0];
    if (!lone) continue;
    const auto part = find_domains(l, b);
    if (!domains_unfrustrated(l, part)) continue;
    const DomainGraph g = domain_graph(l, part);
    const DomainId centre = part.domain_of[0];

    const auto lay = dense::layout(l);
    const CVector psi = dense::post_measurement(l, dense::f_operators(l, b));
    const double norm = psi.squaredNorm();
    REQUIRE(norm > 1e-12);

    auto expectation = [&](double theta) {
      const CVector up = extremal_state(4, b[0], +1), down = extremal_state(4, b[0], -1);
      const CMatrix o = std::polar(1.0, theta) * up * down.adjoint() + std::polar(1.0, -theta) * down * up.adjoint();
      CVector phi = dense::apply_local(psi, lay.of_site[0], dense::lift(o, 4));
      for (VertexId n : g.neighbors(centre)) {
        const SiteId s = part.members[n].front();
        const auto m = spin_matrices(1);
        const Basis beta = part.basis_of_domain[n];
        const CMatrix sigma = 2.0 * (beta == B::x ? m.sx : beta == B::y ? m.sy : m.sz);
        phi = dense::apply_local(phi, {lay.of_site[s].front()}, sigma);
      }
      return std::abs(psi.dot(phi)) / norm;
    };

    const double at0 = expectation(0.0), at90 = expectation(M_PI / 2);
    const bool says_y = phase_says_y(l, part, centre);
    if (says_y) {
      CHECK(at90 == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(at0 == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
      ++y_cases;
    } else {
      CHECK(at0 == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(at90 == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    }
    ++checked;
  }
  CHECK(checked >= 40);
  CHECK(y_cases > 0);
  CHECK(y_cases < checked);
}
