#include "aklt/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "aklt/domain_graph.hpp"
#include "aklt/domains.hpp"
#include "aklt/lattice.hpp"
#include "aklt/stabilizer_oracle.hpp"

namespace aklt {

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "SKIPPED";
  }
  return "?";
}

bool SelfcheckReport::ok() const {
  return std::none_of(items.begin(), items.end(), [](const CheckItem& c) { return c.status == CheckStatus::fail; });
}

namespace {

Lattice small_graph(int n, std::vector<Edge> edges) {
  std::vector<Vec2> pos(n);
  for (int i = 0; i < n; ++i) pos[i] = {static_cast<double>(i), 0.0};
  return Lattice(LatticeKind::custom, 0, Boundary::open, std::move(pos), std::move(edges), {}, {});
}

CheckItem povm_check(const SelfcheckOptions& options) {
  CheckItem item{"povm completeness", CheckStatus::pass, ""};
  double worst = 0.0;
  for (int s = 1; s <= 4; ++s) {
    PovmElementSet set = povm_elements(s);
    if (options.povm_perturbation) options.povm_perturbation(set);
    worst = std::max(worst, completeness_error(set));
  }
  std::ostringstream d;
  d << "max deviation " << worst;
  item.detail = d.str();
  if (!(worst <= 1e-12)) item.status = CheckStatus::fail;
  return item;
}

CheckItem weight_check(const SelfcheckOptions& options) {
  CheckItem item{"weight oracle vs fast", CheckStatus::pass, ""};
  const std::vector<Lattice> lattices = {
      small_graph(2, {{0, 1}}),
      small_graph(3, {{0, 1}, {1, 2}, {0, 2}}),
      small_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}),
      small_graph(4, {{0, 1}, {0, 2}, {0, 3}}),
      small_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}),
  };
  int checked = 0;
  double spread = 0.0;
  for (const Lattice& lattice : lattices) {
    if (2 * static_cast<int>(lattice.num_edges()) > options.oracle_cap) continue;
    const std::size_t n = lattice.num_sites();
    std::vector<Basis> basis(n, Basis::x);
    double lo = INFINITY, hi = 0.0;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= 3) basis[i] = static_cast<Basis>(c % 3);
      const double exact = weight_oracle(lattice, basis, options.oracle_cap);
      const FastWeight fast = weight_fast(lattice, find_domains(lattice, basis));
      if (fast.frustrated() != (exact == 0.0)) {
        item.status = CheckStatus::fail;
        item.detail = "zero-weight sets differ";
        return item;
      }
      if (!fast.frustrated()) {
        lo = std::min(lo, fast.value() / exact);
        hi = std::max(hi, fast.value() / exact);
      }
    }
    spread = std::max(spread, (hi - lo) / hi);
    ++checked;
  }
  if (checked == 0) {
    item.status = CheckStatus::skipped;
    item.detail = "oracle cap " + std::to_string(options.oracle_cap) + " admits no test lattice";
    return item;
  }
  std::ostringstream d;
  d << checked << " lattices, max relative ratio spread " << spread;
  item.detail = d.str();
  if (!(spread <= 1e-9)) item.status = CheckStatus::fail;
  return item;
}

CheckItem stabilizer_check(const SelfcheckOptions& options) {
  CheckItem item{"graph rules vs stabilizer simulation", CheckStatus::pass, ""};
  long graphs = 0, mismatches = 0;
  for (int n = 1; n <= options.stabilizer_max_vertices; ++n) {
    std::vector<std::pair<VertexId, VertexId>> slots;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
    for (std::uint32_t mask = 0; mask < (1U << slots.size()); ++mask) {
      std::vector<std::pair<VertexId, VertexId>> edges;
      for (std::size_t k = 0; k < slots.size(); ++k)
        if (mask >> k & 1U) edges.push_back(slots[k]);
      const DomainGraph g = DomainGraph::from_edges(n, edges);
      ++graphs;
      for (VertexId v = 0; v < n; ++v) {
        const auto z = oracle::simulate_measurement(g, v, oracle::Pauli::z);
        const auto y = oracle::simulate_measurement(g, v, oracle::Pauli::y);
        if (!z || !(*z == measure_z(g, v))) ++mismatches;
        if (!y || !(*y == measure_y(g, v))) ++mismatches;
      }
    }
  }
  item.detail = std::to_string(graphs) + " labelled graphs, " + std::to_string(mismatches) + " mismatches";
  if (mismatches) item.status = CheckStatus::fail;
  return item;
}

}  // namespace

SelfcheckReport validate_install(const SelfcheckOptions& options) {
  SelfcheckReport report;
  report.items.push_back(povm_check(options));
  report.items.push_back(weight_check(options));
  report.items.push_back(stabilizer_check(options));
  return report;
}

void print_report(std::ostream& out, const SelfcheckReport& report) {
  for (const auto& item : report.items)
    out << to_string(item.status) << "  " << item.name << " (" << item.detail << ")\n";
}

}  // namespace aklt
