#include "aklt/stabilizer_oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace aklt::oracle {

namespace {

constexpr double kTol = 1e-9;

void check_size(int n) {
  if (n < 0 || n > kMaxQubits) throw std::invalid_argument("stabilizer oracle: qubit count out of range");
}

}  // namespace

State graph_state(int n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  check_size(n);
  const std::size_t dim = std::size_t{1} << n;
  const double amp = std::pow(2.0, -0.5 * n);
  State psi(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    int parity = 0;
    for (auto [a, b] : edges) parity ^= static_cast<int>((x >> a) & (x >> b) & 1U);
    psi[x] = parity ? -amp : amp;
  }
  return psi;
}

std::complex<double> pauli_expectation(const State& psi, int n, int target, bool y_on_target, std::uint32_t z_mask) {
  check_size(n);
  const std::size_t flip = std::size_t{1} << target;
  std::complex<double> sum = 0.0;
  for (std::size_t x = 0; x < psi.size(); ++x) {
    std::complex<double> phase = (std::popcount(x & z_mask) & 1) ? -1.0 : 1.0;
    // Y|0> = i|1>, Y|1> = -i|0>
    if (y_on_target) phase *= (x & flip) ? std::complex<double>(0, -1) : std::complex<double>(0, 1);
    sum += std::conj(psi[x ^ flip]) * phase * psi[x];
  }
  return sum;
}

State measure_and_remove(const State& psi, int n, int v, Pauli p) {
  check_size(n);
  if (v < 0 || v >= n) throw std::out_of_range("measure_and_remove: qubit out of range");
  const std::size_t bit = std::size_t{1} << v;
  const std::size_t low = bit - 1;
  State out;
  for (int sign : {1, -1}) {
    out.assign(psi.size() / 2, 0.0);
    double norm = 0.0;
    for (std::size_t y = 0; y < out.size(); ++y) {
      const std::size_t x0 = (y & low) | ((y & ~low) << 1);
      const std::size_t x1 = x0 | bit;
      std::complex<double> a;
      if (p == Pauli::z) {
        a = sign > 0 ? psi[x0] : psi[x1];
      } else {
        // <+y| = (<0| - i<1|)/sqrt2, <-y| = (<0| + i<1|)/sqrt2
        a = (psi[x0] - std::complex<double>(0, sign) * psi[x1]) / std::sqrt(2.0);
      }
      out[y] = a;
      norm += std::norm(a);
    }
    if (norm > kTol) {
      const double s = 1.0 / std::sqrt(norm);
      for (auto& a : out) a *= s;
      return out;
    }
  }
  throw std::logic_error("measure_and_remove: both outcomes have zero probability");
}

std::optional<DomainGraph> canonical_graph(const State& psi, int n) {
  check_size(n);
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::uint32_t> support(n);
  for (int a = 0; a < n; ++a) {
    bool found = false;
    const std::uint32_t others = ((1U << n) - 1) & ~(1U << a);
    for (int y = 0; y < 2 && !found; ++y) {
      // Enumerate subsets of the other qubits.
      std::uint32_t s = 0;
      do {
        if (std::abs(pauli_expectation(psi, n, a, y == 1, s)) > 1.0 - kTol) {
          support[a] = s;
          found = true;
          break;
        }
        s = (s - others) & others;
      } while (s != 0);
    }
    if (!found) return std::nullopt;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const bool ab = (support[a] >> b) & 1U;
      const bool ba = (support[b] >> a) & 1U;
      if (ab != ba) return std::nullopt;
      if (ab && a < b) edges.emplace_back(a, b);
    }
  }
  return DomainGraph::from_edges(static_cast<std::size_t>(n), edges);
}

std::optional<DomainGraph> simulate_measurement(const DomainGraph& g, VertexId v, Pauli p) {
  const int n = static_cast<int>(g.capacity());
  if (static_cast<std::size_t>(n) != g.num_vertices())
    throw std::invalid_argument("simulate_measurement: graph must have no deleted vertices");
  const State after = measure_and_remove(graph_state(n, g.edge_list()), n, v, p);
  const auto reduced = canonical_graph(after, n - 1);
  if (!reduced) return std::nullopt;
  auto original = [v](VertexId u) { return u < v ? u : u + 1; };
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (auto [a, b] : reduced->edge_list()) edges.emplace_back(original(a), original(b));
  DomainGraph out = DomainGraph::from_edges(static_cast<std::size_t>(n), edges);
  out.remove_vertex(v);
  return out;
}

}  // namespace aklt::oracle
