#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "aklt/domain_graph.hpp"

// Dense state-vector reference for the graph-state measurement rules. Only
// meant for small graphs (at most 12 qubits).
namespace aklt::oracle {

using State = std::vector<std::complex<double>>;

enum class Pauli { z, y };

inline constexpr int kMaxQubits = 12;

/// |G> = prod_{(a,b)} CZ_ab |+>^n on qubits 0..n-1 (bit a of the index is qubit a).
State graph_state(int n, const std::vector<std::pair<VertexId, VertexId>>& edges);

/// <psi| P |psi> for P = (X or Y on `target`) times Z on every qubit in `z_mask`.
std::complex<double> pauli_expectation(const State& psi, int n, int target, bool y_on_target, std::uint32_t z_mask);

/// Projects qubit v onto the +1 eigenstate of `p` (or -1 if +1 has zero
/// probability), renormalises and drops the qubit. Qubits above v shift down.
State measure_and_remove(const State& psi, int n, int v, Pauli p);

/// For a state equal to a graph state up to local Clifford gates diagonal in
/// Z, recovers the graph: qubit a's neighbours are the Z support of the unique
/// stabilizer of the form (X or Y)_a Z_S. Empty if some qubit has no such
/// stabilizer.
std::optional<DomainGraph> canonical_graph(const State& psi, int n);

/// Measures `p` on vertex v of a bare graph on 0..n-1 by dense simulation and
/// returns the canonical graph of the rest, relabelled back to the original
/// vertex ids (v is absent).
std::optional<DomainGraph> simulate_measurement(const DomainGraph& g, VertexId v, Pauli p);

}  // namespace aklt::oracle
