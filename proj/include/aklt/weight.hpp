#pragma once

#include <optional>
#include <span>
#include <stdexcept>

#include "aklt/domains.hpp"
#include "aklt/lattice.hpp"
#include "aklt/povm.hpp"

namespace aklt {

class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultOracleCap = 28;

/// Exact ||(x)_v F_{a_v} |psi>||^2 where |psi> is the valence-bond state
/// (x)_v P_sym (x)_e |singlet_e> (not normalised). Each F_a restricted to the
/// symmetric subspace projects the site's 2S virtual qubits onto
/// span{all up along a, all down along a}, so the post-POVM state is a sum over
/// one up/down bit per site of products of singlet overlaps; this routine
/// enumerates those bits explicitly. Rejects lattices with more than
/// `max_virtual_qubits` (= 2 |E|) virtual qubits.
double weight_oracle(const Lattice& lattice, std::span<const Basis> basis,
                     int max_virtual_qubits = kDefaultOracleCap);

/// Unnormalised F-outcome weight 2^(|domains| + intra-domain edges), or zero
/// when a domain contains an odd cycle. Proportional to weight_oracle with a
/// per-lattice constant (2/3-type prefactors and 4^-|E|).
struct FastWeight {
  std::optional<long> log2;  // empty for frustrated configurations

  bool frustrated() const { return !log2.has_value(); }
  double value() const;
};

FastWeight weight_fast(const Lattice& lattice, const DomainPartition& partition);

}  // namespace aklt
