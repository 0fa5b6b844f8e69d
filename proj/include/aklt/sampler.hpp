#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aklt/lattice.hpp"
#include "aklt/povm.hpp"
#include "aklt/rng.hpp"

namespace aklt {

struct ChainParams {
  int burn_in_sweeps = 200;
  int thinning_sweeps = 1;
  std::uint64_t seed = 1;
  int chains = 1;             // independent chains, run in parallel
  int max_init_retries = 64;
};

class InitialStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Greedy assignment that avoids same-basis neighbours where possible, retried
/// with shuffled site orders until no domain contains an odd cycle.
std::vector<Basis> initial_configuration(const Lattice& lattice, Engine& engine, int max_retries);

/// Single-site Metropolis chain on basis labels with stationary weight
/// proportional to weight_fast. Proposal: uniform site, one of the two other
/// labels uniformly. Weight ratios are evaluated locally; only the domains
/// touching the updated site are explored.
class MetropolisChain {
 public:
  MetropolisChain(const Lattice& lattice, std::uint64_t seed, int max_init_retries = 64);
  MetropolisChain(const Lattice& lattice, std::vector<Basis> start, std::uint64_t seed);

  /// log2 W(after) - log2 W(before) for relabelling `site`; empty if the new
  /// configuration is frustrated.
  std::optional<long> log2_ratio(SiteId site, Basis to);

  /// Metropolis acceptance probability min(1, W'/W).
  double acceptance(SiteId site, Basis to);

  bool step();
  void sweep();
  void run_sweeps(int sweeps);

  const std::vector<Basis>& basis() const { return basis_; }
  std::uint64_t accepted() const { return accepted_; }
  std::uint64_t proposed() const { return proposed_; }

 private:
  void reserve_scratch();
  void mark(SiteId v, int color) {
    stamp_[v] = epoch_;
    color_[v] = static_cast<std::int8_t>(color);
  }
  // Flood-fills the component of `root` among sites with basis `b`, excluding
  // `skip`. Stops early once every site wanted in this session has been reached.
  void flood(SiteId root, Basis b, SiteId skip, std::size_t& wanted_left);

  const Lattice* lattice_;
  std::vector<Basis> basis_;
  Engine engine_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::int8_t> color_;
  std::vector<std::uint32_t> want_;
  std::vector<SiteId> queue_;
  std::uint32_t epoch_ = 0;
  std::uint32_t session_start_ = 0;
  std::uint32_t want_session_ = 0;
  std::uint64_t accepted_ = 0;
  std::uint64_t proposed_ = 0;
};

/// Draws n_samples F-only configurations. Chains are independent (seeded from
/// params.seed and the chain index); samples are returned chain by chain.
std::vector<PovmConfiguration> sample_configurations(const Lattice& lattice, int n_samples,
                                                     const ChainParams& params);

}  // namespace aklt
