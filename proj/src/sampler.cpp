#include "aklt/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "aklt/domains.hpp"

namespace aklt {

std::vector<Basis> initial_configuration(const Lattice& lattice, Engine& engine, int max_retries) {
  const std::size_t n = lattice.num_sites();
  std::vector<SiteId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Basis> basis(n, Basis::x);
  std::vector<bool> assigned(n);

  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    if (attempt > 0) std::shuffle(order.begin(), order.end(), engine);
    std::fill(assigned.begin(), assigned.end(), false);
    for (SiteId v : order) {
      std::array<int, 3> clashes{};
      for (SiteId u : lattice.neighbors(v))
        if (assigned[u]) ++clashes[static_cast<int>(basis[u])];
      const int best = *std::min_element(clashes.begin(), clashes.end());
      std::array<Basis, 3> ties{};
      std::size_t count = 0;
      for (Basis b : kBases)
        if (clashes[static_cast<int>(b)] == best) ties[count++] = b;
      basis[v] = attempt == 0 ? ties[0] : ties[uniform_below(engine, count)];
      assigned[v] = true;
    }
    if (domains_unfrustrated(lattice, find_domains(lattice, basis))) return basis;
  }
  throw InitialStateError("sampler: no frustration-free initial configuration found after " +
                          std::to_string(max_retries + 1) + " attempts");
}

MetropolisChain::MetropolisChain(const Lattice& lattice, std::uint64_t seed, int max_init_retries)
    : lattice_(&lattice), engine_(seed) {
  basis_ = initial_configuration(lattice, engine_, max_init_retries);
  reserve_scratch();
}

MetropolisChain::MetropolisChain(const Lattice& lattice, std::vector<Basis> start, std::uint64_t seed)
    : lattice_(&lattice), basis_(std::move(start)), engine_(seed) {
  if (basis_.size() != lattice.num_sites())
    throw std::invalid_argument("MetropolisChain: start configuration has the wrong size");
  if (!domains_unfrustrated(lattice, find_domains(lattice, basis_)))
    throw std::invalid_argument("MetropolisChain: start configuration has zero weight");
  reserve_scratch();
}

void MetropolisChain::reserve_scratch() {
  const std::size_t n = lattice_->num_sites();
  stamp_.assign(n, 0);
  color_.assign(n, 0);
  want_.assign(n, 0);
  queue_.reserve(n);
  epoch_ = 0;
}

void MetropolisChain::flood(SiteId root, Basis b, SiteId skip, std::size_t& wanted_left) {
  const std::uint32_t session = want_session_;
  mark(root, 0);
  if (want_[root] == session) --wanted_left;
  queue_.clear();
  queue_.push_back(root);
  for (std::size_t head = 0; head < queue_.size() && wanted_left > 0; ++head) {
    const SiteId v = queue_[head];
    for (SiteId u : lattice_->neighbors(v)) {
      if (u == skip || basis_[u] != b || stamp_[u] >= session_start_) continue;
      mark(u, 1 - color_[v]);
      if (want_[u] == session) --wanted_left;
      queue_.push_back(u);
    }
  }
}

std::optional<long> MetropolisChain::log2_ratio(SiteId site, Basis to) {
  const Basis from = basis_[site];
  if (from == to) return 0L;

  std::array<SiteId, 8> same_old{};
  std::array<SiteId, 8> same_new{};
  std::size_t n_old = 0, n_new = 0;
  for (SiteId u : lattice_->neighbors(site)) {
    if (basis_[u] == from && n_old < same_old.size()) same_old[n_old++] = u;
    else if (basis_[u] == to && n_new < same_new.size()) same_new[n_new++] = u;
  }

  // Guard against counter wrap-around of the visit stamps.
  if (epoch_ > std::numeric_limits<std::uint32_t>::max() - 64) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    std::fill(want_.begin(), want_.end(), 0);
    epoch_ = 0;
    want_session_ = 0;
  }

  // Leaving the old domain: it splits into one piece per component that
  // contains an old-basis neighbour (a singleton domain disappears).
  long leave = n_old == 0 ? -1 : 0;
  if (n_old >= 2) {
    ++want_session_;
    session_start_ = epoch_ + 1;
    for (std::size_t k = 0; k < n_old; ++k) want_[same_old[k]] = want_session_;
    std::size_t wanted_left = n_old;
    long pieces = 0;
    for (std::size_t k = 0; k < n_old; ++k) {
      if (stamp_[same_old[k]] >= session_start_) continue;
      ++epoch_;
      ++pieces;
      flood(same_old[k], from, site, wanted_left);
    }
    leave = pieces - 1;
  }

  // Joining the new-basis domains around the site: they merge into one, and the
  // merged domain stays bipartite only if, within each, all neighbours of the
  // site sit on the same sublattice.
  long join = n_new == 0 ? 1 : 0;
  if (n_new >= 2) {
    ++want_session_;
    session_start_ = epoch_ + 1;
    for (std::size_t k = 0; k < n_new; ++k) want_[same_new[k]] = want_session_;
    std::size_t wanted_left = n_new;
    long merged = 0;
    for (std::size_t k = 0; k < n_new; ++k) {
      if (stamp_[same_new[k]] >= session_start_) continue;
      ++epoch_;
      ++merged;
      flood(same_new[k], to, site, wanted_left);
      for (std::size_t q = k + 1; q < n_new; ++q)
        if (stamp_[same_new[q]] == epoch_ && color_[same_new[q]] != color_[same_new[k]]) return std::nullopt;
    }
    join = 1 - merged;
  }

  return leave + join + static_cast<long>(n_new) - static_cast<long>(n_old);
}

double MetropolisChain::acceptance(SiteId site, Basis to) {
  const auto delta = log2_ratio(site, to);
  if (!delta) return 0.0;
  return *delta >= 0 ? 1.0 : std::ldexp(1.0, static_cast<int>(std::max(*delta, -1000L)));
}

bool MetropolisChain::step() {
  const auto n = lattice_->num_sites();
  const SiteId site = static_cast<SiteId>(uniform_below(engine_, n));
  const int from = static_cast<int>(basis_[site]);
  const Basis to = static_cast<Basis>((from + 1 + static_cast<int>(uniform_below(engine_, 2))) % 3);
  ++proposed_;
  const auto delta = log2_ratio(site, to);
  if (!delta) return false;
  if (*delta < 0 && uniform01(engine_) >= std::ldexp(1.0, static_cast<int>(std::max(*delta, -1000L))))
    return false;
  basis_[site] = to;
  ++accepted_;
  return true;
}

void MetropolisChain::sweep() {
  for (std::size_t k = 0; k < lattice_->num_sites(); ++k) step();
}

void MetropolisChain::run_sweeps(int sweeps) {
  for (int s = 0; s < sweeps; ++s) sweep();
}

std::vector<PovmConfiguration> sample_configurations(const Lattice& lattice, int n_samples,
                                                     const ChainParams& params) {
  if (n_samples < 1) throw std::invalid_argument("sample_configurations: n_samples must be >= 1");
  const int chains = std::clamp(params.chains, 1, n_samples);
  std::vector<std::vector<PovmConfiguration>> per_chain(chains);

#pragma omp parallel for schedule(dynamic, 1)
  for (int c = 0; c < chains; ++c) {
    const int count = n_samples / chains + (c < n_samples % chains ? 1 : 0);
    MetropolisChain chain(lattice, derive_seed(params.seed, {static_cast<std::uint64_t>(c)}),
                          params.max_init_retries);
    chain.run_sweeps(params.burn_in_sweeps);
    auto& out = per_chain[c];
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
      chain.run_sweeps(std::max(1, params.thinning_sweeps));
      out.push_back(PovmConfiguration::all_f(chain.basis()));
    }
  }

  std::vector<PovmConfiguration> samples;
  samples.reserve(n_samples);
  for (auto& chunk : per_chain)
    for (auto& s : chunk) samples.push_back(std::move(s));
  return samples;
}

}  // namespace aklt
