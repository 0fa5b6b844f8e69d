#include "aklt/weight.hpp"

#include <array>
#include <cmath>
#include <complex>

namespace aklt {

namespace {

using cd = std::complex<double>;
using Spinor = std::array<cd, 2>;

// Spin-1/2 eigenstates along each axis; index 0 is +1/2, index 1 is -1/2.
Spinor virtual_state(Basis axis, int bit) {
  const double r = 1.0 / std::sqrt(2.0);
  const double s = bit == 0 ? 1.0 : -1.0;
  switch (axis) {
    case Basis::x: return {cd(r, 0), cd(s * r, 0)};
    case Basis::y: return {cd(r, 0), cd(0, s * r)};
    case Basis::z: break;
  }
  return bit == 0 ? Spinor{cd(1, 0), cd(0, 0)} : Spinor{cd(0, 0), cd(1, 0)};
}

// <a| (x) <b| (|01> - |10>) / sqrt(2)
cd singlet_overlap(const Spinor& a, const Spinor& b) {
  return (std::conj(a[0]) * std::conj(b[1]) - std::conj(a[1]) * std::conj(b[0])) / std::sqrt(2.0);
}

struct OracleEdge {
  SiteId other;            // endpoint with the smaller id
  std::array<cd, 4> amp;   // indexed by 2 * bit(other) + bit(self)
};

class OracleSum {
 public:
  OracleSum(const Lattice& lattice, std::span<const Basis> basis) : bits_(lattice.num_sites(), 0) {
    closing_.resize(lattice.num_sites());
    for (const Edge& e : lattice.edges()) {
      const SiteId lo = std::min(e.a, e.b);
      const SiteId hi = std::max(e.a, e.b);
      OracleEdge oe{lo, {}};
      for (int bl = 0; bl < 2; ++bl)
        for (int bh = 0; bh < 2; ++bh)
          oe.amp[2 * bl + bh] = singlet_overlap(virtual_state(basis[lo], bl), virtual_state(basis[hi], bh));
      closing_[hi].push_back(oe);
    }
  }

  double run() {
    total_ = 0.0;
    recurse(0, cd(1.0, 0.0));
    return total_;
  }

 private:
  void recurse(std::size_t site, cd amplitude) {
    if (site == bits_.size()) {
      total_ += std::norm(amplitude);
      return;
    }
    for (int bit = 0; bit < 2; ++bit) {
      bits_[site] = bit;
      cd a = amplitude;
      for (const OracleEdge& e : closing_[site]) a *= e.amp[2 * bits_[e.other] + bit];
      if (a != cd(0.0, 0.0)) recurse(site + 1, a);
    }
  }

  std::vector<int> bits_;
  std::vector<std::vector<OracleEdge>> closing_;
  double total_ = 0.0;
};

}  // namespace

double weight_oracle(const Lattice& lattice, std::span<const Basis> basis, int max_virtual_qubits) {
  if (basis.size() != lattice.num_sites())
    throw std::invalid_argument("weight_oracle: basis size does not match lattice");
  const long virtual_qubits = 2L * static_cast<long>(lattice.num_edges());
  if (virtual_qubits > max_virtual_qubits)
    throw OracleCapExceeded("weight_oracle: " + std::to_string(virtual_qubits) +
                            " virtual qubits exceed the cap of " + std::to_string(max_virtual_qubits));
  double prefactor = 1.0;
  for (const Site& s : lattice.sites()) prefactor *= f_weight(s.spin2x);
  return prefactor * OracleSum(lattice, basis).run();
}

double FastWeight::value() const { return log2 ? std::ldexp(1.0, static_cast<int>(*log2)) : 0.0; }

FastWeight weight_fast(const Lattice& lattice, const DomainPartition& partition) {
  if (!domains_unfrustrated(lattice, partition)) return {};
  return {static_cast<long>(partition.size() + intra_domain_edges(lattice, partition))};
}

}  // namespace aklt
