#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "aklt/lattice.hpp"

namespace aklt {

enum class Basis : std::uint8_t { x = 0, y = 1, z = 2 };
enum class ElementClass : std::uint8_t { F, K };

inline constexpr Basis kBases[] = {Basis::x, Basis::y, Basis::z};

char to_char(Basis b);
Basis parse_basis(char c);

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct PovmElement {
  Basis label;
  ElementClass element_class;
  CMatrix matrix;  // (2S+1) x (2S+1) in the S_z eigenbasis, m = S, S-1, ..., -S
};

struct PovmElementSet {
  int spin2x = 0;
  std::vector<PovmElement> elements;
};

/// Spin operators S_x, S_y, S_z for spin S = spin2x / 2, rows ordered m = S..-S.
struct SpinMatrices {
  CMatrix sx, sy, sz;
};
SpinMatrices spin_matrices(int spin2x);

/// |S_axis = sign * S>, obtained from |m = sign * S> by an exact rotation:
/// exp(-i pi/2 S_y) for x and exp(+i pi/2 S_x) for y. The relative phase of the
/// +S and -S states fixes |phi_axis^-> and matters for spin-2 completeness.
CVector extremal_state(int spin2x, Basis axis, int sign);

/// Squared prefactor c^2 of the rank-2 F elements, F^dagger F = c^2 * projector.
/// 1/3 for spin-1/2, 1/2 for spin-1, 2/3 for spin-3/2 and spin-2.
double f_weight(int spin2x);

/// POVM for a spin-S site, spin2x in {1, 2, 3, 4}. Spin-2 carries three extra
/// rank-one K elements sqrt(1/3)|phi^-><phi^-|.
PovmElementSet povm_elements(int spin2x);

/// |phi_axis^-> = (|S_axis=2> - |S_axis=-2>) / sqrt(2) for spin-2.
CVector phi_minus(Basis axis);

/// <S_alpha=+1/2| sigma_beta |S_alpha=-1/2> for spin-1/2 in the extremal_state
/// conventions. For beta != alpha it is a phase, real or imaginary depending on
/// the pair. Used to tell whether a phi^- outcome acts as logical X or Y.
std::complex<double> flip_amplitude(Basis alpha, Basis beta);
bool flip_is_imaginary(Basis alpha, Basis beta);

/// Max entrywise deviation of sum E^dagger E from the identity.
double completeness_error(const PovmElementSet& set);

/// Per-site POVM outcome labels.
struct PovmConfiguration {
  std::vector<Basis> basis;
  std::vector<ElementClass> element_class;

  static PovmConfiguration all_f(std::vector<Basis> basis);
  std::size_t size() const { return basis.size(); }
};

/// Empty iff every site is labelled and K only appears on spin-2 sites.
std::vector<std::string> validate(const Lattice& lattice, const PovmConfiguration& config);

/// Line-oriented dump: "site-id basis class", one line per site.
void write_configuration(std::ostream& out, const PovmConfiguration& config);
PovmConfiguration read_configuration(std::istream& in, std::size_t num_sites);

}  // namespace aklt
