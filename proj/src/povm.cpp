#include "aklt/povm.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace aklt {

namespace {

void check_spin(int spin2x) {
  if (spin2x < 1 || spin2x > 4)
    throw std::invalid_argument("povm: spin2x must be in {1,2,3,4}, got " + std::to_string(spin2x));
}

// exp(-i theta H) for Hermitian H.
CMatrix unitary_exp(const CMatrix& h, double theta) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  const auto& vals = eig.eigenvalues();
  CVector phases(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    phases[k] = std::exp(std::complex<double>(0.0, -theta * vals[k]));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

char to_char(Basis b) {
  switch (b) {
    case Basis::x: return 'x';
    case Basis::y: return 'y';
    case Basis::z: return 'z';
  }
  return '?';
}

Basis parse_basis(char c) {
  switch (c) {
    case 'x': return Basis::x;
    case 'y': return Basis::y;
    case 'z': return Basis::z;
    default: throw std::invalid_argument(std::string("unknown basis '") + c + "'");
  }
}

SpinMatrices spin_matrices(int spin2x) {
  if (spin2x < 1) throw std::invalid_argument("spin_matrices: spin2x must be positive");
  const int dim = spin2x + 1;
  const double s = spin2x / 2.0;
  CMatrix sz = CMatrix::Zero(dim, dim);
  CMatrix sp = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) sz(k, k) = s - k;
  for (int k = 1; k < dim; ++k) {
    const double m = s - k;
    sp(k - 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const CMatrix sm = sp.adjoint();
  const std::complex<double> two_i(0.0, 2.0);
  return {(sp + sm) / 2.0, (sp - sm) / two_i, sz};
}

CVector extremal_state(int spin2x, Basis axis, int sign) {
  const int dim = spin2x + 1;
  CVector e = CVector::Zero(dim);
  e[sign > 0 ? 0 : dim - 1] = 1.0;
  if (axis == Basis::z) return e;
  const SpinMatrices s = spin_matrices(spin2x);
  constexpr double half_pi = 1.5707963267948966;
  if (axis == Basis::x) return unitary_exp(s.sy, half_pi) * e;
  return unitary_exp(s.sx, -half_pi) * e;
}

double f_weight(int spin2x) {
  check_spin(spin2x);
  switch (spin2x) {
    case 1: return 1.0 / 3.0;
    case 2: return 1.0 / 2.0;
    default: return 2.0 / 3.0;
  }
}

CVector phi_minus(Basis axis) {
  return (extremal_state(4, axis, +1) - extremal_state(4, axis, -1)) / std::sqrt(2.0);
}

std::complex<double> flip_amplitude(Basis alpha, Basis beta) {
  const SpinMatrices s = spin_matrices(1);
  const CMatrix& op = beta == Basis::x ? s.sx : beta == Basis::y ? s.sy : s.sz;
  const CVector up = extremal_state(1, alpha, +1);
  const CVector down = extremal_state(1, alpha, -1);
  return up.dot(2.0 * op * down);
}

bool flip_is_imaginary(Basis alpha, Basis beta) {
  const auto c = flip_amplitude(alpha, beta);
  return std::abs(c.imag()) > std::abs(c.real());
}

PovmElementSet povm_elements(int spin2x) {
  check_spin(spin2x);
  PovmElementSet set{spin2x, {}};
  const double c = std::sqrt(f_weight(spin2x));
  for (Basis axis : kBases) {
    const CVector up = extremal_state(spin2x, axis, +1);
    const CVector down = extremal_state(spin2x, axis, -1);
    CMatrix f = c * (up * up.adjoint() + down * down.adjoint());
    // For spin-1/2 the two extremal states span the space; avoid rounding noise.
    if (spin2x == 1) f = c * CMatrix::Identity(2, 2);
    set.elements.push_back({axis, ElementClass::F, std::move(f)});
  }
  if (spin2x == 4) {
    for (Basis axis : kBases) {
      const CVector phi = phi_minus(axis);
      set.elements.push_back({axis, ElementClass::K, std::sqrt(1.0 / 3.0) * phi * phi.adjoint()});
    }
  }
  return set;
}

double completeness_error(const PovmElementSet& set) {
  const int dim = set.spin2x + 1;
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const auto& e : set.elements) sum += e.matrix.adjoint() * e.matrix;
  return (sum - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

PovmConfiguration PovmConfiguration::all_f(std::vector<Basis> basis) {
  PovmConfiguration c;
  c.element_class.assign(basis.size(), ElementClass::F);
  c.basis = std::move(basis);
  return c;
}

std::vector<std::string> validate(const Lattice& lattice, const PovmConfiguration& config) {
  std::vector<std::string> out;
  if (config.basis.size() != lattice.num_sites() || config.element_class.size() != lattice.num_sites()) {
    out.push_back("configuration does not label every site");
    return out;
  }
  for (const Site& s : lattice.sites()) {
    if (config.element_class[s.id] == ElementClass::K && s.spin2x != 4)
      out.push_back("site " + std::to_string(s.id) + ": K outcome on a site that is not spin-2");
  }
  return out;
}

void write_configuration(std::ostream& out, const PovmConfiguration& config) {
  for (std::size_t v = 0; v < config.size(); ++v)
    out << v << ' ' << to_char(config.basis[v]) << ' '
        << (config.element_class[v] == ElementClass::F ? 'F' : 'K') << '\n';
}

PovmConfiguration read_configuration(std::istream& in, std::size_t num_sites) {
  PovmConfiguration c;
  c.basis.assign(num_sites, Basis::z);
  c.element_class.assign(num_sites, ElementClass::F);
  std::vector<bool> seen(num_sites, false);
  std::string line;
  std::size_t count = 0;
  while (count < num_sites && std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    long long id = -1;
    char basis = 0, cls = 0;
    if (!(fields >> id >> basis >> cls) || id < 0 || static_cast<std::size_t>(id) >= num_sites || seen[id])
      throw std::runtime_error("bad configuration line: " + line);
    seen[id] = true;
    c.basis[id] = parse_basis(basis);
    if (cls == 'F') c.element_class[id] = ElementClass::F;
    else if (cls == 'K') c.element_class[id] = ElementClass::K;
    else throw std::runtime_error("bad element class in: " + line);
    ++count;
  }
  if (count != num_sites) throw std::runtime_error("configuration is missing sites");
  return c;
}

}  // namespace aklt
