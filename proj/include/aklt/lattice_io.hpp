#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "aklt/lattice.hpp"

namespace aklt {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Reads the line-oriented graph description:
///   sites N
///   id x y [left|right|-]     (N lines)
///   edges M
///   id id                      (M lines)
/// Blank lines and lines starting with '#' are ignored. The result has kind
/// custom and is rejected with InvalidLattice if any invariant fails.
Lattice load_custom(std::istream& in);
Lattice load_custom_file(const std::string& path);

/// Writes a lattice in the same format, preceded by '#' provenance lines.
void write_lattice(std::ostream& out, const Lattice& lattice);

}  // namespace aklt
