#include "aklt/lattice_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace aklt {

namespace {

// Yields non-blank, non-comment lines together with their 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::istringstream& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      fields.clear();
      fields.str(line);
      return true;
    }
    return false;
  }
  int number() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

std::size_t read_header(LineReader& reader, std::string_view keyword) {
  std::istringstream fields;
  if (!reader.next(fields)) throw ParseError(reader.number(), "expected '" + std::string(keyword) + " <count>'");
  std::string word;
  long long count = -1;
  if (!(fields >> word >> count) || word != keyword || count < 0)
    throw ParseError(reader.number(), "expected '" + std::string(keyword) + " <count>'");
  return static_cast<std::size_t>(count);
}

}  // namespace

Lattice load_custom(std::istream& in) {
  LineReader reader(in);
  const std::size_t n = read_header(reader, "sites");
  std::vector<Vec2> positions(n);
  std::vector<bool> seen(n, false);
  std::vector<SiteId> left, right;
  std::istringstream fields;
  for (std::size_t k = 0; k < n; ++k) {
    if (!reader.next(fields)) throw ParseError(reader.number(), "unexpected end of site list");
    long long id = -1;
    double x = 0, y = 0;
    if (!(fields >> id >> x >> y)) throw ParseError(reader.number(), "expected 'id x y [left|right|-]'");
    if (id < 0 || static_cast<std::size_t>(id) >= n) throw ParseError(reader.number(), "site id out of range");
    if (seen[id]) throw ParseError(reader.number(), "repeated site id");
    seen[id] = true;
    positions[id] = {x, y};
    std::string side;
    if (fields >> side) {
      if (side == "left") left.push_back(static_cast<SiteId>(id));
      else if (side == "right") right.push_back(static_cast<SiteId>(id));
      else if (side != "-") throw ParseError(reader.number(), "side must be left, right or -");
    }
  }
  const std::size_t m = read_header(reader, "edges");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (!reader.next(fields)) throw ParseError(reader.number(), "unexpected end of edge list");
    long long a = -1, b = -1;
    if (!(fields >> a >> b)) throw ParseError(reader.number(), "expected 'id id'");
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n)
      throw ParseError(reader.number(), "edge endpoint out of range");
    edges.push_back({static_cast<SiteId>(a), static_cast<SiteId>(b)});
  }
  if (reader.next(fields)) throw ParseError(reader.number(), "trailing content after edge list");

  Lattice lattice(LatticeKind::custom, 0, Boundary::open, std::move(positions), std::move(edges),
                  std::move(left), std::move(right));
  if (auto violations = validate(lattice); !violations.empty()) throw InvalidLattice(std::move(violations));
  return lattice;
}

Lattice load_custom_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_custom(in);
}

void write_lattice(std::ostream& out, const Lattice& lattice) {
  out << "# kind=" << to_string(lattice.kind()) << " L=" << lattice.linear_size()
      << " boundary=" << to_string(lattice.boundary()) << '\n';
  out << "sites " << lattice.num_sites() << '\n';
  out << std::setprecision(17);
  for (const Site& s : lattice.sites()) {
    const char* side = lattice.is_left(s.id) ? "left" : lattice.is_right(s.id) ? "right" : "-";
    out << s.id << ' ' << s.position.x << ' ' << s.position.y << ' ' << side << '\n';
  }
  out << "edges " << lattice.num_edges() << '\n';
  for (const Edge& e : lattice.edges()) out << e.a << ' ' << e.b << '\n';
}

}  // namespace aklt
