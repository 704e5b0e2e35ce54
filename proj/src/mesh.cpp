#include "feec/mesh.hpp"

#include "feec/resolve.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace feec {

namespace {

std::pair<int, int> edge_key(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

int parse_id(const std::string& s, int line) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || v < 0) throw Error("line " + std::to_string(line) + ": bad vertex id '" + s + "'");
  return v;
}

}  // namespace

MissingLength::MissingLength(int a, int b)
    : Error("missing length for edge " + std::to_string(std::min(a, b)) + " " + std::to_string(std::max(a, b))),
      edge(edge_key(a, b)) {}

DegenerateCell::DegenerateCell(const Simplex& c) : Error("degenerate cell " + c.str()), cell(c) {}

Rational parse_length_sq(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.rfind("sqrt(", 0) == 0 && s.size() > 6 && s.back() == ')') {
    Rational v = parse_rational(s.substr(5, s.size() - 6));
    if (v <= 0) throw Error("length must be positive: '" + text + "'");
    return v;
  }
  Rational v = parse_rational(s);
  if (v <= 0) throw Error("length must be positive: '" + text + "'");
  return v * v;
}

Mesh parse_mesh(std::istream& in) {
  Mesh mesh;
  std::set<int> declared;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    std::vector<std::string> args;
    for (std::string a; ls >> a;) args.push_back(a);
    const std::string where = "line " + std::to_string(line) + ": ";
    if (word == "vertex") {
      if (args.size() != 1) throw Error(where + "expected 'vertex <id>'");
      int id = parse_id(args[0], line);
      if (!declared.insert(id).second) throw Error(where + "vertex " + args[0] + " declared twice");
      mesh.vertices.push_back(id);
    } else if (word == "simplex") {
      if (args.empty()) throw Error(where + "expected 'simplex <id>...'");
      std::vector<int> cell;
      for (const auto& a : args) {
        int id = parse_id(a, line);
        if (!declared.count(id)) throw Error(where + "undeclared vertex " + a);
        cell.push_back(id);
      }
      std::vector<int> sorted = cell;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error(where + "repeated vertex");
      mesh.cells.push_back(cell);
    } else if (word == "length") {
      if (args.size() != 3) throw Error(where + "expected 'length <i> <j> <value>'");
      int a = parse_id(args[0], line), b = parse_id(args[1], line);
      if (!declared.count(a) || !declared.count(b)) throw Error(where + "undeclared vertex");
      if (a == b) throw Error(where + "edge needs two distinct vertices");
      Rational g;
      try {
        g = parse_length_sq(args[2]);
      } catch (const Error& e) {
        throw Error(where + e.what());
      }
      mesh.squared_lengths[edge_key(a, b)] = g;
    } else {
      throw Error(where + "unknown record '" + word + "'");
    }
  }
  if (mesh.cells.empty()) throw Error("mesh has no simplex");
  const std::size_t dim = mesh.cells.front().size();
  for (const auto& c : mesh.cells)
    if (c.size() != dim) throw Error("all simplices must have the same dimension");
  return mesh;
}

SimplicialComplex Mesh::complex() const { return SimplicialComplex::from_cells(cells); }

RationalMetric Mesh::metric(const Simplex& cell) const {
  MatrixQ g = MatrixQ::Zero(cell.size(), cell.size());
  for (int i = 0; i < cell.size(); ++i)
    for (int j = i + 1; j < cell.size(); ++j) {
      auto it = squared_lengths.find(edge_key(cell[i], cell[j]));
      if (it == squared_lengths.end()) throw MissingLength(cell[i], cell[j]);
      g(i, j) = g(j, i) = it->second;
    }
  try {
    return RationalMetric(cell, g);
  } catch (const Error&) {
    throw DegenerateCell(cell);
  }
}

Matrix<double> GlobalMass::to_double() const {
  Matrix<double> out = Matrix<double>::Zero(size(), size());
  for (const auto& [vol_sq, m] : by_volume_sq) out += feec::to_double<Rational>(m) * std::sqrt(feec::to_double(vol_sq));
  return out;
}

std::string GlobalMass::exact_entry(Eigen::Index i, Eigen::Index j) const {
  Rational plain = 0;
  std::vector<std::pair<Rational, Rational>> rest;
  for (const auto& [vol_sq, m] : by_volume_sq) {
    const Rational& c = m(i, j);
    if (c == 0) continue;
    if (auto root = exact_sqrt(vol_sq)) plain += c * *root;
    else rest.emplace_back(c, vol_sq);
  }
  std::string out = plain == 0 && !rest.empty() ? "" : plain.str();
  for (const auto& [c, s] : rest) {
    std::string term = format_scaled_sqrt(c, s);
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

GlobalMass assemble_mass(const Mesh& mesh, int r, int k) {
  SimplicialComplex cx = mesh.complex();
  GeometricDecomposition gd = geometric_decomposition(cx, r, k);
  GlobalMass out;
  for (std::size_t j = 0; j < gd.basis.size(); ++j) out.basis_faces.push_back(gd.blocks[gd.basis_block[j]].face);
  std::vector<RationalMetric> metrics;
  for (const auto& cell : cx.cells()) metrics.push_back(mesh.metric(cell));
  for (std::size_t c = 0; c < cx.cells().size(); ++c) {
    const Simplex& cell = cx.cells()[c];
    std::vector<std::size_t> local;
    std::vector<BaryForm> forms;
    for (std::size_t j = 0; j < gd.basis.size(); ++j)
      if (out.basis_faces[j].is_face_of(cell)) {
        local.push_back(j);
        forms.push_back(extend_to(gd.basis[j], cell));
      }
    MatrixQ m = mass_matrix(forms, metrics[c]);
    auto [it, inserted] = out.by_volume_sq.try_emplace(metrics[c].volume_sq(), MatrixQ::Zero(out.size(), out.size()));
    for (std::size_t a = 0; a < local.size(); ++a)
      for (std::size_t b = 0; b < local.size(); ++b)
        it->second(static_cast<Eigen::Index>(local[a]), static_cast<Eigen::Index>(local[b])) +=
            m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
  return out;
}

}  // namespace feec
