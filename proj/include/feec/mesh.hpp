#pragma once

#include "feec/complex.hpp"
#include "feec/metric.hpp"

#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace feec {

class MissingLength : public Error {
 public:
  MissingLength(int a, int b);
  std::pair<int, int> edge;
};

class DegenerateCell : public Error {
 public:
  explicit DegenerateCell(const Simplex& cell);
  Simplex cell;
};

/// Plain-line mesh: `vertex <id>`, `simplex <id>...` (orientation from the
/// tuple order), `length <i> <j> <value>`. Values are decimals, p/q, or
/// sqrt(<decimal or p/q>). Blank lines and lines starting with '#' are skipped.
struct Mesh {
  std::vector<int> vertices;
  std::vector<std::vector<int>> cells;
  std::map<std::pair<int, int>, Rational> squared_lengths;

  SimplicialComplex complex() const;
  /// Squared edge lengths of one cell; throws MissingLength or DegenerateCell.
  RationalMetric metric(const Simplex& cell) const;
};

Mesh parse_mesh(std::istream& in);
/// Squared value of a length entry.
Rational parse_length_sq(const std::string& text);

/// Mass matrix of the global P-_r Lambda^k basis assembled from the interior
/// bases of all faces (faces by dimension, then vertex ids; pivot order inside
/// a face). Entries are sums of factor * sqrt(vol^2) over cells, kept grouped
/// by the distinct squared cell volumes.
struct GlobalMass {
  std::vector<Simplex> basis_faces;  // face of each basis function
  std::map<Rational, MatrixQ> by_volume_sq;

  Eigen::Index size() const { return static_cast<Eigen::Index>(basis_faces.size()); }
  Matrix<double> to_double() const;
  /// Exact entry as "p/q", "p/q*sqrt(m/n)" or a '+' separated sum of those.
  std::string exact_entry(Eigen::Index i, Eigen::Index j) const;
};

GlobalMass assemble_mass(const Mesh& mesh, int r, int k);

}  // namespace feec
