#pragma once

#include "feec/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace feec {

/// An oriented simplex stored as its ascending vertex list plus an orientation
/// sign relative to that ordering. The empty simplex (dimension -1) is allowed;
/// it plays the role of the augmentation cell.
class Simplex {
 public:
  Simplex() = default;
  /// `vertices` must be strictly increasing.
  explicit Simplex(std::vector<int> vertices, int orientation = 1);
  /// Builds a simplex from an arbitrary vertex tuple; the orientation is the
  /// parity of the permutation that sorts it.
  static Simplex from_tuple(const std::vector<int>& tuple);
  /// Reference simplex {0, ..., n}.
  static Simplex reference(int n);

  const std::vector<int>& vertices() const { return vertices_; }
  int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  int size() const { return static_cast<int>(vertices_.size()); }
  int orientation() const { return orientation_; }
  int operator[](int i) const { return vertices_[static_cast<std::size_t>(i)]; }

  bool contains_vertex(int v) const;
  /// Position of vertex v in the sorted list, or -1.
  int position(int v) const;
  bool is_face_of(const Simplex& u) const;
  Simplex with_orientation(int sign) const { return Simplex(vertices_, sign); }
  /// Face obtained by deleting the vertex at position p, ascending orientation.
  Simplex drop(int p) const;

  std::string str() const;

  /// Equality and ordering look at the vertex set only (by dimension, then
  /// lexicographically); orientation is carried data.
  bool operator==(const Simplex& o) const { return vertices_ == o.vertices_; }
  std::strong_ordering operator<=>(const Simplex& o) const;

 private:
  std::vector<int> vertices_;
  int orientation_ = 1;
};

int permutation_sign(std::vector<int> tuple);

/// All subsets of U with k+1 vertices, ascending orientation, lexicographic order.
std::vector<Simplex> faces(const Simplex& u, int k);
/// Every face of U of dimension >= 0, ordered by dimension then lexicographically.
std::vector<Simplex> all_faces(const Simplex& u);

/// Incidence number o(T, T'): nonzero iff T' is a facet of T.
int incidence(const Simplex& t, const Simplex& tp);

struct Opposite {
  Simplex face;
  int sign;
};

/// Opposite face of T in U with the sign of the concatenation T, T_hat against U.
Opposite opposite(const Simplex& u, const Simplex& t);
/// Same as opposite() but admits T = U (empty opposite) and T empty.
Opposite opposite_unchecked(const Simplex& u, const Simplex& t);

/// A finite simplicial complex closed under faces.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Top cells as vertex tuples; orientation is taken from the tuple order.
  static SimplicialComplex from_cells(const std::vector<std::vector<int>>& cells);
  static SimplicialComplex from_simplices(const std::vector<Simplex>& cells);
  static SimplicialComplex of_simplex(const Simplex& u);

  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  /// Simplices of dimension k (empty list if out of range).
  const std::vector<Simplex>& simplices(int k) const;
  std::size_t count(int k) const { return simplices(k).size(); }
  std::optional<std::size_t> find(const Simplex& s) const;
  std::size_t index(const Simplex& s) const;
  bool contains(const Simplex& s) const { return find(s).has_value(); }
  /// Maximal simplices in the order given at construction.
  const std::vector<Simplex>& cells() const { return cells_; }
  std::vector<int> vertex_ids() const;

  /// Matrix of delta: C^k -> C^{k+1}; rows are (k+1)-simplices.
  MatrixQ coboundary_matrix(int k) const;
  /// Matrix of delta': C^k -> C^{k-1}; the transpose of coboundary_matrix(k-1).
  MatrixQ boundary_matrix(int k) const;
  /// Like coboundary_matrix but k = -1 gives the augmentation R -> C^0.
  MatrixQ augmented_coboundary_matrix(int k) const;

 private:
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::map<std::vector<int>, std::size_t>> lookup_;
  std::vector<Simplex> cells_;
};

/// A k-cochain: one value per k-simplex, in the complex's order. Degree -1
/// carries a single augmentation value.
struct Cochain {
  int degree = 0;
  VectorQ values;
};

Cochain coboundary(const SimplicialComplex& cx, const Cochain& c);
Cochain boundary(const SimplicialComplex& cx, const Cochain& c);

/// Matrix of the twisted Hodge map C^k(U) -> C^{n-k-1}(U), T -> eps_k s(T) T_hat,
/// for -1 <= k <= n with the augmentation at both ends. The twist
/// eps_k = (-1)^{k(k+1)/2} makes it intertwine delta and delta' exactly.
MatrixQ hodge_matrix(const Simplex& u, int k);
int hodge_twist(int k);

/// Applies hodge_matrix to a cochain on the face complex of U.
Cochain hodge_cochain_map(const SimplicialComplex& cx, const Cochain& c);

}  // namespace feec
