#include "feec/complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace feec {

Simplex::Simplex(std::vector<int> vertices, int orientation)
    : vertices_(std::move(vertices)), orientation_(orientation) {
  if (orientation != 1 && orientation != -1) throw Error("orientation must be +1 or -1");
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i - 1] >= vertices_[i]) throw Error("simplex vertices must be strictly increasing");
}

Simplex Simplex::from_tuple(const std::vector<int>& tuple) {
  std::vector<int> sorted = tuple;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("repeated vertex in simplex");
  return Simplex(sorted, permutation_sign(tuple));
}

Simplex Simplex::reference(int n) {
  std::vector<int> v(static_cast<std::size_t>(n + 1));
  std::iota(v.begin(), v.end(), 0);
  return Simplex(v);
}

bool Simplex::contains_vertex(int v) const { return position(v) >= 0; }

int Simplex::position(int v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return -1;
  return static_cast<int>(it - vertices_.begin());
}

bool Simplex::is_face_of(const Simplex& u) const {
  return std::includes(u.vertices_.begin(), u.vertices_.end(), vertices_.begin(), vertices_.end());
}

Simplex Simplex::drop(int p) const {
  std::vector<int> v = vertices_;
  v.erase(v.begin() + p);
  return Simplex(v);
}

std::string Simplex::str() const {
  std::ostringstream os;
  os << (orientation_ < 0 ? "-{" : "{");
  for (std::size_t i = 0; i < vertices_.size(); ++i) os << (i ? "," : "") << vertices_[i];
  os << "}";
  return os.str();
}

std::strong_ordering Simplex::operator<=>(const Simplex& o) const {
  if (auto c = vertices_.size() <=> o.vertices_.size(); c != 0) return c;
  return vertices_ <=> o.vertices_;
}

int permutation_sign(std::vector<int> tuple) {
  int sign = 1;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j)
      if (tuple[i] > tuple[j]) sign = -sign;
  return sign;
}

std::vector<Simplex> faces(const Simplex& u, int k) {
  std::vector<Simplex> out;
  const int m = u.size();
  if (k < -1 || k + 1 > m) return out;
  std::vector<int> pick(static_cast<std::size_t>(k + 1));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<int> v;
    for (int p : pick) v.push_back(u[p]);
    out.emplace_back(v);
    int i = k;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - (k + 1) + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j <= k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::vector<Simplex> all_faces(const Simplex& u) {
  std::vector<Simplex> out;
  for (int k = 0; k <= u.dim(); ++k) {
    auto f = faces(u, k);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

int incidence(const Simplex& t, const Simplex& tp) {
  if (tp.size() + 1 != t.size() || !tp.is_face_of(t)) return 0;
  int p = 0;
  while (p < tp.size() && t[p] == tp[p]) ++p;
  return ((p % 2) ? -1 : 1) * t.orientation() * tp.orientation();
}

Opposite opposite_unchecked(const Simplex& u, const Simplex& t) {
  if (!t.is_face_of(u)) throw Error("not a face");
  std::vector<int> rest, tuple = t.vertices();
  for (int v : u.vertices())
    if (!t.contains_vertex(v)) rest.push_back(v);
  tuple.insert(tuple.end(), rest.begin(), rest.end());
  // tuple lists T then T_hat; its parity relative to U's ascending order
  std::vector<int> positions;
  for (int v : tuple) positions.push_back(u.position(v));
  int sign = permutation_sign(positions) * t.orientation() * u.orientation();
  return {Simplex(rest), sign};
}

Opposite opposite(const Simplex& u, const Simplex& t) {
  if (!t.is_face_of(u)) throw Error("not a face");
  if (t.size() == u.size()) throw Error("opposite is empty");
  return opposite_unchecked(u, t);
}

SimplicialComplex SimplicialComplex::from_cells(const std::vector<std::vector<int>>& cells) {
  std::vector<Simplex> s;
  for (const auto& c : cells) s.push_back(Simplex::from_tuple(c));
  return from_simplices(s);
}

SimplicialComplex SimplicialComplex::from_simplices(const std::vector<Simplex>& cells) {
  SimplicialComplex cx;
  cx.cells_ = cells;
  int dim = -1;
  for (const auto& c : cells) dim = std::max(dim, c.dim());
  cx.by_dim_.resize(static_cast<std::size_t>(dim + 1));
  cx.lookup_.resize(static_cast<std::size_t>(dim + 1));
  std::vector<std::map<std::vector<int>, int>> orient(static_cast<std::size_t>(dim + 1));
  for (const auto& c : cells) {
    if (c.dim() < 0) continue;
    for (const auto& f : all_faces(c)) orient[static_cast<std::size_t>(f.dim())].emplace(f.vertices(), 1);
    // a top cell keeps the orientation it was declared with
    orient[static_cast<std::size_t>(c.dim())][c.vertices()] = c.orientation();
  }
  for (int k = 0; k <= dim; ++k) {
    auto& list = cx.by_dim_[static_cast<std::size_t>(k)];
    for (const auto& [v, o] : orient[static_cast<std::size_t>(k)]) {
      cx.lookup_[static_cast<std::size_t>(k)][v] = list.size();
      list.emplace_back(v, o);
    }
  }
  return cx;
}

SimplicialComplex SimplicialComplex::of_simplex(const Simplex& u) { return from_simplices({u}); }

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  static const std::vector<Simplex> none;
  if (k < 0 || k > dimension()) return none;
  return by_dim_[static_cast<std::size_t>(k)];
}

std::optional<std::size_t> SimplicialComplex::find(const Simplex& s) const {
  const int k = s.dim();
  if (k < 0 || k > dimension()) return std::nullopt;
  const auto& m = lookup_[static_cast<std::size_t>(k)];
  auto it = m.find(s.vertices());
  if (it == m.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplicialComplex::index(const Simplex& s) const {
  auto i = find(s);
  if (!i) throw Error("simplex " + s.str() + " is not in the complex");
  return *i;
}

std::vector<int> SimplicialComplex::vertex_ids() const {
  std::vector<int> ids;
  for (const auto& v : simplices(0)) ids.push_back(v[0]);
  return ids;
}

MatrixQ SimplicialComplex::coboundary_matrix(int k) const {
  const auto& rows = simplices(k + 1);
  const auto& cols = simplices(k);
  MatrixQ m = MatrixQ::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int p = 0; p < rows[i].size(); ++p) {
      Simplex f = rows[i].drop(p);
      const auto j = index(f);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = incidence(rows[i], cols[j]);
    }
  return m;
}

MatrixQ SimplicialComplex::boundary_matrix(int k) const {
  if (k <= 0) return MatrixQ::Zero(0, static_cast<Eigen::Index>(count(k)));
  return coboundary_matrix(k - 1).transpose();
}

MatrixQ SimplicialComplex::augmented_coboundary_matrix(int k) const {
  if (k == -1) {
    MatrixQ m(static_cast<Eigen::Index>(count(0)), 1);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      m(i, 0) = incidence(simplices(0)[static_cast<std::size_t>(i)], Simplex());
    return m;
  }
  return coboundary_matrix(k);
}

Cochain coboundary(const SimplicialComplex& cx, const Cochain& c) {
  const int k = c.degree;
  MatrixQ m = k == -1 ? cx.augmented_coboundary_matrix(-1) : cx.coboundary_matrix(k);
  if (m.cols() != c.values.size()) throw Error("cochain size does not match the complex");
  return {k + 1, m * c.values};
}

Cochain boundary(const SimplicialComplex& cx, const Cochain& c) {
  MatrixQ m = cx.boundary_matrix(c.degree);
  if (m.cols() != c.values.size()) throw Error("cochain size does not match the complex");
  return {c.degree - 1, m * c.values};
}

int hodge_twist(int k) { return ((k * (k + 1) / 2) % 2 == 0) ? 1 : -1; }

MatrixQ hodge_matrix(const Simplex& u, int k) {
  const int n = u.dim();
  if (k < -1 || k > n) throw Error("hodge_matrix: degree out of range");
  auto cols = faces(u, k);
  auto rows = faces(u, n - k - 1);
  MatrixQ m = MatrixQ::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto op = opposite_unchecked(u, cols[j]);
    auto it = std::find(rows.begin(), rows.end(), op.face);
    m(it - rows.begin(), static_cast<Eigen::Index>(j)) = hodge_twist(k) * op.sign;
  }
  return m;
}

Cochain hodge_cochain_map(const SimplicialComplex& cx, const Cochain& c) {
  if (cx.cells().size() != 1 || cx.cells()[0].dim() != cx.dimension())
    throw Error("hodge_cochain_map needs the face complex of a single simplex");
  if (cx.cells()[0].orientation() != 1) throw Error("hodge_cochain_map expects a positively oriented simplex");
  const Simplex& u = cx.cells()[0];
  MatrixQ m = hodge_matrix(u, c.degree);
  if (m.cols() != c.values.size()) throw Error("cochain size does not match the complex");
  return {u.dim() - c.degree - 1, m * c.values};
}

}  // namespace feec
