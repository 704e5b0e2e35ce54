#include "feec/dofs.hpp"

#include "feec/linalg.hpp"
#include "feec/resolve.hpp"

#include <map>
#include <sstream>

namespace feec {

namespace {

Eigen::Index sz(std::size_t s) { return static_cast<Eigen::Index>(s); }

std::string point_label(const std::vector<Rational>& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i].str();
  os << ")";
  return os.str();
}

}  // namespace

DofMatrix dof_matrix(const DofSystem& dofs, const std::vector<BaryForm>& trial, std::vector<std::string> col_labels) {
  DofMatrix m;
  for (const auto& f : dofs.functionals) m.rows.push_back(f.label);
  if (col_labels.empty())
    for (std::size_t j = 0; j < trial.size(); ++j) col_labels.push_back("u" + std::to_string(j));
  m.cols = std::move(col_labels);
  m.values = MatrixQ(sz(dofs.functionals.size()), sz(trial.size()));
  for (std::size_t i = 0; i < dofs.functionals.size(); ++i)
    for (std::size_t j = 0; j < trial.size(); ++j) m.values(sz(i), sz(j)) = dofs.functionals[i].apply(trial[j]);
  return m;
}

std::string to_csv(const DofMatrix& m) {
  std::ostringstream os;
  os << "dof";
  for (const auto& c : m.cols) os << "," << c;
  os << "\n";
  for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
    os << m.rows[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m.values.cols(); ++j) os << "," << m.values(i, j).str();
    os << "\n";
  }
  return os.str();
}

std::string label(const FamilyIndex& idx) {
  std::ostringstream os;
  os << "l^(";
  for (int i = 0; i < idx.alpha.size(); ++i) os << (i ? " " : "") << idx.alpha[i];
  os << ")" << idx.face.str();
  return os.str();
}

std::vector<BaryForm> canonical_test_forms(const Simplex& t, int r, int k) {
  const int m = t.dim();
  const int q = r - m + k - 1;
  if (k > m || q < 0) return {};
  return spanning_family(t, q, m - k, Space::PLk).generators();
}

DofSystem canonical_dof_system(const Simplex& u, int r, int k) {
  if (r < 1) throw Error("canonical dofs need r >= 1");
  DofSystem sys{"canonical", u, r, k, {}};
  for (const auto& t : all_faces(u)) {
    auto tests = canonical_test_forms(t, r, k);
    for (std::size_t i = 0; i < tests.size(); ++i) {
      BaryForm v = tests[i];
      sys.functionals.push_back({t, t.str() + "#" + std::to_string(i), [t, v](const BaryForm& w) {
                                   return integrate(wedge(v, pullback_to_face(w, t)));
                                 }});
    }
  }
  return sys;
}

DofMatrix canonical_dofs(const Simplex& u, int r, int k) {
  auto fam = spanning_family(u, r, k, Space::PminusLk);
  std::vector<std::string> cols;
  for (const auto& idx : fam.index) cols.push_back(label(idx));
  return dof_matrix(canonical_dof_system(u, r, k), fam.generators(), cols);
}

std::vector<BaryForm> trimmed_basis(const Simplex& u, int r, int k) {
  return select_basis(spanning_family(u, r, k, Space::PminusLk));
}

bool UnisolvenceReport::ok() const {
  for (const auto& b : blocks)
    if (!b.ok()) return false;
  return total == expected && rank == expected;
}

UnisolvenceReport check_canonical_unisolvence(const Simplex& u, int r, int k) {
  UnisolvenceReport rep;
  for (const auto& t : all_faces(u)) {
    if (t.dim() < k) continue;
    auto basis = interior_basis(t, r, k);
    auto tests = canonical_test_forms(t, r, k);
    MatrixQ pairing(sz(tests.size()), sz(basis.size()));
    for (std::size_t i = 0; i < tests.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) pairing(sz(i), sz(j)) = integrate(wedge(tests[i], basis[j]));
    rep.blocks.push_back({t, pairing.rows(), pairing.cols(), rank<Rational>(pairing)});
  }
  auto sys = canonical_dof_system(u, r, k);
  rep.total = sz(sys.functionals.size());
  rep.expected = dim_Pminus(u.dim(), r, k);
  rep.rank = rank<Rational>(dof_matrix(sys, trimmed_basis(u, r, k)).values);
  return rep;
}

MatrixQ d_matrix(const Simplex& u, int k, const std::vector<Rational>& x) {
  const int n = u.dim();
  if (k < 0 || k > n) throw Error("d_matrix: degree out of range");
  if (static_cast<int>(x.size()) != n + 1) throw Error("point has the wrong number of coordinates");
  Rational s = 0;
  for (const auto& c : x) s += c;
  if (s != 1) throw Error("barycentric coordinates must sum to 1");
  auto fs = faces(u, k);
  const FormMask top = mask_of([&] {
    std::vector<int> p;
    for (int i = 1; i <= n; ++i) p.push_back(i);
    return p;
  }());
  // lambda_U = n! dlambda_1 ^ ... ^ dlambda_n in canonical coordinates
  const Rational lambda_u = Rational(factorial(n)) * u.orientation();
  const Rational scale = Rational(binomial(n, k));
  MatrixQ d(sz(fs.size()), sz(fs.size()));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const int s_t = opposite_unchecked(u, fs[i]).sign;
    BaryForm left = wedge(bubble(u, fs[i]), whitney(u, fs[i]));
    for (std::size_t j = 0; j < fs.size(); ++j) {
      Simplex shat = opposite_unchecked(u, fs[j]).face;
      auto value = evaluate(wedge(left, whitney_differential(u, shat)), x);
      auto it = value.find(top);
      Rational c = it == value.end() ? Rational(0) : it->second;
      d(sz(i), sz(j)) = scale * s_t * c / lambda_u;
    }
  }
  return d;
}

bool is_weakly_diagonally_dominant(const MatrixQ& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Rational off = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (j != i) off += abs(m(i, j));
    if (m(i, i) < off) return false;
  }
  return true;
}

bool is_positive_semidefinite(const MatrixQ& m) {
  if (m != m.transpose()) throw Error("is_positive_semidefinite: matrix is not symmetric");
  MatrixQ a = m;
  for (Eigen::Index p = 0; p < a.rows(); ++p) {
    if (a(p, p) < 0) return false;
    if (a(p, p) == 0) {
      for (Eigen::Index j = p + 1; j < a.cols(); ++j)
        if (a(p, j) != 0) return false;
      continue;
    }
    for (Eigen::Index i = p + 1; i < a.rows(); ++i) {
      if (a(i, p) == 0) continue;
      const Rational f = a(i, p) / a(p, p);
      for (Eigen::Index j = p; j < a.cols(); ++j) a(i, j) -= f * a(p, j);
    }
  }
  return true;
}

MatrixQ SmallSimplex::vertex_matrix() const {
  const int len = offset.size();
  MatrixQ m = MatrixQ::Zero(len, parent.size());
  for (int j = 0; j < parent.size(); ++j) {
    for (int i = 0; i < len; ++i) m(i, j) = Rational(offset[i], r);
    m(parent[j], j) += Rational(1, r);
  }
  return m;
}

std::vector<std::vector<Rational>> SmallSimplex::vertices() const {
  MatrixQ m = vertex_matrix();
  std::vector<std::vector<Rational>> out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    std::vector<Rational> p;
    for (Eigen::Index i = 0; i < m.rows(); ++i) p.push_back(m(i, j));
    out.push_back(p);
  }
  return out;
}

std::string SmallSimplex::label() const {
  std::ostringstream os;
  os << "{";
  for (int i = 0; i < offset.size(); ++i) os << (i ? " " : "") << offset[i];
  os << "}" << parent.str();
  return os.str();
}

std::vector<std::vector<Rational>> principal_lattice(const Simplex& u, int r) {
  if (r < 1) throw Error("principal lattice needs r >= 1");
  std::vector<std::vector<Rational>> pts;
  for (const auto& a : multi_indices(u.size(), r)) {
    std::vector<Rational> p;
    for (int i = 0; i < a.size(); ++i) p.emplace_back(a[i], r);
    pts.push_back(p);
  }
  return pts;
}

std::vector<SmallSimplex> small_simplices(const Simplex& u, int r, int k) {
  if (r < 1) throw Error("small simplices need r >= 1");
  std::vector<SmallSimplex> out;
  const Simplex ref = Simplex::reference(u.dim());
  for (const auto& a : multi_indices(u.size(), r - 1))
    for (const auto& t : faces(ref, k)) out.push_back({t, a, r});
  return out;
}

Rational integrate_over(const BaryForm& form, const MatrixQ& vertices, int orientation) {
  const int k = static_cast<int>(vertices.cols()) - 1;
  if (form.degree() != k) throw Error("integrate_over: degree does not match the simplex");
  return integrate(pullback_affine(form, Simplex::reference(k).with_orientation(orientation), vertices));
}

Rational integrate_over(const BaryForm& form, const SmallSimplex& s) {
  return integrate_over(form, s.vertex_matrix(), s.parent.orientation());
}

DofMatrix small_dof_matrix(const Simplex& u, int r, int k) {
  auto fam = spanning_family(u, r, k, Space::PminusLk);
  auto small = small_simplices(u, r, k);
  const Simplex ref = Simplex::reference(k);
  DofMatrix m;
  for (const auto& s : small) m.rows.push_back(s.label());
  for (const auto& idx : fam.index) m.cols.push_back(label(idx));
  m.values = MatrixQ(sz(small.size()), sz(fam.size()));
  for (std::size_t i = 0; i < small.size(); ++i) {
    const MatrixQ vm = small[i].vertex_matrix();
    for (std::size_t j = 0; j < fam.size(); ++j) {
      const auto& [alpha, t] = fam.index[j];
      MatrixQ sub(k + 1, k + 1);
      for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= k; ++b) sub(a, b) = vm(u.position(t[a]), b);
      const Rational det = determinant<Rational>(sub);
      if (det == 0) {
        m.values(sz(i), sz(j)) = 0;
        continue;
      }
      // lambda_T restricted to the small simplex is det times its own Whitney form
      const Rational poly = integrate_density(pullback_affine(BaryForm::monomial(u, alpha), ref, vm));
      m.values(sz(i), sz(j)) = det * poly * t.orientation() * small[i].parent.orientation();
    }
  }
  return m;
}

DofSystem small_dof_system(const Simplex& u, int r, int k) {
  DofSystem sys{"small", u, r, k, {}};
  if (k == 0) {
    for (const auto& p : principal_lattice(u, r))
      sys.functionals.push_back({u, point_label(p), [p](const BaryForm& w) { return evaluate_scalar(w, p); }});
    return sys;
  }
  for (const auto& s : small_simplices(u, r, k))
    sys.functionals.push_back({u, s.label(), [s](const BaryForm& w) { return integrate_over(w, s); }});
  return sys;
}

VolumetricCheck volumetric_check(const Simplex& u, const Simplex& t, const MatrixQ& tprime, const RationalMetric& metric) {
  if (!(metric.simplex() == u)) throw Error("metric lives on another simplex");
  if (tprime.cols() != t.size() || tprime.rows() != u.size()) throw Error("volumetric_check: T' has the wrong shape");
  VolumetricCheck out;
  out.integral = integrate_over(whitney(u, t), tprime, 1);
  std::vector<std::vector<Rational>> pts;
  for (int i = 0; i < u.size(); ++i) {
    if (t.contains_vertex(u[i])) continue;
    std::vector<Rational> p(static_cast<std::size_t>(u.size()), Rational(0));
    p[static_cast<std::size_t>(i)] = 1;
    pts.push_back(p);
  }
  for (Eigen::Index j = 0; j < tprime.cols(); ++j) {
    std::vector<Rational> p;
    for (Eigen::Index i = 0; i < tprime.rows(); ++i) p.push_back(tprime(i, j));
    pts.push_back(p);
  }
  MatrixQ g(sz(pts.size()), sz(pts.size()));
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b) g(sz(a), sz(b)) = a == b ? Rational(0) : metric.squared_distance(pts[a], pts[b]);
  out.ratio_sq = cayley_menger_volume_sq<Rational>(g) / metric.volume_sq();
  return out;
}

namespace {

/// d of each form, keeping a maximal independent subset (in order).
std::vector<BaryForm> independent_differentials(const std::vector<BaryForm>& forms, const Simplex& t, int r, int k) {
  std::vector<BaryForm> ds;
  for (const auto& f : forms) ds.push_back(exterior_derivative(f));
  if (ds.empty()) return ds;
  FormCoordinates coords(t.dim(), r, k + 1);
  std::vector<BaryForm> out;
  for (auto p : pivot_columns<Rational>(coords.matrix(ds))) out.push_back(ds[static_cast<std::size_t>(p)]);
  return out;
}

}  // namespace

DofSystem harmonic_dof_system(const Simplex& u, int r, int k, const RationalMetric& metric) {
  if (r < 1) throw Error("harmonic dofs need r >= 1");
  if (!(metric.simplex() == u)) throw Error("metric lives on another simplex");
  DofSystem sys{"harmonic", u, r, k, {}};
  for (const auto& t : all_faces(u)) {
    const int m = t.dim();
    if (m < k) continue;
    const RationalMetric mt = metric.restrict_to(t);
    std::vector<BaryForm> lower;
    if (k >= 1) lower = independent_differentials(interior_basis(t, r, k - 1), t, r, k - 1);
    for (std::size_t i = 0; i < lower.size(); ++i) {
      BaryForm v = lower[i];
      sys.functionals.push_back({t, t.str() + "#a" + std::to_string(i), [t, v, mt](const BaryForm& w) {
                                   return mass_entry(pullback_to_face(w, t), v, mt);
                                 }});
    }
    if (k == m) {
      sys.functionals.push_back({t, t.str() + "#int", [t](const BaryForm& w) { return integrate(pullback_to_face(w, t)); }});
      continue;
    }
    auto upper = independent_differentials(interior_basis(t, r, k), t, r, k);
    for (std::size_t i = 0; i < upper.size(); ++i) {
      BaryForm v = upper[i];
      sys.functionals.push_back({t, t.str() + "#b" + std::to_string(i), [t, v, mt](const BaryForm& w) {
                                   return mass_entry(exterior_derivative(pullback_to_face(w, t)), v, mt);
                                 }});
    }
  }
  return sys;
}

Interpolator::Interpolator(DofSystem dofs, std::vector<BaryForm> trial) : dofs_(std::move(dofs)), trial_(std::move(trial)) {
  MatrixQ m = dof_matrix(dofs_, trial_).values;
  if (m.rows() != m.cols()) throw Error("singular dof system: " + std::to_string(m.rows()) + " dofs for " +
                                        std::to_string(m.cols()) + " trial functions");
  auto inv = try_solve<Rational>(m, MatrixQ::Identity(m.rows(), m.rows()));
  if (!inv) throw Error("singular dof system");
  inverse_ = *inv;
}

VectorQ Interpolator::dof_values(const BaryForm& u) const {
  VectorQ v(sz(dofs_.functionals.size()));
  for (std::size_t i = 0; i < dofs_.functionals.size(); ++i) v(sz(i)) = dofs_.functionals[i].apply(u);
  return v;
}

VectorQ Interpolator::coefficients(const BaryForm& u) const { return inverse_ * dof_values(u); }

BaryForm Interpolator::operator()(const BaryForm& u) const {
  VectorQ c = coefficients(u);
  BaryForm out(dofs_.ambient, dofs_.k);
  for (std::size_t j = 0; j < trial_.size(); ++j) out += c(sz(j)) * trial_[j];
  return out;
}

BaryForm interpolate(const BaryForm& u, const DofSystem& dofs, const std::vector<BaryForm>& trial) {
  return Interpolator(dofs, trial)(u);
}

std::optional<std::vector<MatrixQ>> complement_subcomplex(const std::vector<MatrixQ>& metric,
                                                          const std::vector<MatrixQ>& annihilator,
                                                          const std::vector<MatrixQ>& dstar) {
  const std::size_t levels = metric.size();
  if (annihilator.size() != levels || dstar.size() != levels) throw Error("complement_subcomplex: size mismatch");
  std::vector<MatrixQ> out;
  for (std::size_t k = 0; k < levels; ++k) {
    const Eigen::Index b = metric[k].rows();
    std::vector<MatrixQ> blocks;
    // orthogonal to d* A_{k+1}
    if (k + 1 < levels && annihilator[k + 1].rows() > 0)
      blocks.push_back(annihilator[k + 1] * dstar[k + 1] * metric[k]);
    // d* of the element orthogonal to d* A_k
    if (k > 0 && annihilator[k].rows() > 0)
      blocks.push_back(annihilator[k] * dstar[k] * metric[k - 1] * dstar[k].transpose());
    Eigen::Index rows = 0;
    for (const auto& m : blocks) rows += m.rows();
    MatrixQ constraints(rows, b);
    Eigen::Index at = 0;
    for (const auto& m : blocks) {
      constraints.middleRows(at, m.rows()) = m;
      at += m.rows();
    }
    MatrixQ d = nullspace<Rational>(constraints).transpose();
    if (d.rows() + annihilator[k].rows() != b) return std::nullopt;
    MatrixQ both(b, b);
    both << annihilator[k], d;
    if (rank<Rational>(both) != b) return std::nullopt;
    out.push_back(d);
  }
  return out;
}

namespace {

/// Coordinates of `forms` in the basis `basis`, both on T, as columns.
MatrixQ coordinates_in(const std::vector<BaryForm>& basis, const std::vector<BaryForm>& forms, int n, int r, int k) {
  FormCoordinates coords(n, r, k);
  MatrixQ x = coords.matrix(basis);
  MatrixQ out(sz(basis.size()), sz(forms.size()));
  for (std::size_t j = 0; j < forms.size(); ++j) {
    auto c = solve_consistent<Rational>(x, coords.coordinates(forms[j]));
    if (!c) throw Error("form is outside the span of the basis");
    out.col(sz(j)) = *c;
  }
  return out;
}

struct FaceData {
  std::vector<BaryForm> basis;
  MatrixQ small_rows;  // small dofs x basis
  std::vector<SmallSimplex> small;
  std::vector<std::vector<Rational>> points;
};

FaceData face_data(const Simplex& t, int r, int k) {
  FaceData fd;
  fd.basis = trimmed_basis(t, r, k);
  DofSystem sys = small_dof_system(t, r, k);
  if (k == 0) fd.points = principal_lattice(t, r);
  else fd.small = small_simplices(t, r, k);
  fd.small_rows = dof_matrix(sys, fd.basis).values;
  if (rank<Rational>(fd.small_rows) != sz(fd.basis.size())) throw Error("not overdetermining");
  return fd;
}

/// Small simplices of T touching no proper face of T only through its boundary:
/// those whose vertices are not all inside one facet of T.
bool attached_to(const MatrixQ& vertices) {
  for (Eigen::Index i = 0; i < vertices.rows(); ++i) {
    bool all_zero = true;
    for (Eigen::Index j = 0; j < vertices.cols(); ++j)
      if (vertices(i, j) != 0) all_zero = false;
    if (all_zero) return false;
  }
  return true;
}

using Point = std::vector<Rational>;
using Chain = std::map<std::vector<Point>, Rational>;

Point embed(const Simplex& u, const Simplex& face, const Point& p) {
  Point q(static_cast<std::size_t>(u.size()), Rational(0));
  for (int i = 0; i < face.size(); ++i) q[static_cast<std::size_t>(u.position(face[i]))] = p[static_cast<std::size_t>(i)];
  return q;
}

/// Adds c times the oriented simplex with the given ordered vertices.
void add_cell(Chain& chain, std::vector<Point> vertices, const Rational& c) {
  int sign = 1;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = 0; j + 1 < vertices.size() - i; ++j)
      if (vertices[j + 1] < vertices[j]) {
        std::swap(vertices[j], vertices[j + 1]);
        sign = -sign;
      }
  Rational& v = chain[vertices];
  v += c * sign;
  if (v == 0) chain.erase(vertices);
}

/// Small-simplex chains, in ambient coordinates, of the rows of a selection.
std::vector<Chain> chains_of(const Simplex& u, const FaceSelection& sel) {
  std::vector<Chain> out;
  for (Eigen::Index i = 0; i < sel.representation.rows(); ++i) {
    Chain c;
    for (Eigen::Index s = 0; s < sel.representation.cols(); ++s) {
      const Rational& coef = sel.representation(i, s);
      if (coef == 0) continue;
      std::vector<Point> vs;
      if (sel.k == 0) {
        vs.push_back(embed(u, sel.face, sel.points[static_cast<std::size_t>(s)]));
      } else {
        const auto& small = sel.small[static_cast<std::size_t>(s)];
        for (const auto& p : small.vertices()) vs.push_back(embed(u, sel.face, p));
        if (small.parent.orientation() < 0) std::swap(vs[0], vs[1]);
      }
      add_cell(c, vs, coef);
    }
    out.push_back(c);
  }
  return out;
}

Chain boundary_of(const Chain& c) {
  Chain out;
  for (const auto& [vs, coef] : c)
    for (std::size_t j = 0; j < vs.size(); ++j) {
      std::vector<Point> face = vs;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
      add_cell(out, face, j % 2 ? Rational(-coef) : coef);
    }
  return out;
}

/// The boundary of every selected chain on T lies in the span of the chains
/// selected one degree lower on the faces of T.
bool formally_commuting(const UnisolventSubset& sub) {
  for (const auto& sel : sub.selections) {
    if (sel.k == 0) continue;
    std::vector<Chain> lower;
    for (const auto& other : sub.selections)
      if (other.k == sel.k - 1 && other.face.is_face_of(sel.face))
        for (auto& c : chains_of(sub.ambient, other)) lower.push_back(std::move(c));
    for (const auto& c : chains_of(sub.ambient, sel)) {
      Chain b = boundary_of(c);
      std::map<std::vector<Point>, Eigen::Index> index;
      for (const auto& l : lower)
        for (const auto& kv : l) index.emplace(kv.first, 0);
      for (const auto& kv : b) index.emplace(kv.first, 0);
      Eigen::Index at = 0;
      for (auto& kv : index) kv.second = at++;
      MatrixQ m = MatrixQ::Zero(at, sz(lower.size()) + 1);
      for (std::size_t j = 0; j < lower.size(); ++j)
        for (const auto& [key, v] : lower[j]) m(index[key], sz(j)) = v;
      for (const auto& [key, v] : b) m(index[key], sz(lower.size())) = v;
      if (rank<Rational>(m) != rank<Rational>(MatrixQ(m.leftCols(sz(lower.size()))))) return false;
    }
  }
  return true;
}

}  // namespace

UnisolventSubset unisolvent_subset(const Simplex& u, int r) {
  const int n = u.dim();
  UnisolventSubset out;
  out.ambient = u;
  out.r = r;

  bool already = true;
  for (int k = 0; k <= n && already; ++k) {
    const auto count = k == 0 ? principal_lattice(u, r).size() : small_simplices(u, r, k).size();
    already = static_cast<std::int64_t>(count) == dim_Pminus(n, r, k);
  }
  out.unchanged = already;

  for (const auto& t : all_faces(u)) {
    const int m = t.dim();
    std::vector<FaceData> data;
    for (int k = 0; k <= m; ++k) data.push_back(face_data(t, r, k));

    std::vector<MatrixQ> selected(static_cast<std::size_t>(m + 1)), reps(static_cast<std::size_t>(m + 1));
    std::vector<MatrixQ> dstar(static_cast<std::size_t>(m + 1));
    for (int k = 0; k <= m; ++k) {
      const auto& fd = data[static_cast<std::size_t>(k)];
      const Eigen::Index b = sz(fd.basis.size());
      if (k == 0) {
        dstar[0] = MatrixQ(b, 0);
      } else {
        std::vector<BaryForm> ds;
        for (const auto& f : data[static_cast<std::size_t>(k - 1)].basis) ds.push_back(exterior_derivative(f));
        dstar[static_cast<std::size_t>(k)] = coordinates_in(fd.basis, ds, m, r, k);
      }
    }
    if (already) {
      for (int k = 0; k <= m; ++k) {
        const auto& fd = data[static_cast<std::size_t>(k)];
        const Eigen::Index rows = fd.small_rows.rows();
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < rows; ++i) {
          MatrixQ v;
          if (k == 0) {
            v = MatrixQ(sz(fd.points[static_cast<std::size_t>(i)].size()), 1);
            for (std::size_t a = 0; a < fd.points[static_cast<std::size_t>(i)].size(); ++a)
              v(sz(a), 0) = fd.points[static_cast<std::size_t>(i)][a];
          } else {
            v = fd.small[static_cast<std::size_t>(i)].vertex_matrix();
          }
          if (attached_to(v)) keep.push_back(i);
        }
        MatrixQ rep = MatrixQ::Zero(sz(keep.size()), rows), fun(sz(keep.size()), fd.small_rows.cols());
        for (std::size_t a = 0; a < keep.size(); ++a) {
          rep(sz(a), keep[a]) = 1;
          fun.row(sz(a)) = fd.small_rows.row(keep[a]);
        }
        selected[static_cast<std::size_t>(k)] = fun;
        reps[static_cast<std::size_t>(k)] = rep;
      }
    } else {
      std::vector<MatrixQ> metric, annihilator;
      for (int k = 0; k <= m; ++k) {
        const auto& fd = data[static_cast<std::size_t>(k)];
        MatrixQ gram = fd.small_rows.transpose() * fd.small_rows;
        metric.push_back(inverse<Rational>(gram));
        auto interior = interior_basis(t, r, k);
        MatrixQ z = coordinates_in(fd.basis, interior, m, r, k);
        annihilator.push_back(nullspace<Rational>(MatrixQ(z.transpose())).transpose());
      }
      auto found = complement_subcomplex(metric, annihilator, dstar);
      std::vector<MatrixQ> d;
      if (found) {
        d = *found;
      } else {
        for (int k = 0; k <= m; ++k) {
          const auto& a = annihilator[static_cast<std::size_t>(k)];
          d.push_back(nullspace<Rational>(MatrixQ(a * metric[static_cast<std::size_t>(k)])).transpose());
        }
      }
      for (int k = 0; k <= m; ++k) {
        selected[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(k)];
        reps[static_cast<std::size_t>(k)] =
            d[static_cast<std::size_t>(k)] * metric[static_cast<std::size_t>(k)] * data[static_cast<std::size_t>(k)].small_rows.transpose();
      }
    }
    for (int k = 0; k <= m; ++k) {
      auto& fd = data[static_cast<std::size_t>(k)];
      out.selections.push_back({t, k, selected[static_cast<std::size_t>(k)], reps[static_cast<std::size_t>(k)],
                                std::move(fd.small), std::move(fd.points)});
    }
  }
  out.commuting = formally_commuting(out);
  return out;
}

DofSystem UnisolventSubset::system(int k) const {
  DofSystem sys{"small-subset", ambient, r, k, {}};
  for (const auto& sel : selections) {
    if (sel.k != k) continue;
    for (Eigen::Index i = 0; i < sel.representation.rows(); ++i) {
      VectorQ coef = sel.representation.row(i).transpose();
      Simplex t = sel.face;
      auto small = sel.small;
      auto points = sel.points;
      sys.functionals.push_back({t, t.str() + "#g" + std::to_string(i), [t, coef, small, points, k](const BaryForm& w) {
                                   BaryForm on_t = pullback_to_face(w, t);
                                   Rational v = 0;
                                   for (Eigen::Index s = 0; s < coef.size(); ++s) {
                                     if (coef(s) == 0) continue;
                                     v += coef(s) * (k == 0 ? evaluate_scalar(on_t, points[static_cast<std::size_t>(s)])
                                                            : integrate_over(on_t, small[static_cast<std::size_t>(s)]));
                                   }
                                   return v;
                                 }});
    }
  }
  return sys;
}

}  // namespace feec
