#include "feec/resolve.hpp"

#include "feec/dofs.hpp"
#include "feec/linalg.hpp"

#include <json.hpp>

#include <map>
#include <sstream>

namespace feec {

namespace {

Eigen::Index sz(std::size_t s) { return static_cast<Eigen::Index>(s); }

std::map<std::pair<MultiIndex, std::vector<int>>, Eigen::Index> index_lookup(const std::vector<FamilyIndex>& idx) {
  std::map<std::pair<MultiIndex, std::vector<int>>, Eigen::Index> m;
  for (std::size_t i = 0; i < idx.size(); ++i) m[{idx[i].alpha, idx[i].face.vertices()}] = sz(i);
  return m;
}

std::vector<Simplex> faces_or_empty(const Simplex& u, int k) {
  if (k == -1) return {Simplex()};
  return faces(u, k);
}

LinearMapOnFamilies to_coordinates(std::string name, std::vector<FamilyIndex> domain,
                                   const FormCoordinates& coords, const std::vector<BaryForm>& images) {
  LinearMapOnFamilies f{std::move(name), std::move(domain), coordinate_index(coords), coords.matrix(images)};
  return f;
}

}  // namespace

std::vector<FamilyIndex> tensor_index(const Simplex& u, int q, int k) {
  std::vector<FamilyIndex> idx;
  if (q < 0 || k < -1 || k > u.dim()) return idx;
  auto fs = faces_or_empty(u, k);
  for (const auto& a : multi_indices(u.size(), q))
    for (const auto& f : fs) idx.push_back({a, f});
  return idx;
}

std::vector<FamilyIndex> coordinate_index(const FormCoordinates& coords) {
  std::vector<FamilyIndex> idx;
  for (const auto& key : coords.keys()) idx.push_back({key.alpha, Simplex(mask_positions(key.dl))});
  return idx;
}

LinearMapOnFamilies delta_tensor(const Simplex& u, int q, int k) {
  LinearMapOnFamilies f{"delta", tensor_index(u, q, k), tensor_index(u, q, k + 1), {}};
  f.matrix = MatrixQ::Zero(sz(f.codomain.size()), sz(f.domain.size()));
  auto rows = index_lookup(f.codomain);
  for (std::size_t j = 0; j < f.domain.size(); ++j) {
    const auto& [alpha, t] = f.domain[j];
    for (int v : u.vertices()) {
      if (t.contains_vertex(v)) continue;
      std::vector<int> vs = t.vertices();
      vs.push_back(v);
      Simplex s = Simplex::from_tuple(vs).with_orientation(1);
      f.matrix(rows.at({alpha, s.vertices()}), sz(j)) = incidence(s, t);
    }
  }
  return f;
}

LinearMapOnFamilies boundary_tensor(const Simplex& u, int q, int k) {
  auto d = delta_tensor(u, q, k - 1);
  return {"delta'", d.codomain, d.domain, d.matrix.transpose()};
}

LinearMapOnFamilies sigma_map(const Simplex& u, int q, int k) {
  auto domain = tensor_index(u, q, k);
  std::vector<BaryForm> images;
  for (const auto& [alpha, t] : domain)
    images.push_back(wedge(BaryForm::monomial(u, alpha), whitney_differential(u, t)));
  return to_coordinates("sigma", domain, FormCoordinates(u.dim(), q, k + 1), images);
}

LinearMapOnFamilies sigma0_map(const Simplex& u, int r, int k) {
  const int q = r - u.dim() + k - 1;
  if (q < 0) throw Error("empty target");
  auto domain = tensor_index(u, q, k);
  std::vector<BaryForm> images;
  for (const auto& [alpha, t] : domain)
    images.push_back(wedge(wedge(BaryForm::monomial(u, alpha), bubble(u, t)), whitney(u, t)));
  return to_coordinates("sigma'", domain, FormCoordinates(u.dim(), r, k), images);
}

LinearMapOnFamilies tau_map(const Simplex& u, int r, int k) {
  if (r < 1 || k < 1) throw Error("tau_map: needs r >= 1 and k >= 1");
  LinearMapOnFamilies f{"tau", tensor_index(u, r - 1, k), tensor_index(u, r, k - 1), {}};
  f.matrix = MatrixQ::Zero(sz(f.codomain.size()), sz(f.domain.size()));
  auto rows = index_lookup(f.codomain);
  for (std::size_t j = 0; j < f.domain.size(); ++j) {
    const auto& [alpha, t] = f.domain[j];
    for (int p = 0; p < t.size(); ++p) {
      Simplex face = t.drop(p);
      MultiIndex a = alpha + MultiIndex::unit(u.size(), u.position(t[p]));
      f.matrix(rows.at({a, face.vertices()}), sz(j)) += incidence(t, face);
    }
  }
  return f;
}

LinearMapOnFamilies beta_map(const Simplex& u, int r, int k) {
  if (r < 1) throw Error("beta_map: needs r >= 1");
  auto domain = tensor_index(u, r - 1, k);
  std::vector<BaryForm> images;
  for (const auto& [alpha, t] : domain) images.push_back(wedge(BaryForm::monomial(u, alpha), whitney(u, t)));
  return to_coordinates("beta", domain, FormCoordinates(u.dim(), r, k), images);
}

Resolution resolve_pminus(int n, int r, int k) {
  if (n < 0 || k < 0 || k > n || r < 1) throw Error("resolve_pminus: parameters out of range");
  Simplex u = Simplex::reference(n);
  Resolution res{"P-_" + std::to_string(r) + " Lambda^" + std::to_string(k), n, r, k, dim_Pminus(n, r, k), {}};
  res.maps.push_back(beta_map(u, r, k));
  for (int i = 1; r - 1 - i >= 0 && k + i <= n; ++i) res.maps.push_back(tau_map(u, r - i, k + i));
  return res;
}

Resolution resolve_pminus0(int n, int r, int k) {
  if (n < 0 || k < 0 || k > n || r < 1) throw Error("resolve_pminus0: parameters out of range");
  const int q = r - n + k - 1;
  if (q < 0) throw Error("empty target");
  Simplex u = Simplex::reference(n);
  Resolution res{"P-_" + std::to_string(r) + " Lambda^" + std::to_string(k) + "_0", n, r, k, dim_Pminus0(n, r, k), {}};
  res.maps.push_back(sigma0_map(u, r, k));
  for (int j = k + 1; j <= n; ++j) res.maps.push_back(boundary_tensor(u, q, j));
  return res;
}

Resolution resolve_differential(int n, int q, int k) {
  if (n < 1 || k < 0 || k + 1 > n || q < 0) throw Error("resolve_differential: parameters out of range");
  Simplex u = Simplex::reference(n);
  Resolution res{"P_" + std::to_string(q) + " Lambda^" + std::to_string(k + 1), n, q, k, dim_P(n, q, k + 1), {}};
  res.maps.push_back(sigma_map(u, q, k));
  for (int j = k - 1; j >= -1; --j) res.maps.push_back(delta_tensor(u, q, j));
  return res;
}

bool ResolutionReport::ok() const {
  if (!onto || !injective) return false;
  for (const auto& s : stages)
    if (!s.composes_to_zero || !s.exact) return false;
  return true;
}

std::string ResolutionReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const auto& s = stages[i];
    os << (i ? " <- " : "") << s.map << "[" << s.rows << "x" << s.cols << ", rank " << s.rank << "]";
  }
  return os.str();
}

ResolutionReport verify(const Resolution& res) {
  ResolutionReport rep;
  std::vector<Eigen::Index> ranks;
  for (const auto& f : res.maps) {
    StageReport s{f.name, f.matrix.rows(), f.matrix.cols(), rank<Rational>(f.matrix)};
    ranks.push_back(s.rank);
    rep.stages.push_back(s);
  }
  rep.onto = !ranks.empty() && ranks[0] == res.target_dim;
  for (std::size_t i = 0; i < res.maps.size(); ++i) {
    const Eigen::Index dim_w = res.maps[i].matrix.cols();
    const Eigen::Index next = i + 1 < res.maps.size() ? ranks[i + 1] : 0;
    rep.stages[i].exact = next + ranks[i] == dim_w;
    if (i + 1 < res.maps.size())
      rep.stages[i].composes_to_zero = is_zero<Rational>(res.maps[i].matrix * res.maps[i + 1].matrix);
  }
  rep.injective = !res.maps.empty() && ranks.back() == res.maps.back().matrix.cols();
  return rep;
}

std::string to_json(const Resolution& res, const ResolutionReport& report) {
  nlohmann::ordered_json j;
  j["target"] = res.target;
  j["n"] = res.n;
  j["r"] = res.r;
  j["k"] = res.k;
  j["target_dim"] = res.target_dim;
  j["stages"] = nlohmann::ordered_json::array();
  for (const auto& s : report.stages)
    j["stages"].push_back({{"map", s.map}, {"rows", s.rows}, {"cols", s.cols}, {"rank", s.rank},
                           {"composes_to_zero", s.composes_to_zero}, {"exact", s.exact}});
  j["onto"] = report.onto;
  j["injective"] = report.injective;
  j["ok"] = report.ok();
  return j.dump(2) + "\n";
}

Redundancy eliminate_redundancy(const MatrixQ& eps, std::optional<Eigen::Index> expected_dim) {
  const auto ech = row_echelon<Rational>(eps, true);
  const Eigen::Index want = expected_dim ? *expected_dim : eps.rows();
  if (ech.rank() != want) throw Error("family does not span");
  Redundancy out;
  out.b = nullspace<Rational>(eps);
  out.c = out.b.transpose();
  out.selection = ech.pivots;
  return out;
}

namespace {

std::int64_t family_dimension(const SpanningFamily& family) {
  const int n = family.ambient.dim();
  switch (family.tag) {
    case Space::PminusLk: return dim_Pminus(n, family.r, family.k);
    case Space::PminusLk0: return dim_Pminus0(n, family.r, family.k);
    case Space::PLk: return dim_P(n, family.r, family.k);
  }
  return 0;
}

}  // namespace

Redundancy eliminate_redundancy(const SpanningFamily& family) {
  // P_r Lambda^k generators are homogeneous of degree r, other tags have degree r
  FormCoordinates coords(family.ambient.dim(), family.r, family.k);
  MatrixQ eps = coords.matrix(family.generators());
  return eliminate_redundancy(eps, family_dimension(family));
}

std::vector<BaryForm> select_basis(const SpanningFamily& family) {
  auto red = eliminate_redundancy(family);
  std::vector<BaryForm> out;
  for (auto j : red.selection) out.push_back(family.generator(static_cast<std::size_t>(j)));
  return out;
}

std::vector<BaryForm> interior_basis(const Simplex& v, int r, int k) {
  if (k > v.dim()) return {};
  return select_basis(spanning_family(v, r, k, Space::PminusLk0));
}

GeometricDecomposition geometric_decomposition(const SimplicialComplex& cx, int r, int k) {
  if (r < 1 || k < 0) throw Error("geometric_decomposition: needs r >= 1 and k >= 0");
  GeometricDecomposition gd;
  gd.r = r;
  gd.k = k;
  std::vector<std::vector<BaryForm>> tests;
  for (int d = k; d <= cx.dimension(); ++d)
    for (const auto& face : cx.simplices(d)) {
      auto basis = interior_basis(face, r, k);
      auto test = canonical_test_forms(face, r, k);
      if (basis.size() != test.size()) throw Error("non-unisolvent dof configuration on " + face.str());
      if (basis.empty()) continue;
      gd.blocks.push_back({face, gd.dimension(), sz(basis.size())});
      for (auto& b : basis) {
        gd.basis.push_back(std::move(b));
        gd.basis_block.push_back(gd.blocks.size() - 1);
      }
      tests.push_back(std::move(test));
    }
  const Eigen::Index dim = gd.dimension();
  gd.matrix = MatrixQ::Zero(dim, dim);
  for (std::size_t bw = 0; bw < gd.blocks.size(); ++bw) {
    const auto& w = gd.blocks[bw];
    for (std::size_t j = 0; j < gd.basis.size(); ++j) {
      const Simplex& v = gd.blocks[gd.basis_block[j]].face;
      if (!v.is_face_of(w.face)) continue;
      BaryForm on_w = extend_to(gd.basis[j], w.face);
      for (std::size_t t = 0; t < tests[bw].size(); ++t)
        gd.matrix(w.offset + sz(t), sz(j)) = integrate(wedge(tests[bw][t], on_w));
    }
    auto diag = gd.matrix.block(w.offset, w.offset, w.size, w.size);
    if (rank<Rational>(MatrixQ(diag)) != w.size) throw Error("non-unisolvent dof configuration on " + w.face.str());
  }
  return gd;
}

std::string matrix_to_csv(const MatrixQ& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).str();
    os << "\n";
  }
  return os.str();
}

}  // namespace feec
