#include "feec/bases.hpp"

#include "feec/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace feec {

NodeTable NodeTable::bernstein(int k, int r) {
  if (k < 0 || r < 1) throw Error("node table needs k >= 0 and r >= 1");
  return {std::vector<std::vector<Rational>>(static_cast<std::size_t>(k + 1), std::vector<Rational>(static_cast<std::size_t>(r)))};
}

NodeTable NodeTable::lagrange(int k, int r) {
  NodeTable nodes = bernstein(k, r);
  for (auto& row : nodes.t)
    for (int j = 0; j < r; ++j) row[static_cast<std::size_t>(j)] = Rational(j, r);
  return nodes;
}

NodeTable NodeTable::parse(const std::string& text) {
  NodeTable nodes;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ';', ' ');
  std::stringstream rows(normalized);
  std::string row;
  while (rows >> row) {
    std::vector<Rational> values;
    std::stringstream entries(row);
    std::string entry;
    while (std::getline(entries, entry, ',')) values.push_back(parse_rational(entry));
    nodes.t.push_back(std::move(values));
  }
  if (nodes.t.empty() || nodes.r() < 1) throw Error("empty node table");
  for (const auto& r : nodes.t)
    if (static_cast<int>(r.size()) != nodes.r()) throw Error("node table rows have different lengths");
  return nodes;
}

std::string NodeTable::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << (i ? ";" : "");
    for (std::size_t j = 0; j < t[i].size(); ++j) os << (j ? "," : "") << t[i][j].str();
  }
  return os.str();
}

std::optional<MultiIndex> admissibility_witness(const NodeTable& nodes) {
  for (const auto& a : multi_indices_up_to(nodes.k() + 1, nodes.r() - 1)) {
    Rational s = 0;
    for (int i = 0; i <= nodes.k(); ++i) s += nodes.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(a[i])];
    if (s == 1) return a;
  }
  return std::nullopt;
}

bool admissible(const NodeTable& nodes) { return !admissibility_witness(nodes); }

BaryForm basis_function(const Simplex& u, const NodeTable& nodes, const MultiIndex& alpha) {
  if (nodes.k() != u.dim() || alpha.size() != u.size()) throw Error("node table does not match the simplex");
  if (alpha.weight() > nodes.r()) throw Error("multi-index weight exceeds the node table");
  BaryForm c = BaryForm::constant(u, 1);
  for (int i = 0; i < alpha.size(); ++i)
    for (int j = 0; j < alpha[i]; ++j)
      c = wedge(c, BaryForm::lambda(u, i) - BaryForm::constant(u, nodes.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
  return c;
}

BaryForm scaled_basis_function(const Simplex& u, const NodeTable& nodes, const MultiIndex& alpha) {
  return Rational(factorial(alpha.weight()), alpha.factorial()) * basis_function(u, nodes, alpha);
}

std::vector<BaryForm> basis_family(const Simplex& u, const NodeTable& nodes) {
  if (auto w = admissibility_witness(nodes)) {
    std::ostringstream os;
    os << "node table is not admissible: t sums to 1 at (";
    for (int i = 0; i < w->size(); ++i) os << (i ? " " : "") << (*w)[i];
    os << ")";
    throw Error(os.str());
  }
  std::vector<BaryForm> out;
  for (const auto& a : multi_indices(u.size(), nodes.r())) out.push_back(basis_function(u, nodes, a));
  return out;
}

std::vector<BaryForm> scaled_basis_family(const Simplex& u, const NodeTable& nodes) {
  auto out = basis_family(u, nodes);
  auto alphas = multi_indices(u.size(), nodes.r());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] *= Rational(factorial(nodes.r()), alphas[i].factorial());
  return out;
}

VectorQ homogeneous_coefficients(const BaryForm& p, int r) {
  if (p.degree() != 0) throw Error("homogeneous_coefficients needs a scalar polynomial");
  const Simplex& u = p.ambient();
  BaryForm sum(u, 0);
  for (int i = 0; i < u.size(); ++i) sum += BaryForm::lambda(u, i);
  std::vector<BaryForm> powers{BaryForm::constant(u, 1)};
  for (int d = 1; d <= r; ++d) powers.push_back(wedge(powers.back(), sum));
  BaryForm h(u, 0);
  for (const auto& [key, c] : p.terms()) {
    const int w = key.alpha.weight();
    if (w > r) throw Error("polynomial degree exceeds r");
    h += wedge(BaryForm::monomial(u, key.alpha, 0, c), powers[static_cast<std::size_t>(r - w)]);
  }
  auto betas = multi_indices(u.size(), r);
  VectorQ out(static_cast<Eigen::Index>(betas.size()));
  for (std::size_t i = 0; i < betas.size(); ++i) out(static_cast<Eigen::Index>(i)) = h.coefficient(betas[i], 0);
  return out;
}

MatrixQ change_of_basis(const Simplex& u, const NodeTable& nodes) {
  auto family = basis_family(u, nodes);
  MatrixQ m(static_cast<Eigen::Index>(family.size()), static_cast<Eigen::Index>(family.size()));
  for (std::size_t j = 0; j < family.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = homogeneous_coefficients(family[j], nodes.r());
  return m;
}

Rational de_casteljau_eval(const std::map<MultiIndex, Rational>& coeffs, const std::vector<Rational>& x,
                           const NodeTable& nodes) {
  const int len = nodes.k() + 1, r = nodes.r();
  if (static_cast<int>(x.size()) != len) throw Error("point has the wrong number of coordinates");
  std::map<MultiIndex, Rational> level;
  for (const auto& a : multi_indices(len, r)) {
    auto it = coeffs.find(a);
    if (it == coeffs.end()) throw Error("missing coefficient");
    level.emplace(a, it->second);
  }
  if (coeffs.size() != level.size()) throw Error("coefficient outside the lattice");
  for (int d = r - 1; d >= 0; --d) {
    std::map<MultiIndex, Rational> next;
    for (const auto& a : multi_indices(len, d)) {
      Rational c = 0;
      for (int i = 0; i < len; ++i)
        c += (x[static_cast<std::size_t>(i)] - nodes.t[static_cast<std::size_t>(i)][static_cast<std::size_t>(a[i])]) *
             level.at(a + MultiIndex::unit(len, i));
      next.emplace(a, c);
    }
    level = std::move(next);
  }
  return level.begin()->second;
}

}  // namespace feec
