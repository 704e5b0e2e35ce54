#include "feec/metric.hpp"

#include <map>

namespace feec {

BaryForm form_inner_product(const BaryForm& u, const BaryForm& v, const RationalMetric& metric) {
  if (!(u.ambient() == v.ambient()) || !(u.ambient() == metric.simplex()))
    throw Error("form_inner_product: forms and metric live on different simplices");
  if (u.degree() != v.degree()) throw Error("form_inner_product: degrees differ");
  const MatrixQ gp = metric.grad_products();
  const int k = u.degree();
  std::map<std::pair<FormMask, FormMask>, Rational> gram;
  auto gram_det = [&](FormMask a, FormMask b) -> const Rational& {
    auto key = std::make_pair(a, b);
    auto it = gram.find(key);
    if (it != gram.end()) return it->second;
    auto pa = mask_positions(a), pb = mask_positions(b);
    MatrixQ m(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m(i, j) = gp(pa[static_cast<std::size_t>(i)], pb[static_cast<std::size_t>(j)]);
    return gram.emplace(key, k == 0 ? Rational(1) : determinant<Rational>(m)).first->second;
  };
  BaryForm out(u.ambient(), 0);
  for (const auto& [a, ca] : u.terms())
    for (const auto& [b, cb] : v.terms()) {
      const Rational& gd = gram_det(a.dl, b.dl);
      if (gd != 0) out.add_term(a.alpha + b.alpha, 0, ca * cb * gd);
    }
  return out;
}

Rational mass_entry(const BaryForm& u, const BaryForm& v, const RationalMetric& metric) {
  return integrate_density(form_inner_product(u, v, metric));
}

MatrixQ mass_matrix(const std::vector<BaryForm>& basis, const RationalMetric& metric) {
  const auto m = static_cast<Eigen::Index>(basis.size());
  MatrixQ out(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i; j < m; ++j) {
      out(i, j) = mass_entry(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)], metric);
      out(j, i) = out(i, j);
    }
  return out;
}

Matrix<double> mass_matrix_double(const std::vector<BaryForm>& basis, const RationalMetric& metric) {
  return to_double<Rational>(mass_matrix(basis, metric)) * std::sqrt(to_double(metric.volume_sq()));
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer num = numerator(q), den = denominator(q);
  Integer a = sqrt(num), b = sqrt(den);
  if (a * a != num || b * b != den) return std::nullopt;
  return Rational(a, b);
}

std::string format_scaled_sqrt(const Rational& c, const Rational& s) {
  if (c == 0) return "0";
  if (auto r = exact_sqrt(s)) return Rational(c * *r).str();
  return c.str() + "*sqrt(" + s.str() + ")";
}

}  // namespace feec
