#pragma once

#include "feec/forms.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace feec {

/// Points t_i[j], one row per vertex i of a k-simplex, j = 0..r-1.
struct NodeTable {
  std::vector<std::vector<Rational>> t;

  static NodeTable bernstein(int k, int r);
  static NodeTable lagrange(int k, int r);
  /// Rows separated by ';' or whitespace, entries by ',', each entry as accepted by parse_rational.
  static NodeTable parse(const std::string& text);

  int k() const { return static_cast<int>(t.size()) - 1; }
  int r() const { return t.empty() ? 0 : static_cast<int>(t.front().size()); }
  std::string str() const;
};

/// A multi-index alpha with |alpha| < r and sum_i t_i[alpha_i] = 1, if any.
std::optional<MultiIndex> admissibility_witness(const NodeTable& nodes);
bool admissible(const NodeTable& nodes);

/// C^alpha = prod_i beta_i[alpha_i](lambda_i) with beta_i[j](t) = (t - t_i[0])...(t - t_i[j-1]).
/// Any weight |alpha| <= r is allowed.
BaryForm basis_function(const Simplex& u, const NodeTable& nodes, const MultiIndex& alpha);
/// |alpha|! / alpha! * C^alpha.
BaryForm scaled_basis_function(const Simplex& u, const NodeTable& nodes, const MultiIndex& alpha);

/// C^alpha for alpha in multi_indices(k+1, r); throws unless admissible.
std::vector<BaryForm> basis_family(const Simplex& u, const NodeTable& nodes);
std::vector<BaryForm> scaled_basis_family(const Simplex& u, const NodeTable& nodes);

/// Homogeneous coefficients of a scalar polynomial of degree <= r: multiplies
/// each term of lower weight by (sum lambda)^(r - weight). Entries follow
/// multi_indices(n+1, r).
VectorQ homogeneous_coefficients(const BaryForm& p, int r);
/// Columns: the C^alpha in the lambda^beta basis, |alpha| = |beta| = r.
MatrixQ change_of_basis(const Simplex& u, const NodeTable& nodes);

/// sum_alpha c_alpha scaled C^alpha(x) by repeated reduction
/// c_alpha <- sum_i (x_i - t_i[alpha_i]) c_{alpha + e_i}.
Rational de_casteljau_eval(const std::map<MultiIndex, Rational>& coeffs, const std::vector<Rational>& x,
                           const NodeTable& nodes);

}  // namespace feec
