#pragma once

#include "feec/complex.hpp"
#include "feec/forms.hpp"
#include "feec/linalg.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace feec {

/// Squared Cayley-Menger volume of the simplex whose pairwise squared
/// distances are g (size (m+1) x (m+1), zero diagonal). No validation; a
/// single point has volume 1.
template <typename Scalar>
Scalar cayley_menger_volume_sq(const Matrix<Scalar>& g) {
  const Eigen::Index m1 = g.rows();
  if (g.cols() != m1 || m1 == 0) throw Error("cayley_menger: need a square nonempty matrix");
  const int m = static_cast<int>(m1) - 1;
  if (m == 0) return Scalar(1);
  Matrix<Scalar> bordered(m1 + 1, m1 + 1);
  bordered(0, 0) = Scalar(0);
  for (Eigen::Index i = 0; i < m1; ++i) {
    bordered(0, i + 1) = Scalar(1);
    bordered(i + 1, 0) = Scalar(1);
    for (Eigen::Index j = 0; j < m1; ++j) bordered(i + 1, j + 1) = g(i, j);
  }
  Scalar scale(1);
  for (int i = 1; i <= m; ++i) scale *= Scalar(2 * i * i);  // 2^m (m!)^2
  Scalar det = determinant<Scalar>(bordered);
  return (m % 2 ? det : -det) / scale;
}

/// Constant metric on a simplex given by its squared edge lengths.
template <typename Scalar>
class EdgeMetric {
 public:
  /// g is (n+1) x (n+1) and symmetric; the diagonal is ignored.
  EdgeMetric(Simplex u, Matrix<Scalar> g) : u_(std::move(u)), g_(std::move(g)) {
    const Eigen::Index m1 = u_.size();
    if (g_.rows() != m1 || g_.cols() != m1) throw Error("metric size does not match the simplex");
    for (Eigen::Index i = 0; i < m1; ++i) {
      g_(i, i) = Scalar(0);
      for (Eigen::Index j = i + 1; j < m1; ++j) {
        if (g_(i, j) != g_(j, i)) throw Error("metric must be symmetric");
        if (!(g_(i, j) > 0)) throw Error("degenerate metric");
      }
    }
    vol_sq_ = cayley_menger_volume_sq<Scalar>(g_);
    if (!(vol_sq_ > 0)) throw Error("degenerate metric");
  }

  const Simplex& simplex() const { return u_; }
  const Matrix<Scalar>& squared_lengths() const { return g_; }
  int n() const { return u_.dim(); }
  Scalar volume_sq() const { return vol_sq_; }

  EdgeMetric restrict_to(const Simplex& face) const {
    if (!face.is_face_of(u_)) throw Error("not a face");
    Matrix<Scalar> g(face.size(), face.size());
    for (int i = 0; i < face.size(); ++i)
      for (int j = 0; j < face.size(); ++j) g(i, j) = g_(u_.position(face[i]), u_.position(face[j]));
    return EdgeMetric(face, g);
  }

  /// Squared distance between two points given in barycentric coordinates.
  Scalar squared_distance(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const {
    const std::size_t m1 = static_cast<std::size_t>(u_.size());
    if (a.size() != m1 || b.size() != m1) throw Error("point has the wrong number of coordinates");
    Scalar s(0);
    for (std::size_t i = 0; i < m1; ++i)
      for (std::size_t j = 0; j < m1; ++j)
        s -= g_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * (a[i] - b[i]) * (a[j] - b[j]);
    return s / Scalar(2);
  }

  /// Matrix of the products dlambda_i . dlambda_j.
  Matrix<Scalar> grad_products() const {
    const int n = this->n();
    Matrix<Scalar> out = Matrix<Scalar>::Zero(n + 1, n + 1);
    if (n == 0) return out;
    for (int i = 0; i <= n; ++i) {
      std::vector<int> others;
      for (int j = 0; j <= n; ++j)
        if (j != i) others.push_back(j);
      Matrix<Scalar> a(n, n), rhs = Matrix<Scalar>::Constant(n, 1, Scalar(-1));
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          const int k = others[static_cast<std::size_t>(p)], j = others[static_cast<std::size_t>(q)];
          a(p, q) = (g_(j, i) + g_(k, i) - g_(j, k)) / Scalar(2);
        }
      auto z = try_solve<Scalar>(a, rhs);
      if (!z) throw Error("degenerate metric");
      Scalar diag(0);
      for (int q = 0; q < n; ++q) {
        out(i, others[static_cast<std::size_t>(q)]) = (*z)(q, 0);
        diag -= (*z)(q, 0);
      }
      out(i, i) = diag;
    }
    return out;
  }

 private:
  Simplex u_;
  Matrix<Scalar> g_;
  Scalar vol_sq_;
};

using RationalMetric = EdgeMetric<Rational>;

/// Pointwise inner product of two k-forms on the metric's simplex, as a
/// scalar polynomial (Gram determinants of the dlambda products).
BaryForm form_inner_product(const BaryForm& u, const BaryForm& v, const RationalMetric& metric);
/// Integral of the pointwise product divided by the volume of the simplex.
Rational mass_entry(const BaryForm& u, const BaryForm& v, const RationalMetric& metric);
/// Mass matrix divided by the volume (multiply by sqrt(volume_sq()) for the real matrix).
MatrixQ mass_matrix(const std::vector<BaryForm>& basis, const RationalMetric& metric);
Matrix<double> mass_matrix_double(const std::vector<BaryForm>& basis, const RationalMetric& metric);

/// Square root of a rational when it is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& q);
/// "p/q" or "p/q*sqrt(m/n)" for the product c * sqrt(s).
std::string format_scaled_sqrt(const Rational& c, const Rational& s);

}  // namespace feec
