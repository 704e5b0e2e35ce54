#pragma once

#include "feec/rational.hpp"

#include <cmath>
#include <optional>
#include <type_traits>
#include <vector>

namespace feec {

namespace detail {

template <typename Scalar>
constexpr bool is_exact_v = !std::is_floating_point_v<Scalar>;

template <typename Scalar>
bool is_zero_entry(const Scalar& x, double tol) {
  if constexpr (is_exact_v<Scalar>) {
    (void)tol;
    return x == 0;
  } else {
    return std::abs(x) <= tol;
  }
}

}  // namespace detail

/// Reduced row echelon form with its pivot columns.
template <typename Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;
  std::vector<Eigen::Index> pivots;
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Gauss-Jordan elimination. Exact scalars pivot on the first nonzero entry
/// of a column, floating scalars on the largest one.
template <typename Scalar>
RowEchelon<Scalar> row_echelon(Matrix<Scalar> a, bool reduce_above = true, double tol = 1e-12) {
  RowEchelon<Scalar> out;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < cols && row < rows; ++c) {
    Eigen::Index p = -1;
    if constexpr (detail::is_exact_v<Scalar>) {
      for (Eigen::Index i = row; i < rows; ++i)
        if (a(i, c) != 0) { p = i; break; }
    } else {
      double best = tol;
      for (Eigen::Index i = row; i < rows; ++i)
        if (std::abs(a(i, c)) > best) { best = std::abs(a(i, c)); p = i; }
    }
    if (p < 0) continue;
    if (p != row) a.row(p).swap(a.row(row));
    const Scalar inv = Scalar(1) / a(row, c);
    for (Eigen::Index j = c; j < cols; ++j)
      if (!detail::is_zero_entry(a(row, j), 0.0)) a(row, j) *= inv;
    for (Eigen::Index i = reduce_above ? 0 : row + 1; i < rows; ++i) {
      if (i == row || detail::is_zero_entry(a(i, c), 0.0)) continue;
      const Scalar f = a(i, c);
      for (Eigen::Index j = c; j < cols; ++j)
        if (!detail::is_zero_entry(a(row, j), 0.0)) a(i, j) -= f * a(row, j);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

template <typename Scalar>
Eigen::Index rank(const Matrix<Scalar>& a, double tol = 1e-12) {
  return row_echelon<Scalar>(a, false, tol).rank();
}

/// Columns of a basis of ker a. Each free variable yields one column with a 1 in
/// that position, so the basis is fixed by the pivot order.
template <typename Scalar>
Matrix<Scalar> nullspace(const Matrix<Scalar>& a, double tol = 1e-12) {
  const auto ech = row_echelon<Scalar>(a, true, tol);
  const Eigen::Index cols = a.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index j = 0; j < cols; ++j)
    if (!is_pivot[static_cast<std::size_t>(j)]) free.push_back(j);
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(cols, static_cast<Eigen::Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    const auto col = static_cast<Eigen::Index>(f);
    basis(free[f], col) = Scalar(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      basis(ech.pivots[r], col) = -ech.reduced(static_cast<Eigen::Index>(r), free[f]);
  }
  return basis;
}

template <typename Scalar>
std::vector<Eigen::Index> pivot_columns(const Matrix<Scalar>& a, double tol = 1e-12) {
  return row_echelon<Scalar>(a, false, tol).pivots;
}

template <typename Scalar>
Scalar determinant(Matrix<Scalar> a) {
  if (a.rows() != a.cols()) throw Error("determinant of a non-square matrix");
  const Eigen::Index n = a.rows();
  Scalar det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = -1;
    if constexpr (detail::is_exact_v<Scalar>) {
      for (Eigen::Index i = c; i < n; ++i)
        if (a(i, c) != 0) { p = i; break; }
    } else {
      double best = 0.0;
      for (Eigen::Index i = c; i < n; ++i)
        if (std::abs(a(i, c)) > best) { best = std::abs(a(i, c)); p = i; }
    }
    if (p < 0) return Scalar(0);
    if (p != c) { a.row(p).swap(a.row(c)); det = -det; }
    det *= a(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (detail::is_zero_entry(a(i, c), 0.0)) continue;
      const Scalar f = a(i, c) / a(c, c);
      for (Eigen::Index j = c; j < n; ++j)
        if (!detail::is_zero_entry(a(c, j), 0.0)) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Solves a x = b for square invertible a; returns nullopt when a is singular.
template <typename Scalar>
std::optional<Matrix<Scalar>> try_solve(const Matrix<Scalar>& a, const Matrix<Scalar>& b,
                                        double tol = 1e-12) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) throw Error("solve: shape mismatch");
  Matrix<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  auto ech = row_echelon<Scalar>(std::move(aug), true, tol);
  if (ech.rank() < a.rows() || (a.rows() > 0 && ech.pivots.back() >= a.cols())) return std::nullopt;
  return Matrix<Scalar>(ech.reduced.rightCols(b.cols()));
}

template <typename Scalar>
Matrix<Scalar> solve(const Matrix<Scalar>& a, const Matrix<Scalar>& b, double tol = 1e-12) {
  auto x = try_solve(a, b, tol);
  if (!x) throw Error("solve: singular matrix");
  return *x;
}

template <typename Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& a, double tol = 1e-12) {
  return solve<Scalar>(a, Matrix<Scalar>::Identity(a.rows(), a.rows()), tol);
}

/// Solves a x = b for a consistent, possibly rectangular system (any solution).
template <typename Scalar>
std::optional<Vector<Scalar>> solve_consistent(const Matrix<Scalar>& a, const Vector<Scalar>& b,
                                               double tol = 1e-12) {
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  auto ech = row_echelon<Scalar>(std::move(aug), true, tol);
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r)
    x(ech.pivots[r]) = ech.reduced(static_cast<Eigen::Index>(r), a.cols());
  return x;
}

template <typename Scalar>
bool is_zero(const Matrix<Scalar>& a, double tol = 0.0) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!detail::is_zero_entry(a(i, j), tol)) return false;
  return true;
}

}  // namespace feec
