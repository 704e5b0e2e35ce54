#pragma once

#include "feec/bases.hpp"
#include "feec/forms.hpp"
#include "feec/linalg.hpp"
#include "feec/metric.hpp"
#include "feec/whitney.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace feec::testing {

inline Rational random_rational(std::mt19937& rng, int range = 5, int max_den = 4) {
  std::uniform_int_distribution<int> num(-range, range), den(1, max_den);
  return Rational(num(rng), den(rng));
}

/// Random form of the given degree with polynomial degree <= r, on `terms` random terms.
inline BaryForm random_form(std::mt19937& rng, const Simplex& u, int k, int r, int terms = 6) {
  BaryForm f(u, k);
  auto js = faces(Simplex::reference(u.dim()), k - 1);
  if (js.empty()) return f;
  std::uniform_int_distribution<int> pick_j(0, static_cast<int>(js.size()) - 1), pick_w(0, r);
  for (int t = 0; t < terms; ++t) {
    auto alphas = multi_indices(u.size(), pick_w(rng));
    std::uniform_int_distribution<int> pick_a(0, static_cast<int>(alphas.size()) - 1);
    f.add_term(alphas[static_cast<std::size_t>(pick_a(rng))], mask_of(js[static_cast<std::size_t>(pick_j(rng))].vertices()),
               random_rational(rng));
  }
  return f;
}

using Points = std::vector<VectorQ>;

inline MatrixQ squared_lengths(const Points& p) {
  const auto m = static_cast<Eigen::Index>(p.size());
  MatrixQ g = MatrixQ::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) g(i, j) = (p[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(j)]).squaredNorm();
  return g;
}

/// Columns (p_i; 1); the barycentric map is its inverse.
inline MatrixQ affine_frame(const Points& p) {
  const auto n = p.front().size();
  MatrixQ a(n + 1, n + 1);
  for (Eigen::Index j = 0; j <= n; ++j) {
    a.col(j).head(n) = p[static_cast<std::size_t>(j)];
    a(n, j) = 1;
  }
  return a;
}

inline Points random_points(std::mt19937& rng, int n) {
  for (;;) {
    Points p;
    for (int i = 0; i <= n; ++i) {
      VectorQ x(n);
      for (int c = 0; c < n; ++c) x(c) = random_rational(rng, 6, 3);
      p.push_back(x);
    }
    if (determinant<Rational>(affine_frame(p)) != 0) return p;
  }
}

inline MatrixQ g_of(std::initializer_list<std::initializer_list<int>> rows) {
  MatrixQ g(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int v : row) g(i, j++) = v;
    ++i;
  }
  return g;
}

/// Simplex with vertices 0, e_1, ..., e_n.
inline RationalMetric unit_right(int n) {
  MatrixQ g(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) g(i, j) = i == j ? 0 : (i == 0 || j == 0) ? 1 : 2;
  return RationalMetric(Simplex::reference(n), g);
}

inline NodeTable random_admissible(std::mt19937& rng, int k, int r) {
  for (;;) {
    NodeTable nodes = NodeTable::bernstein(k, r);
    for (auto& row : nodes.t)
      for (auto& v : row) v = random_rational(rng, 3, 4);
    if (admissible(nodes)) return nodes;
  }
}

/// Oracle: expand every scaled C^alpha into monomials and evaluate the sum.
inline Rational monomial_oracle(const Simplex& u, const std::map<MultiIndex, Rational>& coeffs, const std::vector<Rational>& x,
                                const NodeTable& nodes) {
  Rational s = 0;
  for (const auto& [a, c] : coeffs) {
    BaryForm p = scaled_basis_function(u, nodes, a);
    for (const auto& [key, v] : p.terms()) {
      Rational m = v;
      for (int i = 0; i < key.alpha.size(); ++i)
        for (int e = 0; e < key.alpha[i]; ++e) m *= x[static_cast<std::size_t>(i)];
      s += c * m;
    }
  }
  return s;
}

/// Random element of a spanning family's span.
inline BaryForm random_combination(std::mt19937& rng, const SpanningFamily& fam) {
  BaryForm f(fam.ambient, fam.k);
  for (const auto& g : fam.generators()) f += random_rational(rng) * g;
  return f;
}

inline std::vector<Rational> random_interior_point(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> w(1, 9);
  std::vector<int> ws;
  int total = 0;
  for (int i = 0; i <= n; ++i) total += ws.emplace_back(w(rng));
  std::vector<Rational> p;
  for (int x : ws) p.emplace_back(x, total);
  return p;
}

// Gauss-Legendre nodes and weights on [0, 1].
inline std::vector<std::pair<double, double>> gauss_legendre(int m) {
  std::vector<std::pair<double, double>> out;
  for (int i = 1; i <= m; ++i) {
    double x = std::cos(M_PI * (i - 0.25) / (m + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    out.emplace_back((1 + x) / 2, 1 / ((1 - x * x) * dp * dp));
  }
  return out;
}

/// Integral over the unit right triangle by the Duffy map of a tensor Gauss rule.
template <typename F>
inline double triangle_quadrature(F f, int m = 8) {
  auto gl = gauss_legendre(m);
  double s = 0;
  for (auto [u, wu] : gl)
    for (auto [v, wv] : gl) s += wu * wv * (1 - u) * f(u, v * (1 - u));
  return s;
}


/// Whitney 1-form of edge e (in the order {0,1}, {0,2}, {1,2}) on the unit right
/// triangle with vertices (0,0), (1,0), (0,1), as a vector field.
inline std::array<double, 2> right_triangle_whitney_field(int e, double x, double y) {
  const double lam[3] = {1 - x - y, x, y};
  const double grad[3][2] = {{-1, -1}, {1, 0}, {0, 1}};
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  const int i = pairs[e][0], j = pairs[e][1];
  return {lam[i] * grad[j][0] - lam[j] * grad[i][0], lam[i] * grad[j][1] - lam[j] * grad[i][1]};
}

}  // namespace feec::testing
