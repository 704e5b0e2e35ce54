#include "catch_amalgamated.hpp"

#include "feec/dofs.hpp"
#include "feec/metric.hpp"
#include "support.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace feec;
using namespace feec::testing;

namespace {

RationalMetric unit_right_triangle() { return RationalMetric(Simplex::reference(2), g_of({{0, 1, 1}, {1, 0, 2}, {1, 2, 0}})); }

}  // namespace

TEST_CASE("Cayley-Menger on known simplices") {
  MatrixQ eq = g_of({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(cayley_menger_volume_sq<Rational>(eq) == Rational(3, 16));
  MatrixQ tet = g_of({{0, 1, 1, 1}, {1, 0, 2, 2}, {1, 2, 0, 2}, {1, 2, 2, 0}});
  CHECK(cayley_menger_volume_sq<Rational>(tet) == Rational(1, 36));
  MatrixQ seg(2, 2);
  seg << Rational(0), Rational(7, 3), Rational(7, 3), Rational(0);
  CHECK(cayley_menger_volume_sq<Rational>(seg) == Rational(7, 3));
  CHECK(cayley_menger_volume_sq<Rational>(MatrixQ::Zero(1, 1)) == 1);
  CHECK(std::abs(cayley_menger_volume_sq<double>(to_double<Rational>(eq)) - 3.0 / 16) < 1e-15);
}

TEST_CASE("degenerate metrics are rejected") {
  // collinear: 1 + 1 = 2
  CHECK_THROWS_WITH(RationalMetric(Simplex::reference(2), g_of({{0, 1, 4}, {1, 0, 1}, {4, 1, 0}})),
                    Catch::Matchers::ContainsSubstring("degenerate metric"));
  CHECK_THROWS_WITH(RationalMetric(Simplex::reference(2), g_of({{0, 1, 9}, {1, 0, 1}, {9, 1, 0}})),
                    Catch::Matchers::ContainsSubstring("degenerate metric"));
  CHECK_THROWS_AS(RationalMetric(Simplex::reference(2), g_of({{0, 1, 1}, {2, 0, 1}, {1, 1, 0}})), Error);
  CHECK_THROWS_AS(RationalMetric(Simplex::reference(2), g_of({{0, 1}, {1, 0}})), Error);
}

TEST_CASE("gradient products on the unit right and equilateral triangles") {
  MatrixQ gp = unit_right_triangle().grad_products();
  CHECK(gp(1, 1) == 1);
  CHECK(gp(1, 2) == 0);
  CHECK(gp(0, 0) == 2);
  CHECK(gp(0, 1) == -1);
  CHECK(gp(0, 2) == -1);
  CHECK(gp(2, 2) == 1);

  MatrixQ ge = RationalMetric(Simplex::reference(2), g_of({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})).grad_products();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(ge(i, j) == (i == j ? Rational(4, 3) : Rational(-2, 3)));
}

TEST_CASE("metric agrees with the coordinate oracle on random simplices") {
  std::mt19937 rng(2024);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      Points p = random_points(rng, n);
      MatrixQ frame = affine_frame(p);
      RationalMetric metric(Simplex::reference(n), squared_lengths(p));
      // volume
      Rational vol = determinant<Rational>(frame) / Rational(factorial(n));
      CHECK(metric.volume_sq() == vol * vol);
      // gradients are the rows of the inverse frame
      MatrixQ grads = inverse<Rational>(frame).leftCols(n);
      MatrixQ oracle = grads * grads.transpose();
      MatrixQ gp = metric.grad_products();
      CHECK(gp == oracle);
      CHECK(gp == gp.transpose());
      for (Eigen::Index i = 0; i <= n; ++i) CHECK(gp.row(i).sum() == 0);
      Matrix<double> gpd = EdgeMetric<double>(Simplex::reference(n), to_double<Rational>(squared_lengths(p))).grad_products();
      CHECK((gpd - to_double<Rational>(oracle)).cwiseAbs().maxCoeff() < 1e-12);
      // distances between barycentric points
      auto a = testing::random_interior_point(rng, n), b = testing::random_interior_point(rng, n);
      VectorQ xa = VectorQ::Zero(n), xb = VectorQ::Zero(n);
      for (int i = 0; i <= n; ++i) {
        xa += a[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
        xb += b[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
      }
      CHECK(metric.squared_distance(a, b) == (xa - xb).squaredNorm());
    }
}

TEST_CASE("scalar mass entries") {
  auto metric = RationalMetric(Simplex::reference(2), g_of({{0, 3, 5}, {3, 0, 4}, {5, 4, 0}}));
  Simplex tri = metric.simplex();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(mass_entry(BaryForm::lambda(tri, i), BaryForm::lambda(tri, j), metric) == (i == j ? Rational(1, 6) : Rational(1, 12)));
  CHECK_THROWS_AS(mass_entry(BaryForm::lambda(tri, 0), BaryForm::dlambda(tri, 0), metric), Error);
  CHECK_THROWS_AS(mass_entry(BaryForm::lambda(Simplex::reference(1), 0), BaryForm::lambda(Simplex::reference(1), 0), metric), Error);
}

TEST_CASE("Whitney mass matrix against quadrature") {
  auto metric = unit_right_triangle();
  Simplex tri = metric.simplex();
  std::vector<BaryForm> basis;
  for (const auto& e : faces(tri, 1)) basis.push_back(whitney(tri, e));
  Matrix<double> m = mass_matrix_double(basis, metric);

  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double q = testing::triangle_quadrature([&](double x, double y) {
        auto u = testing::right_triangle_whitney_field(a, x, y), v = testing::right_triangle_whitney_field(b, x, y);
        return u[0] * v[0] + u[1] * v[1];
      });
      CHECK(std::abs(m(a, b) - q) < 1e-12);
    }

  Eigen::SelfAdjointEigenSolver<Matrix<double>> eig(m);
  CHECK(eig.eigenvalues().minCoeff() > 1e-10);
}

TEST_CASE("mass matrices are positive definite") {
  std::mt19937 rng(8);
  for (int n = 1; n <= 3; ++n) {
    Points p = random_points(rng, n);
    RationalMetric metric(Simplex::reference(n), squared_lengths(p));
    for (int r = 1; r <= 2; ++r)
      for (int k = 0; k <= n; ++k) {
        auto basis = trimmed_basis(metric.simplex(), r, k);
        MatrixQ m = mass_matrix(basis, metric);
        CHECK(m == m.transpose());
        Eigen::SelfAdjointEigenSolver<Matrix<double>> eig(to_double<Rational>(m));
        CHECK(eig.eigenvalues().minCoeff() > 1e-10);
      }
    for (int trial = 0; trial < 10; ++trial) {
      int k = trial % (n + 1);
      BaryForm u = testing::random_form(rng, metric.simplex(), k, 2);
      Rational uu = mass_entry(u, u, metric);
      if (canonicalize(u).is_zero()) CHECK(uu == 0);
      else CHECK(uu > 0);
    }
  }
}

TEST_CASE("mass matrix scaling law") {
  std::mt19937 rng(99);
  for (int n = 1; n <= 3; ++n) {
    Points p = random_points(rng, n);
    MatrixQ g = squared_lengths(p);
    const double s = 1.7;
    for (int k = 0; k <= n; ++k) {
      auto basis = trimmed_basis(Simplex::reference(n), 1, k);
      Matrix<double> m1 = mass_matrix_double(basis, RationalMetric(Simplex::reference(n), g));
      Matrix<double> m2 = mass_matrix_double(basis, RationalMetric(Simplex::reference(n), MatrixQ(g * Rational(289, 100))));
      CHECK((m2 - std::pow(s, n - 2 * k) * m1).cwiseAbs().maxCoeff() < 1e-10 * (1 + m1.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("restriction and square roots") {
  auto metric = RationalMetric(Simplex::reference(3), g_of({{0, 1, 1, 1}, {1, 0, 2, 2}, {1, 2, 0, 2}, {1, 2, 2, 0}}));
  auto face = metric.restrict_to(Simplex({1, 2, 3}));
  CHECK(face.volume_sq() == Rational(3, 4));
  CHECK(metric.restrict_to(Simplex({0, 2})).volume_sq() == 1);
  CHECK_THROWS_AS(metric.restrict_to(Simplex({0, 5})), Error);
  CHECK(exact_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK(!exact_sqrt(Rational(2)));
  CHECK(format_scaled_sqrt(Rational(1, 3), Rational(4)) == "2/3");
  CHECK(format_scaled_sqrt(Rational(1, 3), Rational(3, 4)) == "1/3*sqrt(3/4)");
  CHECK(format_scaled_sqrt(Rational(0), Rational(2)) == "0");
}
