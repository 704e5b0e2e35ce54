// Acceptance suite: one PASS/FAIL line per criterion. Exit status 1 if any line fails.

#include "feec/bases.hpp"
#include "feec/cli.hpp"
#include "feec/dofs.hpp"
#include "feec/linalg.hpp"
#include "feec/metric.hpp"
#include "feec/resolve.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace feec;
using namespace feec::testing;

namespace {

constexpr double kOracleTol = 1e-12;
constexpr double kDimsSeconds = 1.0;
constexpr double kResolutionSeconds = 60.0;
constexpr int kPositivityPoints = 25;
constexpr int kCommutingForms = 50;
constexpr int kMetricSimplices = 10;
constexpr int kCasteljauCases = 100;
constexpr int kWedgePairs = 50;

struct Tally {
  long checks = 0;
  long failures = 0;
  std::string witness;

  void check(bool ok, const std::function<std::string()>& describe) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) witness = describe();
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool all_passed = true;

void report(const std::string& id, const std::string& title, bool pass, const std::string& detail) {
  all_passed = all_passed && pass;
  std::cout << (pass ? "PASS " : "FAIL ") << id << " " << title << ": " << detail << std::endl;
}

std::string summary(const Tally& t, double secs) {
  std::ostringstream os;
  os << t.checks - t.failures << "/" << t.checks << " checks";
  if (t.failures) os << "; first failure: " << t.witness;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << " [" << secs << " s]";
  return os.str();
}

std::string point_str(const std::vector<Rational>& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? " " : "") << x[i];
  return os.str() + ")";
}

std::string one_line(const BaryForm& f) {
  std::string s = to_string(f);
  while (!s.empty() && s.back() == '\n') s.pop_back();
  for (std::size_t at = s.find('\n'); at != std::string::npos; at = s.find('\n', at)) s.replace(at, 1, " + ");
  return s;
}

std::string nrk(int n, int r, int k) {
  return "n=" + std::to_string(n) + " r=" + std::to_string(r) + " k=" + std::to_string(k);
}

// Rows (r, k) -> (dim P_{r-1} x C^k, dim P-_{r-1} L^{k+1}, dim P-_r L^k), r = 1..4.
const std::vector<std::array<int, 5>> kTable1 = {
    {1, 0, 3, 0, 3},   {1, 1, 3, 0, 3},   {1, 2, 1, 0, 1},   {2, 0, 9, 3, 6},   {2, 1, 9, 1, 8},   {2, 2, 3, 0, 3},
    {3, 0, 18, 8, 10}, {3, 1, 18, 3, 15}, {3, 2, 6, 0, 6},   {4, 0, 30, 15, 15}, {4, 1, 30, 6, 24}, {4, 2, 10, 0, 10},
};
const std::vector<std::array<int, 5>> kTable2 = {
    {1, 0, 4, 0, 4},     {1, 1, 6, 0, 6},      {1, 2, 4, 0, 4},     {1, 3, 1, 0, 1},
    {2, 0, 16, 6, 10},   {2, 1, 24, 4, 20},    {2, 2, 16, 1, 15},   {2, 3, 4, 0, 4},
    {3, 0, 40, 20, 20},  {3, 1, 60, 15, 45},   {3, 2, 40, 4, 36},   {3, 3, 10, 0, 10},
    {4, 0, 80, 45, 35},  {4, 1, 120, 36, 84},  {4, 2, 80, 10, 70},  {4, 3, 20, 0, 20},
};

void criterion_dims() {
  auto start = Clock::now();
  Tally t;
  for (auto [n, table] : {std::pair{2, &kTable1}, std::pair{3, &kTable2}}) {
    std::istringstream in(dims_table(n, 4));
    std::string header;
    std::getline(in, header);
    std::vector<std::array<int, 5>> rows;
    std::array<int, 5> row{};
    while (in >> row[0] >> row[1] >> row[2] >> row[3] >> row[4]) rows.push_back(row);
    t.check(rows.size() == table->size(), [&] { return "n=" + std::to_string(n) + ": " + std::to_string(rows.size()) + " rows"; });
    for (std::size_t i = 0; i < std::min(rows.size(), table->size()); ++i)
      for (int c = 0; c < 5; ++c)
        t.check(rows[i][c] == (*table)[i][c], [&] {
          return "n=" + std::to_string(n) + " row " + std::to_string(i) + " column " + std::to_string(c) + ": " +
                 std::to_string(rows[i][c]) + " vs " + std::to_string((*table)[i][c]);
        });
  }
  const double secs = seconds_since(start);
  report("1", "dimension tables n=2 and n=3, r=1..4", t.failures == 0 && secs < kDimsSeconds, summary(t, secs));
}

void criterion_resolutions() {
  auto start = Clock::now();
  Tally t;
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 4; ++r)
      for (int k = 0; k <= n; ++k) {
        auto one = [&](const Resolution& res, const std::string& name) {
          auto rep = verify(res);
          t.check(rep.ok(), [&] { return name + " " + nrk(n, r, k) + ": " + rep.summary(); });
        };
        one(resolve_pminus(n, r, k), "P-_rL^k");
        if (r - n + k - 1 >= 0) one(resolve_pminus0(n, r, k), "P-_rL^k_0");
        if (k < n) one(resolve_differential(n, r - 1, k), "P_{r-1}L^{k+1}");
      }
  const double secs = seconds_since(start);
  report("2", "resolution exactness, n<=3, r<=4", t.failures == 0 && secs < kResolutionSeconds, summary(t, secs));
}

void criterion_whitney() {
  auto start = Clock::now();
  Tally t;
  Simplex u = Simplex::reference(4);
  auto l = [&](int v) { return BaryForm::lambda(u, u.position(v)); };
  for (const auto& face : all_faces(u)) {
    const int k = face.dim();
    auto lt = whitney(u, face);
    for (const auto& s : faces(u, k)) {
      Rational v = integrate(pullback_to_face(lt, s));
      t.check(v == (s == face ? 1 : 0), [&] { return "integral of lambda_" + face.str() + " over " + s.str() + " is " + v.str(); });
      if (s != face)
        t.check(canonicalize(pullback_to_face(lt, s)).is_zero(), [&] { return "trace of lambda_" + face.str() + " on " + s.str(); });
    }
    if (k >= 1) {
      BaryForm rec(u, k), dep(u, k - 1);
      for (int p = 0; p <= k; ++p) {
        Simplex f = face.drop(p);
        rec += Rational(incidence(face, f)) * wedge(l(face[p]), whitney_differential(u, f));
        dep += Rational(incidence(face, f)) * wedge(l(face[p]), whitney(u, f));
      }
      t.check(equivalent(rec, lt), [&] { return "recursion on " + face.str(); });
      t.check(canonicalize(dep).is_zero(), [&] { return "dependence relation on " + face.str(); });
    }
    if (k < 4) {
      BaryForm rhs(u, k + 1);
      for (int v : u.vertices()) {
        if (face.contains_vertex(v)) continue;
        std::vector<int> vs = face.vertices();
        vs.push_back(v);
        Simplex up = Simplex::from_tuple(vs).with_orientation(1);
        rhs += Rational(incidence(up, face)) * whitney(u, up);
      }
      BaryForm d = exterior_derivative(lt);
      t.check(equivalent(d, rhs), [&] { return "d lambda_" + face.str() + " through cofaces"; });
      t.check(equivalent(d, whitney_differential(u, face)), [&] { return "d lambda_" + face.str() + " as a product of differentials"; });
    }
  }
  report("3", "Whitney identities on all faces of a 4-simplex", t.failures == 0, summary(t, seconds_since(start)));
}

void criterion_positivity() {
  auto start = Clock::now();
  Tally dominant, symmetric, psd;
  std::mt19937 rng(4004);
  for (int n = 1; n <= 3; ++n) {
    Simplex u = Simplex::reference(n);
    for (int k = 0; k <= n; ++k) {
      std::vector<std::vector<Rational>> points{std::vector<Rational>(static_cast<std::size_t>(n + 1), Rational(1, n + 1))};
      while (static_cast<int>(points.size()) < kPositivityPoints) points.push_back(random_interior_point(rng, n));
      for (const auto& x : points) {
        MatrixQ d = d_matrix(u, k, x);
        const bool sym = d == d.transpose();
        symmetric.check(sym, [&] { return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " at " + point_str(x); });
        psd.check(sym && is_positive_semidefinite(d), [&] { return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " at " + point_str(x); });
        dominant.check(is_weakly_diagonally_dominant(d), [&] {
          Eigen::Index worst = 0;
          Rational off_worst = 0;
          for (Eigen::Index i = 0; i < d.rows(); ++i) {
            Rational off = 0;
            for (Eigen::Index j = 0; j < d.cols(); ++j)
              if (j != i) off += abs(d(i, j));
            if (off - abs(d(i, i)) > off_worst - abs(d(worst, worst))) worst = i, off_worst = off;
          }
          std::ostringstream os;
          os << "n=" << n << " k=" << k << " at " << point_str(x) << ", row " << worst << ": diagonal " << d(worst, worst)
             << ", off-diagonal sum " << off_worst;
          return os.str();
        });
      }
    }
  }
  const double secs = seconds_since(start);
  std::ostringstream os;
  os << "weakly dominant " << summary(dominant, secs) << "; symmetric " << symmetric.checks - symmetric.failures << "/"
     << symmetric.checks << ", positive semidefinite " << psd.checks - psd.failures << "/" << psd.checks;
  report("4", "D(x) symmetric and weakly diagonally dominant, n<=3", dominant.failures == 0 && symmetric.failures == 0, os.str());
}

void criterion_unisolvence() {
  auto start = Clock::now();
  Tally t;
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r)
      for (int k = 0; k <= n; ++k) {
        auto rep = check_canonical_unisolvence(Simplex::reference(n), r, k);
        for (const auto& b : rep.blocks)
          t.check(b.ok(), [&] {
            return nrk(n, r, k) + " block " + b.face.str() + " " + std::to_string(b.rows) + "x" + std::to_string(b.cols) +
                   " rank " + std::to_string(b.rank);
          });
        t.check(rep.total == dim_Pminus(n, r, k) && rep.rank == rep.total,
                [&] { return nrk(n, r, k) + ": " + std::to_string(rep.total) + " dofs of rank " + std::to_string(rep.rank); });
      }
  report("5", "canonical dofs unisolvent, n<=3, r<=3", t.failures == 0, summary(t, seconds_since(start)));
}

void criterion_overdetermination() {
  auto start = Clock::now();
  Tally t;
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r)
      for (int k = 0; k <= n; ++k) {
        Simplex u = Simplex::reference(n);
        MatrixQ m = dof_matrix(small_dof_system(u, r, k), trimmed_basis(u, r, k)).values;
        const Eigen::Index rk = rank<Rational>(m);
        t.check(rk == dim_Pminus(n, r, k), [&] { return nrk(n, r, k) + ": rank " + std::to_string(rk); });
      }
  DofMatrix m = small_dof_matrix(Simplex::reference(2), 3, 1);
  const Eigen::Index rk = rank<Rational>(m.values);
  t.check(m.values.rows() == 18 && rk == 15,
          [&] { return "n=2 r=3 k=1: " + std::to_string(m.values.rows()) + " rows of rank " + std::to_string(rk); });
  report("6", "small dofs overdetermine, n<=3, r<=3; 18 rows of rank 15 at n=2 r=3 k=1", t.failures == 0,
         summary(t, seconds_since(start)));
}

void criterion_volumetric() {
  auto start = Clock::now();
  Tally t;
  for (int n = 2; n <= 3; ++n) {
    auto metric = unit_right(n);
    Simplex u = metric.simplex();
    for (int r = 1; r <= 3; ++r)
      for (int k = 0; k <= n; ++k)
        for (const auto& face : faces(u, k))
          for (const auto& s : small_simplices(u, r, k)) {
            auto c = volumetric_check(u, face, s.vertex_matrix(), metric);
            t.check(c.consistent(), [&] {
              return nrk(n, r, k) + " lambda_" + face.str() + " over " + s.label() + ": integral " + c.integral.str() +
                     ", squared ratio " + c.ratio_sq.str();
            });
          }
  }
  report("7", "volumetric interpretation on the unit right triangle and tetrahedron, r<=3", t.failures == 0,
         summary(t, seconds_since(start)));
}

// Interpolates du and u with systems of degree k+1 and k and compares.
void commuting_case(Tally& t, std::mt19937& rng, const Simplex& u, int r, int k, const DofSystem& sys_k,
                    const DofSystem& sys_k1, const std::string& what) {
  Interpolator ik(sys_k, trimmed_basis(u, r, k));
  Interpolator ik1(sys_k1, trimmed_basis(u, r, k + 1));
  for (int trial = 0; trial < kCommutingForms; ++trial) {
    BaryForm f = random_form(rng, u, k, r + 1);
    t.check(equivalent(ik1(exterior_derivative(f)), exterior_derivative(ik(f))),
            [&] { return what + " " + nrk(u.dim(), r, k) + ": u = " + one_line(f); });
  }
}

void criterion_commuting_canonical() {
  auto start = Clock::now();
  Tally t;
  std::mt19937 rng(8008);
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r) {
      Simplex u = Simplex::reference(n);
      for (int k = 0; k < n; ++k)
        commuting_case(t, rng, u, r, k, canonical_dof_system(u, r, k), canonical_dof_system(u, r, k + 1), "canonical");
    }
  report("8a", "I(du) = d(Iu) with canonical dofs, n<=3, r<=3", t.failures == 0, summary(t, seconds_since(start)));
}

void criterion_commuting_small() {
  auto start = Clock::now();
  Tally t;
  std::mt19937 rng(8009);
  std::vector<std::string> failing;
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r) {
      Simplex u = Simplex::reference(n);
      auto subset = unisolvent_subset(u, r);
      for (int k = 0; k < n; ++k) {
        const long before = t.failures;
        commuting_case(t, rng, u, r, k, subset.system(k), subset.system(k + 1), "small subset");
        if (t.failures > before) failing.push_back(nrk(n, r, k) + " (" + std::to_string(t.failures - before) + "/" +
                                                   std::to_string(kCommutingForms) + ")");
      }
    }
  std::string detail = summary(t, seconds_since(start));
  if (!failing.empty()) {
    detail += "; failing cases:";
    for (const auto& f : failing) detail += " " + f;
  }
  report("8b", "I(du) = d(Iu) with the unisolvent subset of small dofs, n<=3, r<=3", t.failures == 0, detail);
}

void criterion_metric() {
  auto start = Clock::now();
  Tally t;
  std::mt19937 rng(9009);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < kMetricSimplices; ++trial) {
      Points p = random_points(rng, n);
      MatrixQ frame = affine_frame(p);
      Matrix<double> g = to_double<Rational>(squared_lengths(p));
      EdgeMetric<double> metric(Simplex::reference(n), g);
      const double vol = std::abs(to_double<Rational>(MatrixQ(frame)).determinant()) / std::tgamma(n + 1.0);
      const double cm = std::sqrt(cayley_menger_volume_sq<double>(g));
      t.check(std::abs(cm - vol) <= kOracleTol * std::max(1.0, vol),
              [&] { return "n=" + std::to_string(n) + " Cayley-Menger volume " + std::to_string(cm) + " vs " + std::to_string(vol); });
      Matrix<double> grads = to_double<Rational>(MatrixQ(frame)).inverse().leftCols(n);
      Matrix<double> oracle = grads * grads.transpose();
      const double err = (metric.grad_products() - oracle).cwiseAbs().maxCoeff();
      t.check(err <= kOracleTol * std::max(1.0, oracle.cwiseAbs().maxCoeff()),
              [&] { return "n=" + std::to_string(n) + " gradient products off by " + std::to_string(err); });
    }

  auto right = unit_right(2);
  std::vector<BaryForm> basis;
  for (const auto& e : faces(right.simplex(), 1)) basis.push_back(whitney(right.simplex(), e));
  Matrix<double> m = mass_matrix_double(basis, right);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double q = triangle_quadrature([&](double x, double y) {
        auto ua = right_triangle_whitney_field(a, x, y), ub = right_triangle_whitney_field(b, x, y);
        return ua[0] * ub[0] + ua[1] * ub[1];
      });
      t.check(std::abs(m(a, b) - q) <= kOracleTol,
              [&] { return "Whitney mass (" + std::to_string(a) + "," + std::to_string(b) + ") " + std::to_string(m(a, b)); });
    }
  report("9", "metric against coordinate and quadrature oracles, tol 1e-12", t.failures == 0, summary(t, seconds_since(start)));
}

void criterion_bases() {
  auto start = Clock::now();
  Tally t;
  std::mt19937 rng(10010);
  for (int trial = 0; trial < kCasteljauCases; ++trial) {
    const int k = 1 + trial % 3, r = 1 + (trial / 3) % 4;
    Simplex u = Simplex::reference(k);
    NodeTable nodes = random_admissible(rng, k, r);
    std::map<MultiIndex, Rational> c;
    for (const auto& a : multi_indices(k + 1, r)) c[a] = random_rational(rng);
    auto x = random_interior_point(rng, k);
    const Rational fast = de_casteljau_eval(c, x, nodes), slow = monomial_oracle(u, c, x, nodes);
    t.check(fast == slow, [&] { return "nodes " + nodes.str() + " at " + point_str(x) + ": " + fast.str() + " vs " + slow.str(); });
  }
  for (int k = 1; k <= 3; ++k)
    for (int r = 1; r <= 4; ++r) {
      Simplex u = Simplex::reference(k);
      auto alphas = multi_indices(k + 1, r);
      // Bernstein nodes reproduce the monomials lambda^alpha
      auto bern = basis_family(u, NodeTable::bernstein(k, r));
      for (std::size_t i = 0; i < alphas.size(); ++i)
        t.check(bern[i] == BaryForm::monomial(u, alphas[i]), [&] { return "Bernstein k=" + std::to_string(k) + " r=" + std::to_string(r); });
      // Lagrange nodes: C^alpha vanishes at every other lattice point
      auto lag = basis_family(u, NodeTable::lagrange(k, r));
      for (std::size_t i = 0; i < alphas.size(); ++i)
        for (const auto& b : alphas) {
          std::vector<Rational> x;
          for (int j = 0; j < b.size(); ++j) x.emplace_back(b[j], r);
          const Rational v = evaluate_scalar(lag[i], x);
          t.check((b == alphas[i]) == (v != 0), [&] { return "Lagrange k=" + std::to_string(k) + " r=" + std::to_string(r) + " at " + point_str(x); });
        }
    }
  for (const char* text : {"0,1;0,1", "0,1/2;1,1/2", "1/3,0;2/3,0", "0,1/3,2/3;0,1/3,2/3;1,0,0"}) {
    NodeTable bad = NodeTable::parse(text);
    auto w = admissibility_witness(bad);
    bool rejected = false;
    try {
      basis_family(Simplex::reference(bad.k()), bad);
    } catch (const Error&) {
      rejected = true;
    }
    t.check(w && rejected, [&] { return std::string("table ") + text + " accepted"; });
  }
  report("10", "de Casteljau, Bernstein and Lagrange nodes, admissibility", t.failures == 0, summary(t, seconds_since(start)));
}

void criterion_wedge() {
  auto start = Clock::now();
  Tally t;
  std::mt19937 rng(11011);
  Simplex tet = Simplex::reference(3);
  std::vector<std::array<int, 4>> cases;  // r, k, q, l
  for (int r = 1; r <= 3; ++r)
    for (int q = 1; r + q <= 4; ++q)
      for (int k = 0; k <= 3; ++k)
        for (int l = 0; k + l <= 3; ++l) cases.push_back({r, k, q, l});
  for (int trial = 0; trial < kWedgePairs; ++trial) {
    auto [r, k, q, l] = cases[static_cast<std::size_t>(trial) % cases.size()];
    BaryForm a = random_combination(rng, spanning_family(tet, r, k, Space::PminusLk));
    BaryForm b = random_combination(rng, spanning_family(tet, q, l, Space::PminusLk));
    t.check(is_trimmed(wedge(a, b), r + q, k + l, 0), [&] {
      return "r=" + std::to_string(r) + " k=" + std::to_string(k) + " q=" + std::to_string(q) + " l=" + std::to_string(l);
    });
  }
  report("11", "wedge of trimmed forms on a tetrahedron is trimmed, r+q<=4", t.failures == 0, summary(t, seconds_since(start)));
}

}  // namespace

int main() {
  criterion_dims();
  criterion_resolutions();
  criterion_whitney();
  criterion_positivity();
  criterion_unisolvence();
  criterion_overdetermination();
  criterion_volumetric();
  criterion_commuting_canonical();
  criterion_commuting_small();
  criterion_metric();
  criterion_bases();
  criterion_wedge();
  return all_passed ? 0 : 1;
}
