#include "feec/cli.hpp"

#include "feec/dofs.hpp"
#include "feec/linalg.hpp"
#include "feec/resolve.hpp"

#include <iomanip>
#include <random>
#include <sstream>

namespace feec {

namespace {

std::string case_name(int n, int r, int k) {
  return "n=" + std::to_string(n) + " r=" + std::to_string(r) + " k=" + std::to_string(k);
}

void add(std::vector<CheckLine>& out, bool pass, const std::string& text) { out.push_back({pass, text}); }

void verify_resolutions(std::vector<CheckLine>& out, int n, int r) {
  for (int k = 0; k <= n; ++k) {
    auto rep = verify(resolve_pminus(n, r, k));
    add(out, rep.ok(), "resolution P-_rL^k " + case_name(n, r, k) + ": " + rep.summary());
    if (r - n + k - 1 >= 0) {
      auto rep0 = verify(resolve_pminus0(n, r, k));
      add(out, rep0.ok(), "resolution P-_rL^k_0 " + case_name(n, r, k) + ": " + rep0.summary());
    }
    if (k < n) {
      auto repd = verify(resolve_differential(n, r - 1, k));
      add(out, repd.ok(), "resolution P_{r-1}L^{k+1} " + case_name(n, r, k) + ": " + repd.summary());
    }
  }
}

void verify_dofs(std::vector<CheckLine>& out, int n, int r) {
  Simplex u = Simplex::reference(n);
  for (int k = 0; k <= n; ++k) {
    auto rep = check_canonical_unisolvence(u, r, k);
    std::ostringstream os;
    os << "canonical dofs unisolvent " << case_name(n, r, k) << ": " << rep.total << " dofs, rank " << rep.rank
       << ", dim " << rep.expected;
    for (const auto& b : rep.blocks)
      if (!b.ok()) os << "; block " << b.face.str() << " is " << b.rows << "x" << b.cols << " of rank " << b.rank;
    add(out, rep.ok(), os.str());

    MatrixQ small = dof_matrix(small_dof_system(u, r, k), trimmed_basis(u, r, k)).values;
    const Eigen::Index rk = rank<Rational>(small);
    std::ostringstream os2;
    os2 << "small dofs overdetermine " << case_name(n, r, k) << ": " << small.rows() << " rows, rank " << rk << ", dim "
        << dim_Pminus(n, r, k);
    add(out, rk == dim_Pminus(n, r, k), os2.str());
  }
}

void verify_positivity(std::vector<CheckLine>& out, int n) {
  Simplex u = Simplex::reference(n);
  std::mt19937 rng(20240601u + static_cast<unsigned>(n));
  std::uniform_int_distribution<int> w(1, 9);
  for (int k = 0; k <= n; ++k) {
    int symmetric = 0, psd = 0, dominant = 0;
    std::string witness;
    const int points = 25;
    for (int p = 0; p < points; ++p) {
      std::vector<int> ws;
      int total = 0;
      for (int i = 0; i <= n; ++i) total += ws.emplace_back(w(rng));
      std::vector<Rational> x;
      for (int v : ws) x.emplace_back(v, total);
      MatrixQ d = d_matrix(u, k, x);
      const bool sym = d == d.transpose();
      symmetric += sym;
      const bool semidef = sym && is_positive_semidefinite(d);
      psd += semidef;
      dominant += is_weakly_diagonally_dominant(d);
      if (!semidef && witness.empty()) {
        std::ostringstream os;
        os << " (first failure at x = (";
        for (std::size_t i = 0; i < x.size(); ++i) os << (i ? " " : "") << x[i];
        os << "))";
        witness = os.str();
      }
    }
    std::ostringstream os;
    os << "D(x) symmetric positive semidefinite " << "n=" << n << " k=" << k << ": " << psd << "/" << points
       << " points; symmetric " << symmetric << "/" << points << ", row dominant " << dominant << "/" << points << witness;
    add(out, psd == points && symmetric == points, os.str());
  }
}

}  // namespace

std::string dims_table(int n, int rmax) {
  if (n < 1 || n > 4) throw UsageError("--n must be between 1 and 4");
  if (rmax < 1 || rmax > 6) throw UsageError("--rmax must be between 1 and 6");
  std::ostringstream os;
  os << "r\tk\tdim P_{r-1}xC^k\tdim P-_{r-1}L^{k+1}\tdim P-_rL^k\n";
  for (int r = 1; r <= rmax; ++r)
    for (int k = 0; k <= n; ++k) {
      const std::int64_t tensor = dim_P(n, r - 1, 0) * binomial64(n + 1, k + 1);
      const std::int64_t relations = r >= 2 && k < n ? dim_Pminus(n, r - 1, k + 1) : 0;
      os << r << "\t" << k << "\t" << tensor << "\t" << relations << "\t" << dim_Pminus(n, r, k) << "\n";
    }
  return os.str();
}

std::vector<CheckLine> run_verify(int n, int r, const std::string& suite) {
  if (n < 1 || n > 3) throw UsageError("--n must be between 1 and 3");
  if (r < 1 || r > 4) throw UsageError("--r must be between 1 and 4");
  if (suite != "resolutions" && suite != "dofs" && suite != "positivity" && suite != "all")
    throw UsageError("--suite must be resolutions, dofs, positivity or all");
  std::vector<CheckLine> out;
  if (suite == "resolutions" || suite == "all") verify_resolutions(out, n, r);
  if (suite == "dofs" || suite == "all") verify_dofs(out, n, r);
  if (suite == "positivity" || suite == "all") verify_positivity(out, n);
  return out;
}

std::string mass_csv(const GlobalMass& mass, int r, int k, bool exact) {
  std::ostringstream os;
  os << "# mass matrix of P-_" << r << "L^" << k << ": rows and columns follow the basis functions of each face, faces by"
     << " dimension then vertex ids, pivot order inside a face; faces:";
  for (const auto& f : mass.basis_faces) os << " " << f.str();
  os << "\n";
  Matrix<double> m;
  if (!exact) m = mass.to_double();
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < mass.size(); ++i) {
    for (Eigen::Index j = 0; j < mass.size(); ++j) {
      if (j) os << ",";
      if (exact) os << mass.exact_entry(i, j);
      else os << m(i, j);
    }
    os << "\n";
  }
  return os.str();
}

std::string small_simplices_listing(int n, int r, int k) {
  if (n < 1 || n > 4 || r < 1 || r > 6 || k < 0 || k > n) throw UsageError("need 1 <= n <= 4, 1 <= r <= 6, 0 <= k <= n");
  std::ostringstream os;
  for (const auto& s : small_simplices(Simplex::reference(n), r, k)) {
    os << s.label();
    for (const auto& p : s.vertices()) {
      os << "\t";
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
    }
    os << "\n";
  }
  return os.str();
}

std::string basis_listing(const NodeTable& nodes) {
  Simplex u = Simplex::reference(nodes.k());
  auto family = basis_family(u, nodes);
  auto alphas = multi_indices(u.size(), nodes.r());
  std::ostringstream os;
  for (std::size_t i = 0; i < family.size(); ++i) {
    os << "C(";
    for (int c = 0; c < alphas[i].size(); ++c) os << (c ? " " : "") << alphas[i][c];
    std::string terms = to_string(family[i]);
    while (!terms.empty() && terms.back() == '\n') terms.pop_back();
    for (std::size_t at = terms.find('\n'); at != std::string::npos; at = terms.find('\n', at)) terms.replace(at, 1, " + ");
    os << ") = " << terms << "\n";
  }
  return os.str();
}

}  // namespace feec
