#include "feec/cli.hpp"
#include "feec/dofs.hpp"
#include "feec/resolve.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace feec;

namespace {

Mesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open mesh file " + path);
  return parse_mesh(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite element exterior calculus on simplices"};
  app.require_subcommand(1);

  int n = 2, r = 1, k = 0, rmax = 4;
  std::string suite = "all", mesh_path, family = "canonical", nodes_text, target = "pminus";
  bool exact = false;

  auto* dims = app.add_subcommand("dims", "dimension table of the resolution of P-_r Lambda^k");
  dims->add_option("--n", n, "simplex dimension")->required();
  dims->add_option("--rmax", rmax, "largest polynomial degree")->required();

  auto* ver = app.add_subcommand("verify", "run invariant suites on the reference simplex");
  ver->add_option("--n", n, "simplex dimension")->required();
  ver->add_option("--r", r, "polynomial degree")->required();
  ver->add_option("--suite", suite, "resolutions, dofs, positivity or all");

  auto* mass = app.add_subcommand("mass", "global mass matrix of P-_r Lambda^k on a mesh");
  mass->add_option("--mesh", mesh_path, "mesh file")->required();
  mass->add_option("--r", r, "polynomial degree")->required();
  mass->add_option("--k", k, "form degree")->required();
  mass->add_flag("--exact", exact, "print p/q and sqrt(m/n) factors");

  auto* res = app.add_subcommand("resolution", "resolution maps and their rank report as JSON");
  res->add_option("--n", n, "simplex dimension")->required();
  res->add_option("--r", r, "polynomial degree")->required();
  res->add_option("--k", k, "form degree")->required();
  res->add_option("--target", target, "pminus, pminus0 or differential");

  auto* dofs = app.add_subcommand("dofs", "dof matrix against the trimmed basis as CSV");
  dofs->add_option("--n", n, "simplex dimension")->required();
  dofs->add_option("--r", r, "polynomial degree")->required();
  dofs->add_option("--k", k, "form degree")->required();
  dofs->add_option("--family", family, "canonical or small");

  auto* small = app.add_subcommand("small", "small simplices of the principal lattice");
  small->add_option("--n", n, "simplex dimension")->required();
  small->add_option("--r", r, "lattice order")->required();
  small->add_option("--k", k, "face dimension")->required();

  auto* basis = app.add_subcommand("basis", "basis functions of a node table");
  basis->add_option("--nodes", nodes_text, "rows t_i separated by spaces or semicolons, entries by commas")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto check_small = [&](int nmax, int rcap) {
      if (n < 1 || n > nmax) throw UsageError("--n must be between 1 and " + std::to_string(nmax));
      if (r < 1 || r > rcap) throw UsageError("--r must be between 1 and " + std::to_string(rcap));
      if (k < 0 || k > n) throw UsageError("--k must be between 0 and n");
    };
    if (*dims) {
      std::cout << dims_table(n, rmax);
    } else if (*ver) {
      bool ok = true;
      for (const auto& line : run_verify(n, r, suite)) {
        std::cout << (line.pass ? "PASS " : "FAIL ") << line.text << "\n";
        ok = ok && line.pass;
      }
      return ok ? 0 : 1;
    } else if (*mass) {
      if (r < 1 || k < 0) throw UsageError("need --r >= 1 and --k >= 0");
      Mesh m = read_mesh(mesh_path);
      std::cout << mass_csv(assemble_mass(m, r, k), r, k, exact);
    } else if (*res) {
      check_small(4, 6);
      Resolution rs;
      if (target == "pminus") rs = resolve_pminus(n, r, k);
      else if (target == "pminus0") rs = resolve_pminus0(n, r, k);
      else if (target == "differential") rs = resolve_differential(n, r - 1, k);
      else throw UsageError("--target must be pminus, pminus0 or differential");
      std::cout << to_json(rs, verify(rs)) << "\n";
    } else if (*dofs) {
      check_small(3, 4);
      Simplex u = Simplex::reference(n);
      if (family == "canonical") std::cout << to_csv(canonical_dofs(u, r, k));
      else if (family == "small") std::cout << to_csv(small_dof_matrix(u, r, k));
      else throw UsageError("--family must be canonical or small");
    } else if (*small) {
      std::cout << small_simplices_listing(n, r, k);
    } else if (*basis) {
      std::cout << basis_listing(NodeTable::parse(nodes_text));
    }
  } catch (const MissingLength& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateCell& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
