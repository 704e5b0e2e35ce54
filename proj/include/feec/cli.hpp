#pragma once

#include "feec/bases.hpp"
#include "feec/mesh.hpp"

#include <string>
#include <vector>

namespace feec {

/// Bad command arguments (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Rows r, k, dim P_{r-1} x C^k, dim P-_{r-1} Lambda^{k+1}, dim P-_r Lambda^k
/// for r = 1..rmax, tab separated with a header line.
std::string dims_table(int n, int rmax);

struct CheckLine {
  bool pass = false;
  std::string text;
};

/// suite: resolutions, dofs, positivity or all. Needs n <= 3, r <= 4.
std::vector<CheckLine> run_verify(int n, int r, const std::string& suite);

/// CSV with a leading comment line describing the row and column order.
std::string mass_csv(const GlobalMass& mass, int r, int k, bool exact);

/// Vertex lists (barycentric rationals) of the small k-simplices, one per line.
std::string small_simplices_listing(int n, int r, int k);

/// Expansions of the C^alpha of a node table on the reference k-simplex.
std::string basis_listing(const NodeTable& nodes);

}  // namespace feec
