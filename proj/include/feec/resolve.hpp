#pragma once

#include "feec/complex.hpp"
#include "feec/forms.hpp"
#include "feec/whitney.hpp"

#include <optional>
#include <string>
#include <vector>

namespace feec {

/// Exact matrix between spaces indexed by (multi-index, simplex) pairs. Raw
/// form coordinates are encoded with `face` holding the dlambda positions.
struct LinearMapOnFamilies {
  std::string name;
  std::vector<FamilyIndex> domain;
  std::vector<FamilyIndex> codomain;
  MatrixQ matrix;
};

/// Index set of P_q (homogeneous monomials lambda^alpha, |alpha| = q) tensor
/// C^k(U): alpha outer, k-faces inner. k = -1 stands for the augmentation R.
std::vector<FamilyIndex> tensor_index(const Simplex& u, int q, int k);
std::vector<FamilyIndex> coordinate_index(const FormCoordinates& coords);

/// delta on P_q x C^k -> P_q x C^{k+1} (k = -1 is the augmentation).
LinearMapOnFamilies delta_tensor(const Simplex& u, int q, int k);
/// delta' on P_q x C^k -> P_q x C^{k-1}.
LinearMapOnFamilies boundary_tensor(const Simplex& u, int q, int k);
/// u x T -> u dlambda_T into the coordinates of P_q Lambda^{k+1}.
LinearMapOnFamilies sigma_map(const Simplex& u, int q, int k);
/// u x T -> u mu_T lambda_T from P_q x C^k, q = r - n + k - 1, into P_r Lambda^k coordinates.
LinearMapOnFamilies sigma0_map(const Simplex& u, int r, int k);
/// u x T -> sum_{i in T} o(T, T\i) lambda_i u x T\i, from P_{r-1} x C^k to P_r x C^{k-1}.
LinearMapOnFamilies tau_map(const Simplex& u, int r, int k);
/// u x T -> u lambda_T from P_{r-1} x C^k into P_r Lambda^k coordinates.
LinearMapOnFamilies beta_map(const Simplex& u, int r, int k);

/// maps[0] sends W_0 onto the target coordinates, maps[i] sends W_i to W_{i-1}.
struct Resolution {
  std::string target;
  int n = 0, r = 0, k = 0;
  std::int64_t target_dim = 0;
  std::vector<LinearMapOnFamilies> maps;
};

/// Resolution of P-_r Lambda^k by beta and tau.
Resolution resolve_pminus(int n, int r, int k);
/// Resolution of P-_r Lambda^k_0 by sigma' and delta'.
Resolution resolve_pminus0(int n, int r, int k);
/// Resolution of P_q Lambda^{k+1} by sigma and delta, augmented by P_q x R.
Resolution resolve_differential(int n, int q, int k);

struct StageReport {
  std::string map;
  Eigen::Index rows = 0, cols = 0, rank = 0;
  bool composes_to_zero = true;  // with the next map to the left
  bool exact = true;             // rank(f_{i+1}) + rank(f_i) = dim W_i
};

struct ResolutionReport {
  std::vector<StageReport> stages;
  bool onto = true;       // rank of the first map equals the target dimension
  bool injective = true;  // leftmost map has trivial kernel
  bool ok() const;
  std::string summary() const;
};

ResolutionReport verify(const Resolution& res);
/// JSON manifest with stage dimensions, ranks and check outcomes.
std::string to_json(const Resolution& res, const ResolutionReport& report);

struct Redundancy {
  MatrixQ b;  // columns: basis of ker(eps)
  MatrixQ c;  // C = B^T, so that CB is invertible
  std::vector<Eigen::Index> selection;  // columns of eps forming a basis of the image
};

/// Kernel basis, complement and basis selection for a spanning matrix. When
/// expected_dim is given the image must have that dimension; otherwise eps must
/// have full row rank.
Redundancy eliminate_redundancy(const MatrixQ& eps, std::optional<Eigen::Index> expected_dim = std::nullopt);
Redundancy eliminate_redundancy(const SpanningFamily& family);

/// Generators of the family selected by eliminate_redundancy: a basis.
std::vector<BaryForm> select_basis(const SpanningFamily& family);
/// Basis of P-_r Lambda^k_0(V) as forms on V (empty when the space is 0).
std::vector<BaryForm> interior_basis(const Simplex& v, int r, int k);

struct FaceBlock {
  Simplex face;
  Eigen::Index offset = 0;
  Eigen::Index size = 0;
};

/// Global basis of P-_r Lambda^k over a complex assembled from the interior
/// bases of all faces, together with the canonical dof matrix (rows: dofs of
/// each face, columns: basis functions). The matrix is square and block
/// lower triangular with invertible diagonal blocks.
struct GeometricDecomposition {
  int r = 0, k = 0;
  std::vector<FaceBlock> blocks;
  std::vector<BaryForm> basis;            // each on its own face
  std::vector<std::size_t> basis_block;   // block of each basis function
  MatrixQ matrix;
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(basis.size()); }
};

GeometricDecomposition geometric_decomposition(const SimplicialComplex& cx, int r, int k);

/// Entries as p/q, comma separated, one row per line.
std::string matrix_to_csv(const MatrixQ& m);

}  // namespace feec
