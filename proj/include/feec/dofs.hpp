#pragma once

#include "feec/complex.hpp"
#include "feec/forms.hpp"
#include "feec/metric.hpp"
#include "feec/whitney.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace feec {

/// A degree of freedom: a linear functional on forms over U attached to a face.
struct Functional {
  Simplex face;
  std::string label;
  std::function<Rational(const BaryForm&)> apply;
};

struct DofSystem {
  std::string kind;
  Simplex ambient;
  int r = 0, k = 0;
  std::vector<Functional> functionals;
};

/// Functionals applied to trial forms: entry (i, j) = functional i of form j.
struct DofMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  MatrixQ values;
};

DofMatrix dof_matrix(const DofSystem& dofs, const std::vector<BaryForm>& trial,
                     std::vector<std::string> col_labels = {});
std::string to_csv(const DofMatrix& m);

std::string label(const FamilyIndex& idx);

/// Test forms on T: the monomial basis of P_{r - dim T + k - 1} Lambda^{dim T - k}(T).
std::vector<BaryForm> canonical_test_forms(const Simplex& t, int r, int k);
/// u -> integral over T of v ^ u|_T for each face T of U and each test form v.
DofSystem canonical_dof_system(const Simplex& u, int r, int k);
/// Canonical dofs applied to the P-_r Lambda^k spanning family of U.
DofMatrix canonical_dofs(const Simplex& u, int r, int k);

struct FaceBlockCheck {
  Simplex face;
  Eigen::Index rows = 0, cols = 0, rank = 0;
  bool ok() const { return rows == cols && rank == rows; }
};

struct UnisolvenceReport {
  std::vector<FaceBlockCheck> blocks;
  Eigen::Index total = 0;     // number of dofs
  Eigen::Index expected = 0;  // dim P-_r Lambda^k(U)
  Eigen::Index rank = 0;      // rank of the full dof matrix on a basis
  bool ok() const;
};

/// Checks that each face pairing of P-_r Lambda^k_0(T) with its test space is
/// square and invertible, and that the full system is unisolvent.
UnisolvenceReport check_canonical_unisolvence(const Simplex& u, int r, int k);

/// D(x): entries n choose k * s(T) mu_T lambda_T ^ dlambda_{S_hat} divided by lambda_U at x.
MatrixQ d_matrix(const Simplex& u, int k, const std::vector<Rational>& x);
bool is_weakly_diagonally_dominant(const MatrixQ& m);
/// Exact test by symmetric elimination; m must be symmetric.
bool is_positive_semidefinite(const MatrixQ& m);

struct SmallSimplex {
  Simplex parent;   // k-face of U it is homothetic to (orientation inherited)
  MultiIndex offset;  // alpha' in Sigma_{r-1}[n]
  int r = 1;
  /// Columns are the barycentric coordinates of the vertices, in parent order.
  MatrixQ vertex_matrix() const;
  std::vector<std::vector<Rational>> vertices() const;
  std::string label() const;
};

/// Points alpha / r, alpha in Sigma_r[n], in multi-index order.
std::vector<std::vector<Rational>> principal_lattice(const Simplex& u, int r);
std::vector<SmallSimplex> small_simplices(const Simplex& u, int r, int k);

/// Integral of a form on U over a small simplex, by affine pullback.
Rational integrate_over(const BaryForm& form, const SmallSimplex& s);
/// Integral of a form on U over the simplex with the given vertices (columns,
/// barycentric) and orientation.
Rational integrate_over(const BaryForm& form, const MatrixQ& vertices, int orientation = 1);

/// Small dofs against the P-_r Lambda^k spanning family, computed with the
/// vertex-evaluation determinant and the monomial integration formula.
DofMatrix small_dof_matrix(const Simplex& u, int r, int k);
DofSystem small_dof_system(const Simplex& u, int r, int k);

struct VolumetricCheck {
  Rational integral;  // integral of lambda_T over T'
  Rational ratio_sq;  // (vol((U \ T) u T') / vol(U))^2 by Cayley-Menger
  bool consistent() const { return integral * integral == ratio_sq; }
};

/// Compares |integral of lambda_T over T'| with the volume ratio of the simplex
/// obtained by replacing T with T' in U. T' is given by its vertex columns.
VolumetricCheck volumetric_check(const Simplex& u, const Simplex& t, const MatrixQ& tprime, const RationalMetric& metric);

/// Harmonic dofs: L2 pairings against dE^{k-1}_0(T) and d(.) against dE^k_0(T),
/// plus the integral when k = dim T. Values are divided by vol(T).
DofSystem harmonic_dof_system(const Simplex& u, int r, int k, const RationalMetric& metric);

/// Interpolation onto the span of a trial basis by a unisolvent dof system.
class Interpolator {
 public:
  Interpolator(DofSystem dofs, std::vector<BaryForm> trial);
  VectorQ dof_values(const BaryForm& u) const;
  VectorQ coefficients(const BaryForm& u) const;
  BaryForm operator()(const BaryForm& u) const;
  const std::vector<BaryForm>& trial() const { return trial_; }
  const DofSystem& dofs() const { return dofs_; }

 private:
  DofSystem dofs_;
  std::vector<BaryForm> trial_;
  MatrixQ inverse_;
};

BaryForm interpolate(const BaryForm& u, const DofSystem& dofs, const std::vector<BaryForm>& trial);

/// Basis of P-_r Lambda^k(U) selected from its spanning family.
std::vector<BaryForm> trimmed_basis(const Simplex& u, int r, int k);

/// Chooses D_k inside B_k with B_k = A_k + D_k and d* D_k in D_{k-1}. Elements
/// of B_k are row vectors; metric[k] is the Gram matrix of the scalar product
/// on B_k, annihilator[k] has rows spanning A_k and dstar[k] acts on rows,
/// B_k -> B_{k-1} (dstar[0] has zero columns). Returns D_k as rows, or
/// nothing when the annihilator rows are not exact and no such D exists.
std::optional<std::vector<MatrixQ>> complement_subcomplex(const std::vector<MatrixQ>& metric,
                                           const std::vector<MatrixQ>& annihilator,
                                           const std::vector<MatrixQ>& dstar);

struct FaceSelection {
  Simplex face;
  int k = 0;
  /// Rows: selected functionals on the basis `trial[face, k]`.
  MatrixQ functionals;
  /// Rows: the same functionals as combinations of the small simplices of the face.
  MatrixQ representation;
  std::vector<SmallSimplex> small;  // on the face (k >= 1)
  std::vector<std::vector<Rational>> points;  // lattice of the face (k = 0)
};

struct UnisolventSubset {
  Simplex ambient;
  int r = 0;
  bool unchanged = false;  // input was already unisolvent
  std::vector<FaceSelection> selections;
  /// The small-simplex boundary of every selected combination on a face lies
  /// in the span of the combinations selected on its faces one degree lower,
  /// so the interpolator commutes with d on arbitrary inputs.
  bool commuting = false;
  /// Dof system of degree k on U built from the selected functionals.
  DofSystem system(int k) const;
};

/// Unisolvent subset of the small dofs of all degrees on U. Per face the
/// selection is the complement of complement_subcomplex when it exists, else
/// the orthogonal complement of the annihilator of the interior space, for the
/// scalar product making the small dofs orthonormal.
UnisolventSubset unisolvent_subset(const Simplex& u, int r);

}  // namespace feec
