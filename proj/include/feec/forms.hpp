#pragma once

#include "feec/complex.hpp"
#include "feec/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace feec {

constexpr int kMaxVertices = 16;

/// Exponent tuple indexed by the vertex positions of an ambient simplex.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int length);
  MultiIndex(std::initializer_list<int> values);
  explicit MultiIndex(const std::vector<int>& values);
  static MultiIndex unit(int length, int i);

  int size() const { return n_; }
  int operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }
  void set(int i, int value);
  int weight() const;
  std::vector<int> to_vector() const;

  MultiIndex operator+(const MultiIndex& o) const;
  /// Entrywise difference; throws if an entry would become negative.
  MultiIndex operator-(const MultiIndex& o) const;
  /// alpha! = prod alpha_i!
  Integer factorial() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxVertices> a_{};
};

/// Sigma_w[length-1]: all multi-indices of the given length and weight, ordered
/// so that earlier entries are largest first, e.g. (1,0,0), (0,1,0), (0,0,1).
std::vector<MultiIndex> multi_indices(int length, int weight);
/// All multi-indices of weight 0..max_weight, grouped by weight.
std::vector<MultiIndex> multi_indices_up_to(int length, int max_weight);

using FormMask = std::uint32_t;

int popcount(FormMask m);
std::vector<int> mask_positions(FormMask m);
FormMask mask_of(const std::vector<int>& positions);

/// Terms sort by their dlambda set first, then by monomial.
struct TermKey {
  FormMask dl = 0;
  MultiIndex alpha;
  auto operator<=>(const TermKey&) const = default;
};

/// Polynomial differential form sum c * lambda^alpha dlambda_J on an ambient
/// simplex. Indices inside a form are vertex positions 0..n of the ambient
/// simplex, not global vertex ids.
class BaryForm {
 public:
  using Terms = std::map<TermKey, Rational>;

  BaryForm() = default;
  BaryForm(Simplex ambient, int degree);

  static BaryForm constant(const Simplex& ambient, const Rational& c);
  /// lambda_i for the vertex at position i.
  static BaryForm lambda(const Simplex& ambient, int i);
  static BaryForm dlambda(const Simplex& ambient, int i);
  static BaryForm monomial(const Simplex& ambient, const MultiIndex& alpha, FormMask dl = 0,
                           const Rational& c = 1);

  const Simplex& ambient() const { return ambient_; }
  int n() const { return ambient_.dim(); }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Largest |alpha| over the stored terms, -1 for the zero form. Only
  /// meaningful as the true degree after canonicalize().
  int polynomial_degree() const;

  void add_term(const MultiIndex& alpha, FormMask dl, const Rational& c);
  Rational coefficient(const MultiIndex& alpha, FormMask dl) const;

  BaryForm& operator+=(const BaryForm& o);
  BaryForm& operator-=(const BaryForm& o);
  BaryForm& operator*=(const Rational& c);
  BaryForm operator-() const;
  friend BaryForm operator+(BaryForm a, const BaryForm& b) { return a += b; }
  friend BaryForm operator-(BaryForm a, const BaryForm& b) { return a -= b; }
  friend BaryForm operator*(const Rational& c, BaryForm a) { return a *= c; }
  friend BaryForm operator*(BaryForm a, const Rational& c) { return a *= c; }

  /// Structural equality of the term maps (use equivalent() for equality as forms).
  bool operator==(const BaryForm& o) const;

 private:
  void check_compatible(const BaryForm& o) const;

  Simplex ambient_;
  int degree_ = 0;
  Terms terms_;
};

BaryForm wedge(const BaryForm& u, const BaryForm& v);
BaryForm exterior_derivative(const BaryForm& u);
/// Contraction with x - x_base; base_vertex is a vertex id of the ambient simplex.
BaryForm koszul(const BaryForm& u, int base_vertex);

/// Normal form: eliminates the vertex at position `pivot` using
/// lambda_p = 1 - sum lambda_i and dlambda_p = -sum dlambda_i.
BaryForm canonicalize(const BaryForm& u, int pivot = 0);
bool equivalent(const BaryForm& a, const BaryForm& b);

/// Restriction to a face F of the ambient simplex, expressed on F.
BaryForm pullback_to_face(const BaryForm& u, const Simplex& face);
/// Reads the same barycentric expression on a larger simplex W containing the ambient one.
BaryForm extend_to(const BaryForm& u, const Simplex& larger);
/// Pullback along the affine map sending the vertices of `target` to the points
/// whose barycentric coordinates (in u's ambient simplex) are the columns of m.
BaryForm pullback_affine(const BaryForm& u, const Simplex& target, const MatrixQ& m);
/// Renames vertex position i to perm[i].
BaryForm relabel(const BaryForm& u, const std::vector<int>& perm);

/// Integral of a top-degree form over its oriented ambient simplex. The result
/// is metric free: the integral of the Whitney form of the simplex is 1.
Rational integrate(const BaryForm& u);
/// Integral of a scalar polynomial divided by the volume of the ambient simplex.
Rational integrate_density(const BaryForm& u);

/// Coefficients on the canonical coframe {dlambda_J : 0 not in J} at a point
/// given in barycentric coordinates (which must sum to 1).
std::map<FormMask, Rational> evaluate(const BaryForm& u, const std::vector<Rational>& point);
Rational evaluate_scalar(const BaryForm& u, const std::vector<Rational>& point);

/// One term per line: `p/q * l0^a0*...*ln^an * dl(j1,...,jk)`.
std::string to_string(const BaryForm& u);

}  // namespace feec

namespace feec {

/// Coordinates of P_r Lambda^k on an n-simplex: canonical terms lambda^alpha
/// dlambda_J with alpha_0 = 0, |alpha| <= r and 0 not in J. Ordered by J
/// (lexicographic) and then by alpha.
class FormCoordinates {
 public:
  FormCoordinates(int n, int r, int k);

  int n() const { return n_; }
  int r() const { return r_; }
  int k() const { return k_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(keys_.size()); }
  const std::vector<TermKey>& keys() const { return keys_; }

  /// Coordinate vector of u; throws if u has degree above r.
  VectorQ coordinates(const BaryForm& u) const;
  /// Columns are the coordinates of the given forms.
  MatrixQ matrix(const std::vector<BaryForm>& forms) const;
  BaryForm form(const Simplex& ambient, const VectorQ& coords) const;

 private:
  int n_, r_, k_;
  std::vector<TermKey> keys_;
  std::map<TermKey, Eigen::Index> lookup_;
};

}  // namespace feec
