#pragma once

#include "feec/complex.hpp"
#include "feec/forms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace feec {

/// Whitney form of the oriented face T of U, as a form on U.
BaryForm whitney(const Simplex& u, const Simplex& t);
/// d of the Whitney form: (k+1)! dlambda_{t0} ^ ... ^ dlambda_{tk}, with the
/// orientation sign of T. The empty face gives the constant 1.
BaryForm whitney_differential(const Simplex& u, const Simplex& t);
/// mu_T: product of the barycentric coordinates of the vertices of U not in T.
BaryForm bubble(const Simplex& u, const Simplex& t);

enum class Space { PminusLk, PminusLk0, PLk };
std::string to_string(Space s);

struct FamilyIndex {
  MultiIndex alpha;
  Simplex face;
};

/// Generators indexed by (alpha, T):
///   PminusLk:  lambda^alpha lambda_T, |alpha| = r-1, T a k-face
///   PminusLk0: lambda^alpha mu_T lambda_T, |alpha| = r-n+k-1, T a k-face
///   PLk:       lambda^alpha dlambda_J, |alpha| = r, J a k-subset avoiding the
///              first vertex (a basis; `face` holds J)
struct SpanningFamily {
  Space tag;
  Simplex ambient;
  int r = 0;
  int k = 0;
  std::vector<FamilyIndex> index;

  std::size_t size() const { return index.size(); }
  BaryForm generator(std::size_t i) const;
  std::vector<BaryForm> generators() const;
};

SpanningFamily spanning_family(const Simplex& u, int r, int k, Space tag);

std::int64_t dim_P(int n, int r, int k);
std::int64_t dim_Pminus(int n, int r, int k);
/// dim of the boundary-free subspace P-_r Lambda^k_0 of an n-simplex.
std::int64_t dim_Pminus0(int n, int r, int k);

/// Membership in P-_r Lambda^k: degree of u and of its Koszul contraction <= r.
bool is_trimmed(const BaryForm& u, int r, int k, int base_vertex);

}  // namespace feec
