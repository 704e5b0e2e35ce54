#include "feec/whitney.hpp"

namespace feec {

namespace {

std::vector<int> positions_in(const Simplex& u, const Simplex& t) {
  if (!t.is_face_of(u)) throw Error("not a face");
  std::vector<int> p;
  for (int v : t.vertices()) p.push_back(u.position(v));
  return p;
}

}  // namespace

BaryForm whitney(const Simplex& u, const Simplex& t) {
  auto p = positions_in(u, t);
  if (p.empty()) throw Error("whitney: empty face");
  const int k = t.dim();
  const FormMask all = mask_of(p);
  BaryForm out(u, k);
  const Rational scale = Rational(factorial(k)) * t.orientation();
  for (int j = 0; j <= k; ++j) {
    const int pj = p[static_cast<std::size_t>(j)];
    out.add_term(MultiIndex::unit(u.size(), pj), all & ~(1u << pj), (j % 2) ? -scale : scale);
  }
  return out;
}

BaryForm whitney_differential(const Simplex& u, const Simplex& t) {
  auto p = positions_in(u, t);
  BaryForm out(u, static_cast<int>(p.size()));
  out.add_term(MultiIndex(u.size()), mask_of(p), Rational(factorial(static_cast<int>(p.size()))) * t.orientation());
  return out;
}

BaryForm bubble(const Simplex& u, const Simplex& t) {
  positions_in(u, t);
  MultiIndex alpha(u.size());
  for (int i = 0; i < u.size(); ++i)
    if (!t.contains_vertex(u[i])) alpha.set(i, 1);
  return BaryForm::monomial(u, alpha);
}

std::string to_string(Space s) {
  switch (s) {
    case Space::PminusLk: return "PminusLk";
    case Space::PminusLk0: return "PminusLk0";
    case Space::PLk: return "PLk";
  }
  return "?";
}

BaryForm SpanningFamily::generator(std::size_t i) const {
  const auto& [alpha, face] = index.at(i);
  switch (tag) {
    case Space::PminusLk:
      return wedge(BaryForm::monomial(ambient, alpha), whitney(ambient, face));
    case Space::PminusLk0:
      return wedge(wedge(BaryForm::monomial(ambient, alpha), bubble(ambient, face)), whitney(ambient, face));
    case Space::PLk: {
      std::vector<int> pos;
      for (int v : face.vertices()) pos.push_back(ambient.position(v));
      return BaryForm::monomial(ambient, alpha, mask_of(pos));
    }
  }
  throw Error("unknown space tag");
}

std::vector<BaryForm> SpanningFamily::generators() const {
  std::vector<BaryForm> out;
  out.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) out.push_back(generator(i));
  return out;
}

SpanningFamily spanning_family(const Simplex& u, int r, int k, Space tag) {
  const int n = u.dim();
  if (k < 0 || k > n) throw Error("spanning_family: form degree out of range");
  SpanningFamily fam{tag, u, r, k, {}};
  int weight = 0;
  std::vector<Simplex> fs;
  switch (tag) {
    case Space::PminusLk:
      if (r < 1) throw Error("spanning_family: trimmed spaces need r >= 1");
      weight = r - 1;
      fs = faces(u, k);
      break;
    case Space::PminusLk0:
      if (r < 1) throw Error("spanning_family: trimmed spaces need r >= 1");
      weight = r - n + k - 1;
      fs = faces(u, k);
      break;
    case Space::PLk:
      if (r < 0) throw Error("spanning_family: negative degree");
      weight = r;
      fs = faces(u.drop(0), k - 1);
      break;
  }
  for (const auto& a : multi_indices(u.size(), weight))
    for (const auto& f : fs) fam.index.push_back({a, f});
  return fam;
}

std::int64_t dim_P(int n, int r, int k) {
  if (k < 0 || k > n || r < 0) return 0;
  return binomial64(n + r, r) * binomial64(n, k);
}

std::int64_t dim_Pminus(int n, int r, int k) {
  if (k < 0 || k > n || r < 1) return 0;
  return binomial64(r + k - 1, k) * binomial64(n + r, n - k);
}

std::int64_t dim_Pminus0(int n, int r, int k) { return dim_P(n, r - n + k - 1, n - k); }

bool is_trimmed(const BaryForm& u, int r, int k, int base_vertex) {
  if (u.degree() != k) return false;
  if (canonicalize(u).polynomial_degree() > r) return false;
  if (k == 0) return true;
  return canonicalize(koszul(u, base_vertex)).polynomial_degree() <= r;
}

}  // namespace feec
