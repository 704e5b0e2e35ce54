#include "feec/forms.hpp"

#include <bit>
#include <sstream>

namespace feec {

MultiIndex::MultiIndex(int length) {
  if (length < 0 || length > kMaxVertices) throw Error("multi-index length out of range");
  n_ = static_cast<std::uint8_t>(length);
}

MultiIndex::MultiIndex(std::initializer_list<int> values) : MultiIndex(std::vector<int>(values)) {}

MultiIndex::MultiIndex(const std::vector<int>& values) : MultiIndex(static_cast<int>(values.size())) {
  for (std::size_t i = 0; i < values.size(); ++i) set(static_cast<int>(i), values[i]);
}

MultiIndex MultiIndex::unit(int length, int i) {
  MultiIndex m(length);
  m.set(i, 1);
  return m;
}

void MultiIndex::set(int i, int value) {
  if (i < 0 || i >= n_) throw Error("multi-index position out of range");
  if (value < 0 || value > 255) throw Error("multi-index entry out of range");
  a_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value);
}

int MultiIndex::weight() const {
  int w = 0;
  for (int i = 0; i < n_; ++i) w += a_[static_cast<std::size_t>(i)];
  return w;
}

std::vector<int> MultiIndex::to_vector() const {
  std::vector<int> v;
  for (int i = 0; i < n_; ++i) v.push_back((*this)[i]);
  return v;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (o.n_ != n_) throw Error("multi-index length mismatch");
  MultiIndex m(n_);
  for (int i = 0; i < n_; ++i) m.set(i, (*this)[i] + o[i]);
  return m;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  if (o.n_ != n_) throw Error("multi-index length mismatch");
  MultiIndex m(n_);
  for (int i = 0; i < n_; ++i) m.set(i, (*this)[i] - o[i]);
  return m;
}

Integer MultiIndex::factorial() const {
  Integer f = 1;
  for (int i = 0; i < n_; ++i) f *= feec::factorial((*this)[i]);
  return f;
}

namespace {

void fill_indices(int length, int pos, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == length - 1) {
    cur.set(pos, remaining);
    out.push_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur.set(pos, v);
    fill_indices(length, pos + 1, remaining - v, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices(int length, int weight) {
  std::vector<MultiIndex> out;
  if (weight < 0) return out;
  if (length == 0) {
    if (weight == 0) out.emplace_back(0);
    return out;
  }
  MultiIndex cur(length);
  fill_indices(length, 0, weight, cur, out);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(int length, int max_weight) {
  std::vector<MultiIndex> out;
  for (int w = 0; w <= max_weight; ++w) {
    auto part = multi_indices(length, w);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

int popcount(FormMask m) { return std::popcount(m); }

std::vector<int> mask_positions(FormMask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

FormMask mask_of(const std::vector<int>& positions) {
  FormMask m = 0;
  for (int p : positions) {
    if (p < 0 || p >= 32) throw Error("form index out of range");
    if (m & (1u << p)) throw Error("repeated form index");
    m |= 1u << p;
  }
  return m;
}

namespace {

/// Sign of moving the single index i into the sorted set m (i not in m).
int insertion_sign(FormMask m, int i) { return (std::popcount(m & ((1u << i) - 1u)) % 2) ? -1 : 1; }

/// Sign of dl_a ^ dl_b -> dl_{a|b} for disjoint a, b.
int merge_sign(FormMask a, FormMask b) {
  int inversions = 0;
  for (FormMask bb = b; bb; bb &= bb - 1) {
    int i = std::countr_zero(bb);
    inversions += std::popcount(a >> (i + 1));
  }
  return (inversions % 2) ? -1 : 1;
}

}  // namespace

BaryForm::BaryForm(Simplex ambient, int degree) : ambient_(std::move(ambient)), degree_(degree) {
  if (ambient_.size() > kMaxVertices) throw Error("ambient simplex too large");
  if (degree < 0) throw Error("negative form degree");
}

BaryForm BaryForm::constant(const Simplex& ambient, const Rational& c) {
  BaryForm u(ambient, 0);
  u.add_term(MultiIndex(ambient.size()), 0, c);
  return u;
}

BaryForm BaryForm::lambda(const Simplex& ambient, int i) {
  BaryForm u(ambient, 0);
  u.add_term(MultiIndex::unit(ambient.size(), i), 0, 1);
  return u;
}

BaryForm BaryForm::dlambda(const Simplex& ambient, int i) {
  BaryForm u(ambient, 1);
  u.add_term(MultiIndex(ambient.size()), FormMask(1) << i, 1);
  return u;
}

BaryForm BaryForm::monomial(const Simplex& ambient, const MultiIndex& alpha, FormMask dl, const Rational& c) {
  BaryForm u(ambient, popcount(dl));
  u.add_term(alpha, dl, c);
  return u;
}

int BaryForm::polynomial_degree() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, key.alpha.weight());
  return d;
}

void BaryForm::add_term(const MultiIndex& alpha, FormMask dl, const Rational& c) {
  if (alpha.size() != ambient_.size()) throw Error("multi-index length does not match the ambient simplex");
  if (popcount(dl) != degree_) throw Error("term degree does not match the form degree");
  if (dl >> ambient_.size()) throw Error("form index outside the ambient simplex");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(TermKey{dl, alpha}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational BaryForm::coefficient(const MultiIndex& alpha, FormMask dl) const {
  auto it = terms_.find(TermKey{dl, alpha});
  return it == terms_.end() ? Rational(0) : it->second;
}

void BaryForm::check_compatible(const BaryForm& o) const {
  if (!(o.ambient_ == ambient_)) throw Error("forms live on different simplices");
  if (o.degree_ != degree_) throw Error("forms have different degrees");
}

BaryForm& BaryForm::operator+=(const BaryForm& o) {
  check_compatible(o);
  for (const auto& [key, c] : o.terms_) add_term(key.alpha, key.dl, c);
  return *this;
}

BaryForm& BaryForm::operator-=(const BaryForm& o) {
  check_compatible(o);
  for (const auto& [key, c] : o.terms_) add_term(key.alpha, key.dl, -c);
  return *this;
}

BaryForm& BaryForm::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

BaryForm BaryForm::operator-() const {
  BaryForm u = *this;
  u *= Rational(-1);
  return u;
}

bool BaryForm::operator==(const BaryForm& o) const {
  return ambient_ == o.ambient_ && degree_ == o.degree_ && terms_ == o.terms_;
}

BaryForm wedge(const BaryForm& u, const BaryForm& v) {
  if (!(u.ambient() == v.ambient())) throw Error("wedge of forms on different simplices");
  BaryForm out(u.ambient(), u.degree() + v.degree());
  for (const auto& [a, ca] : u.terms())
    for (const auto& [b, cb] : v.terms()) {
      if (a.dl & b.dl) continue;
      out.add_term(a.alpha + b.alpha, a.dl | b.dl, merge_sign(a.dl, b.dl) * (ca * cb));
    }
  return out;
}

BaryForm exterior_derivative(const BaryForm& u) {
  BaryForm out(u.ambient(), u.degree() + 1);
  if (u.degree() >= u.ambient().size()) return out;
  for (const auto& [key, c] : u.terms())
    for (int i = 0; i < key.alpha.size(); ++i) {
      const int a = key.alpha[i];
      if (a == 0 || (key.dl & (1u << i))) continue;
      MultiIndex alpha = key.alpha;
      alpha.set(i, a - 1);
      out.add_term(alpha, key.dl | (1u << i), Rational(a * insertion_sign(key.dl, i)) * c);
    }
  return out;
}

BaryForm koszul(const BaryForm& u, int base_vertex) {
  const int b = u.ambient().position(base_vertex);
  if (b < 0) throw Error("base vertex is not a vertex of the simplex");
  if (u.degree() == 0) return BaryForm(u.ambient(), 0);
  BaryForm out(u.ambient(), u.degree() - 1);
  for (const auto& [key, c] : u.terms()) {
    auto pos = mask_positions(key.dl);
    for (std::size_t m = 0; m < pos.size(); ++m) {
      const int j = pos[m];
      const Rational sc = (m % 2) ? -c : c;
      const FormMask rest = key.dl & ~(1u << j);
      out.add_term(key.alpha + MultiIndex::unit(key.alpha.size(), j), rest, sc);
      if (j == b) out.add_term(key.alpha, rest, -sc);
    }
  }
  return out;
}

namespace {

/// Expansion of (1 - sum_{i != p} lambda_i)^a as (multi-index, coefficient) pairs.
const std::vector<std::pair<MultiIndex, Rational>>& pivot_power(int length, int p, int a) {
  static thread_local std::map<std::tuple<int, int, int>, std::vector<std::pair<MultiIndex, Rational>>> cache;
  auto key = std::make_tuple(length, p, a);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<MultiIndex, Rational>> out;
  const Integer fa = factorial(a);
  for (int w = 0; w <= a; ++w) {
    for (const auto& beta : multi_indices(length - 1, w)) {
      MultiIndex full(length);
      for (int i = 0, j = 0; i < length; ++i) {
        if (i == p) continue;
        full.set(i, beta[j++]);
      }
      Rational c(fa, factorial(a - w) * beta.factorial());
      if (w % 2) c = -c;
      out.emplace_back(full, c);
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

BaryForm canonicalize(const BaryForm& u, int pivot) {
  const int len = u.ambient().size();
  if (pivot < 0 || pivot >= len) throw Error("canonicalize: pivot out of range");
  BaryForm out(u.ambient(), u.degree());
  const FormMask pbit = 1u << pivot;
  std::vector<std::pair<FormMask, int>> masks;
  for (const auto& [key, c] : u.terms()) {
    masks.clear();
    if (key.dl & pbit) {
      // dl_J = s dl_p ^ dl_{J\p}, then dl_p = -sum_{i not in J} dl_i
      const FormMask rest = key.dl & ~pbit;
      const int s = insertion_sign(rest, pivot);
      for (int i = 0; i < len; ++i) {
        if (i == pivot || (key.dl & (1u << i))) continue;
        masks.emplace_back(rest | (1u << i), -s * insertion_sign(rest, i));
      }
    } else {
      masks.emplace_back(key.dl, 1);
    }
    MultiIndex base = key.alpha;
    const int a = base[pivot];
    base.set(pivot, 0);
    for (const auto& [beta, pc] : pivot_power(len, pivot, a)) {
      const Rational cc = c * pc;
      const MultiIndex alpha = base + beta;
      for (const auto& [m, s] : masks) out.add_term(alpha, m, s > 0 ? cc : -cc);
    }
  }
  return out;
}

bool equivalent(const BaryForm& a, const BaryForm& b) { return canonicalize(a - b).is_zero(); }

BaryForm pullback_to_face(const BaryForm& u, const Simplex& face) {
  if (!face.is_face_of(u.ambient())) throw Error("not a face");
  std::vector<int> pos_in_face(static_cast<std::size_t>(u.ambient().size()), -1);
  for (int i = 0; i < face.size(); ++i)
    pos_in_face[static_cast<std::size_t>(u.ambient().position(face[i]))] = i;
  BaryForm out(face, u.degree());
  if (u.degree() > face.size()) return out;
  for (const auto& [key, c] : u.terms()) {
    bool keep = true;
    MultiIndex alpha(face.size());
    FormMask dl = 0;
    for (int i = 0; i < key.alpha.size() && keep; ++i) {
      const int q = pos_in_face[static_cast<std::size_t>(i)];
      const bool in_dl = key.dl & (1u << i);
      if (q < 0) {
        keep = key.alpha[i] == 0 && !in_dl;
        continue;
      }
      alpha.set(q, key.alpha[i]);
      if (in_dl) dl |= 1u << q;
    }
    // positions keep their relative order, so no sign appears
    if (keep) out.add_term(alpha, dl, c);
  }
  return out;
}

BaryForm extend_to(const BaryForm& u, const Simplex& larger) {
  if (!u.ambient().is_face_of(larger)) throw Error("extend_to: ambient simplex is not a face of the target");
  BaryForm out(larger, u.degree());
  std::vector<int> pos;
  for (int v : u.ambient().vertices()) pos.push_back(larger.position(v));
  for (const auto& [key, c] : u.terms()) {
    MultiIndex alpha(larger.size());
    FormMask dl = 0;
    for (int i = 0; i < key.alpha.size(); ++i) {
      alpha.set(pos[static_cast<std::size_t>(i)], key.alpha[i]);
      if (key.dl & (1u << i)) dl |= 1u << pos[static_cast<std::size_t>(i)];
    }
    out.add_term(alpha, dl, c);
  }
  return out;
}

BaryForm pullback_affine(const BaryForm& u, const Simplex& target, const MatrixQ& m) {
  const int n1 = u.ambient().size(), m1 = target.size();
  if (m.rows() != n1 || m.cols() != m1) throw Error("pullback_affine: matrix shape mismatch");
  std::vector<BaryForm> lin, dlin;
  for (int i = 0; i < n1; ++i) {
    BaryForm l(target, 0), dl(target, 1);
    for (int j = 0; j < m1; ++j) {
      l.add_term(MultiIndex::unit(m1, j), 0, m(i, j));
      dl.add_term(MultiIndex(m1), 1u << j, m(i, j));
    }
    lin.push_back(l);
    dlin.push_back(dl);
  }
  std::map<std::pair<int, int>, BaryForm> powers;
  auto power = [&](int i, int a) -> const BaryForm& {
    auto key = std::make_pair(i, a);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    BaryForm p = BaryForm::constant(target, 1);
    for (int e = 0; e < a; ++e) p = wedge(p, lin[static_cast<std::size_t>(i)]);
    return powers.emplace(key, std::move(p)).first->second;
  };
  BaryForm out(target, u.degree());
  for (const auto& [key, c] : u.terms()) {
    BaryForm t = BaryForm::constant(target, c);
    for (int i = 0; i < n1; ++i)
      if (key.alpha[i]) t = wedge(t, power(i, key.alpha[i]));
    for (int i : mask_positions(key.dl)) t = wedge(t, dlin[static_cast<std::size_t>(i)]);
    out += t;
  }
  return out;
}

BaryForm relabel(const BaryForm& u, const std::vector<int>& perm) {
  const int len = u.ambient().size();
  if (static_cast<int>(perm.size()) != len) throw Error("relabel: permutation size mismatch");
  BaryForm out(u.ambient(), u.degree());
  for (const auto& [key, c] : u.terms()) {
    MultiIndex alpha(len);
    std::vector<int> image;
    for (int i = 0; i < len; ++i) alpha.set(perm[static_cast<std::size_t>(i)], key.alpha[i]);
    for (int i : mask_positions(key.dl)) image.push_back(perm[static_cast<std::size_t>(i)]);
    out.add_term(alpha, mask_of(image), permutation_sign(image) * c);
  }
  return out;
}

Rational integrate(const BaryForm& u) {
  const int n = u.n();
  if (u.degree() != n) throw Error("integrate: form degree must equal the simplex dimension");
  Rational total = 0;
  const BaryForm cu = canonicalize(u);
  for (const auto& [key, c] : cu.terms())
    total += c * Rational(key.alpha.factorial(), factorial(key.alpha.weight() + n));
  return u.ambient().orientation() * total;
}

Rational integrate_density(const BaryForm& u) {
  const int n = u.n();
  if (u.degree() != 0) throw Error("integrate_density expects a scalar polynomial");
  Rational total = 0;
  const Integer fn = factorial(n);
  for (const auto& [key, c] : u.terms())
    total += c * Rational(key.alpha.factorial() * fn, factorial(key.alpha.weight() + n));
  return total;
}

namespace {

void check_point(const BaryForm& u, const std::vector<Rational>& point) {
  if (static_cast<int>(point.size()) != u.ambient().size()) throw Error("point has the wrong number of coordinates");
  Rational s = 0;
  for (const auto& x : point) s += x;
  if (s != 1) throw Error("barycentric coordinates must sum to 1");
}

Rational monomial_value(const MultiIndex& alpha, const std::vector<Rational>& point) {
  Rational v = 1;
  for (int i = 0; i < alpha.size(); ++i)
    for (int e = 0; e < alpha[i]; ++e) v *= point[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace

std::map<FormMask, Rational> evaluate(const BaryForm& u, const std::vector<Rational>& point) {
  check_point(u, point);
  std::map<FormMask, Rational> out;
  const BaryForm cu = canonicalize(u);
  for (const auto& [key, c] : cu.terms()) out[key.dl] += c * monomial_value(key.alpha, point);
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

Rational evaluate_scalar(const BaryForm& u, const std::vector<Rational>& point) {
  if (u.degree() != 0) throw Error("evaluate_scalar expects a 0-form");
  check_point(u, point);
  Rational v = 0;
  for (const auto& [key, c] : u.terms()) v += c * monomial_value(key.alpha, point);
  return v;
}

std::string to_string(const BaryForm& u) {
  std::ostringstream os;
  for (const auto& [key, c] : u.terms()) {
    os << c.str() << " * ";
    for (int i = 0; i < key.alpha.size(); ++i) os << (i ? "*" : "") << "l" << i << "^" << key.alpha[i];
    os << " * dl(";
    auto pos = mask_positions(key.dl);
    for (std::size_t i = 0; i < pos.size(); ++i) os << (i ? "," : "") << pos[i];
    os << ")\n";
  }
  return os.str();
}

}  // namespace feec

namespace feec {

FormCoordinates::FormCoordinates(int n, int r, int k) : n_(n), r_(r), k_(k) {
  if (k < 0 || k > n) return;
  std::vector<Simplex> js = faces(Simplex::reference(n).drop(0), k - 1);
  std::vector<MultiIndex> alphas;
  for (const auto& a : multi_indices_up_to(n, r)) {
    MultiIndex full(n + 1);
    for (int i = 0; i < n; ++i) full.set(i + 1, a[i]);
    alphas.push_back(full);
  }
  for (const auto& j : js)
    for (const auto& a : alphas) {
      TermKey key{mask_of(j.vertices()), a};
      lookup_[key] = static_cast<Eigen::Index>(keys_.size());
      keys_.push_back(key);
    }
}

VectorQ FormCoordinates::coordinates(const BaryForm& u) const {
  if (u.n() != n_ || u.degree() != k_) throw Error("FormCoordinates: form has the wrong shape");
  VectorQ v = VectorQ::Zero(size());
  const BaryForm cu = canonicalize(u);
  for (const auto& [key, c] : cu.terms()) {
    auto it = lookup_.find(key);
    if (it == lookup_.end()) throw Error("FormCoordinates: polynomial degree exceeds " + std::to_string(r_));
    v(it->second) = c;
  }
  return v;
}

MatrixQ FormCoordinates::matrix(const std::vector<BaryForm>& forms) const {
  MatrixQ m(size(), static_cast<Eigen::Index>(forms.size()));
  for (std::size_t j = 0; j < forms.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = coordinates(forms[j]);
  return m;
}

BaryForm FormCoordinates::form(const Simplex& ambient, const VectorQ& coords) const {
  if (ambient.dim() != n_ || coords.size() != size()) throw Error("FormCoordinates: shape mismatch");
  BaryForm u(ambient, k_);
  for (Eigen::Index i = 0; i < size(); ++i) u.add_term(keys_[static_cast<std::size_t>(i)].alpha, keys_[static_cast<std::size_t>(i)].dl, coords(i));
  return u;
}

}  // namespace feec
