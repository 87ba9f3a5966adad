#include "matchfield/subspace.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace matchfield {

namespace {

void check_same_field(const ExtensionField& a, const ExtensionField& b) {
  if (a != b) throw std::invalid_argument("operands live in different fields");
}

fpm::Row row_times_mat(const fpm::Row& x, const fpm::Mat& m, uint64_t p) {
  assert(m.size() == x.size());
  const size_t cols = m.empty() ? 0 : m[0].size();
  fpm::Row out(cols, 0);
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < cols; ++j)
      out[j] = fpm::add_mod(out[j], fpm::mul_mod(x[i], m[i][j], p), p);
  }
  return out;
}

}  // namespace

Subspace::Subspace(ExtensionField f, fpm::Mat rref_rows,
                   std::vector<unsigned> pivots)
    : field_(std::move(f)), rows_(std::move(rref_rows)),
      pivots_(std::move(pivots)) {}

Subspace Subspace::zero(const ExtensionField& f) {
  return Subspace(f, {}, {});
}

Subspace Subspace::full(const ExtensionField& f) {
  fpm::Mat rows(f.degree(), fpm::Row(f.degree(), 0));
  std::vector<unsigned> piv(f.degree());
  for (unsigned i = 0; i < f.degree(); ++i) {
    rows[i][i] = 1;
    piv[i] = i;
  }
  return Subspace(f, std::move(rows), std::move(piv));
}

Subspace Subspace::from_rows(const ExtensionField& f, fpm::Mat generators) {
  for (const auto& r : generators) {
    if (r.size() != f.degree())
      throw std::invalid_argument("generator width does not match the field");
    for (uint32_t c : r)
      if (c >= f.p())
        throw std::invalid_argument("generator coefficient out of range");
  }
  auto piv = fpm::rref_in_place(generators, f.p());
  return Subspace(f, std::move(generators), std::move(piv));
}

fpm::CoordSubspace Subspace::coords() const {
  return fpm::CoordSubspace{field_.p(), ambient(), rows_, pivots_};
}

std::vector<FieldElement> Subspace::basis_elements() const {
  std::vector<FieldElement> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(field_.element(r));
  return out;
}

bool Subspace::contains(const FieldElement& x) const {
  check_same_field(field_, x.field());
  return fpm::is_zero(fpm::reduce(rows_, pivots_, x.coeffs(), field_.p()));
}

bool Subspace::contains_subspace(const Subspace& other) const {
  check_same_field(field_, other.field_);
  for (const auto& r : other.rows_)
    if (!fpm::is_zero(fpm::reduce(rows_, pivots_, r, field_.p())))
      return false;
  return true;
}

bool Subspace::contains_one() const { return contains(field_.one()); }

std::optional<fpm::Row> Subspace::coordinates_of(const FieldElement& x) const {
  check_same_field(field_, x.field());
  fpm::Row coords;
  fpm::Row rem = fpm::reduce(rows_, pivots_, x.coeffs(), field_.p(), &coords);
  if (!fpm::is_zero(rem)) return std::nullopt;
  return coords;
}

uint64_t Subspace::element_count() const {
  uint64_t c = 1;
  for (unsigned i = 0; i < dim(); ++i) c *= field_.p();
  return c;
}

FieldElement Subspace::element_at(uint64_t index) const {
  fpm::Row acc(ambient(), 0);
  const uint64_t p = field_.p();
  for (unsigned i = 0; i < dim(); ++i) {
    uint32_t digit = static_cast<uint32_t>(index % p);
    index /= p;
    if (digit == 0) continue;
    for (unsigned j = 0; j < ambient(); ++j)
      acc[j] = fpm::add_mod(acc[j], fpm::mul_mod(digit, rows_[i][j], p), p);
  }
  if (index != 0) throw std::invalid_argument("element index out of range");
  return field_.element(std::move(acc));
}

Subspace span(const ExtensionField& f, const std::vector<FieldElement>& gens) {
  fpm::Mat rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) {
    check_same_field(f, g.field());
    rows.push_back(g.coeffs());
  }
  return Subspace::from_rows(f, std::move(rows));
}

Subspace span(const std::vector<FieldElement>& gens) {
  if (gens.empty())
    throw std::invalid_argument("span of no generators needs an explicit field");
  return span(gens[0].field(), gens);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  check_same_field(a.field(), b.field());
  fpm::CoordSubspace meet = fpm::coord_intersect(a.coords(), b.coords());
  return Subspace::from_rows(a.field(), std::move(meet.rows));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  check_same_field(a.field(), b.field());
  fpm::Mat rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return Subspace::from_rows(a.field(), std::move(rows));
}

Subspace scale_left(const FieldElement& a, const Subspace& s) {
  check_same_field(a.field(), s.field());
  if (a.is_zero()) throw std::invalid_argument("scale_left by zero");
  fpm::Mat rows;
  rows.reserve(s.dim());
  for (const auto& e : s.basis_elements()) rows.push_back((a * e).coeffs());
  return Subspace::from_rows(s.field(), std::move(rows));
}

Subspace back_division(const FieldElement& a, const Subspace& A,
                       const Subspace& B) {
  check_same_field(A.field(), B.field());
  check_same_field(a.field(), A.field());
  if (a.is_zero()) throw std::invalid_argument("back division by zero");
  return intersect(scale_left(a.inv(), A), B);
}

Subspace product_span(const Subspace& a, const Subspace& b) {
  check_same_field(a.field(), b.field());
  fpm::Mat rows;
  rows.reserve(size_t(a.dim()) * b.dim());
  for (const auto& x : a.basis_elements())
    for (const auto& y : b.basis_elements()) rows.push_back((x * y).coeffs());
  return Subspace::from_rows(a.field(), std::move(rows));
}

Basis::Basis(std::vector<FieldElement> elements, Subspace parent)
    : elements_(std::move(elements)), parent_(std::move(parent)) {}

Basis Basis::of(std::vector<FieldElement> elements) {
  if (elements.empty())
    throw std::invalid_argument("empty basis needs Basis::canonical");
  Subspace parent = span(elements);
  if (parent.dim() != elements.size())
    throw std::invalid_argument("basis elements are dependent");
  return Basis(std::move(elements), std::move(parent));
}

Basis Basis::canonical(const Subspace& s) {
  return Basis(s.basis_elements(), s);
}

Subspace hyperplane_omitting(const Basis& basis, size_t i) {
  if (i >= basis.size())
    throw std::invalid_argument("hyperplane index out of range");
  std::vector<FieldElement> rest;
  rest.reserve(basis.size() - 1);
  for (size_t j = 0; j < basis.size(); ++j)
    if (j != i) rest.push_back(basis[j]);
  return span(basis.parent().field(), rest);
}

// Coordinates of the rows of C against ref, as a (dim C) x (dim B) matrix.
static fpm::Mat coords_against(const Subspace& C, const Subspace& B,
                               const Basis& ref) {
  check_same_field(C.field(), B.field());
  if (ref.parent() != B)
    throw std::invalid_argument("reference basis does not span the space");
  if (!B.contains_subspace(C))
    throw std::invalid_argument("not a subspace of the reference space");
  const uint64_t p = B.field().p();
  const unsigned n = B.dim();

  // T: ref expressed against the echelon rows of B.
  fpm::Mat T;
  T.reserve(n);
  bool identity = true;
  for (unsigned i = 0; i < n; ++i) {
    auto c = B.coordinates_of(ref[i]);
    assert(c.has_value());
    for (unsigned j = 0; j < n; ++j)
      if ((*c)[j] != (i == j ? 1u : 0u)) identity = false;
    T.push_back(std::move(*c));
  }

  std::optional<fpm::Mat> Tinv;
  if (!identity) {
    Tinv = fpm::inverse(std::move(T), p);
    assert(Tinv.has_value());
  }

  fpm::Mat M;
  M.reserve(C.dim());
  for (const auto& row : C.rows()) {
    fpm::Row gamma;
    fpm::Row rem = fpm::reduce(B.rows(), B.pivots(), row, p, &gamma);
    assert(fpm::is_zero(rem));
    (void)rem;
    M.push_back(identity ? std::move(gamma)
                         : row_times_mat(gamma, *Tinv, p));
  }
  return M;
}

std::vector<DualFunctional> annihilator(const Subspace& C, const Subspace& B,
                                        const Basis& ref) {
  fpm::Mat M = coords_against(C, B, ref);
  fpm::Mat null = fpm::nullspace(std::move(M), B.dim(), B.field().p());
  assert(null.size() == B.dim() - C.dim());
  std::vector<DualFunctional> out;
  out.reserve(null.size());
  for (auto& w : null) out.push_back(DualFunctional{std::move(w)});
  return out;
}

Basis dual_basis_to_primal(const std::vector<DualFunctional>& functionals,
                           const Subspace& B, const Basis& ref) {
  if (ref.parent() != B)
    throw std::invalid_argument("reference basis does not span the space");
  const unsigned n = B.dim();
  if (functionals.size() != n)
    throw std::invalid_argument("need exactly dim B functionals");
  const uint64_t p = B.field().p();
  fpm::Mat phi;
  phi.reserve(n);
  for (const auto& f : functionals) {
    if (f.weights.size() != n)
      throw std::invalid_argument("functional has wrong arity");
    phi.push_back(f.weights);
  }
  auto phi_inv = fpm::inverse(std::move(phi), p);
  if (!phi_inv) throw std::invalid_argument("functionals are dependent");
  // b_j = sum_m M[j][m] ref_m with M = (phi^-1)^T gives f_i(b_j) = delta_ij.
  fpm::Mat M = fpm::transpose(*phi_inv, n);
  if (n == 0) return Basis::canonical(B);
  std::vector<FieldElement> elems;
  elems.reserve(n);
  for (unsigned j = 0; j < n; ++j) {
    FieldElement b = B.field().zero();
    for (unsigned m = 0; m < n; ++m) {
      if (M[j][m] == 0) continue;
      fpm::Row scaled = ref[m].coeffs();
      for (auto& c : scaled) c = fpm::mul_mod(c, M[j][m], p);
      b = b + B.field().element(std::move(scaled));
    }
    elems.push_back(std::move(b));
  }
  return Basis::of(std::move(elems));
}

SubfieldDescriptor subfield(const ExtensionField& f, unsigned d) {
  const unsigned k = f.degree();
  if (d < 1 || k % d != 0)
    throw std::invalid_argument("subfield degree must divide k");
  const uint64_t p = f.p();
  // Kernel of x -> x^(p^d) - x, columns indexed by the power basis.
  fpm::Mat M(k, fpm::Row(k, 0));
  for (unsigned j = 0; j < k; ++j) {
    fpm::Row ej(k, 0);
    ej[j] = 1;
    FieldElement x = f.element(std::move(ej));
    FieldElement y = x.frobenius(d) - x;
    for (unsigned i = 0; i < k; ++i) M[i][j] = y.coeffs()[i];
  }
  fpm::Mat fixed = fpm::nullspace(std::move(M), k, p);
  Subspace space = Subspace::from_rows(f, std::move(fixed));
  assert(space.dim() == d);
  return SubfieldDescriptor{d, std::move(space)};
}

static uint64_t upow(uint64_t p, unsigned e) {
  uint64_t v = 1;
  while (e--) v *= p;
  return v;
}

uint64_t gaussian_binomial(unsigned k, unsigned d, uint64_t p) {
  if (d > k) return 0;
  // prod_{i<d} (p^(k-i) - 1) / (p^(i+1) - 1); every prefix is itself a
  // gaussian binomial, so the running division is exact.
  unsigned __int128 r = 1;
  const unsigned __int128 cap = ~uint64_t(0);
  for (unsigned i = 0; i < d; ++i) {
    r *= upow(p, k - i) - 1;
    r /= upow(p, i + 1) - 1;
    if (r > cap) return ~uint64_t(0);  // saturate; guards refuse anyway
  }
  return static_cast<uint64_t>(r);
}

std::optional<uint64_t> gl_order(unsigned n, uint64_t p) {
  unsigned __int128 r = 1;
  const unsigned __int128 cap = ~uint64_t(0);
  const uint64_t pn = upow(p, n);
  uint64_t pi = 1;
  for (unsigned i = 0; i < n; ++i) {
    r *= (pn - pi);
    if (r > cap) return std::nullopt;
    pi *= p;
  }
  return static_cast<uint64_t>(r);
}

SubspaceEnumerator::SubspaceEnumerator(const ExtensionField& f, unsigned d)
    : field_(f), d_(d), total_(gaussian_binomial(f.degree(), d, f.p())) {
  if (d > f.degree())
    throw std::invalid_argument("subspace dimension exceeds ambient");
  pivot_cols_.resize(d);
  for (unsigned i = 0; i < d; ++i) pivot_cols_[i] = i;
  free_pos_.clear();
  free_vals_.clear();
  fresh_combo_ = true;
}

// Positions (row, col) that RREF leaves free for the current pivot set,
// row-major.
static std::vector<std::pair<unsigned, unsigned>> free_positions(
    const std::vector<unsigned>& pivots, unsigned width) {
  std::vector<bool> is_pivot(width, false);
  for (unsigned c : pivots) is_pivot[c] = true;
  std::vector<std::pair<unsigned, unsigned>> pos;
  for (unsigned i = 0; i < pivots.size(); ++i)
    for (unsigned j = pivots[i] + 1; j < width; ++j)
      if (!is_pivot[j]) pos.emplace_back(i, j);
  return pos;
}

bool SubspaceEnumerator::advance_combo() {
  const unsigned k = field_.degree();
  // next lexicographic d-combination of {0..k-1}
  if (d_ == 0) return false;
  int i = static_cast<int>(d_) - 1;
  while (i >= 0 && pivot_cols_[i] == k - d_ + i) --i;
  if (i < 0) return false;
  ++pivot_cols_[i];
  for (unsigned j = i + 1; j < d_; ++j) pivot_cols_[j] = pivot_cols_[j - 1] + 1;
  return true;
}

Subspace SubspaceEnumerator::build() const {
  fpm::Mat rows(d_, fpm::Row(field_.degree(), 0));
  for (unsigned i = 0; i < d_; ++i) rows[i][pivot_cols_[i]] = 1;
  for (size_t t = 0; t < free_pos_.size(); ++t)
    rows[free_pos_[t].first][free_pos_[t].second] = free_vals_[t];
  return Subspace::from_rows(field_, std::move(rows));
}

std::optional<Subspace> SubspaceEnumerator::next() {
  if (exhausted_) return std::nullopt;
  if (fresh_combo_) {
    free_pos_ = free_positions(pivot_cols_, field_.degree());
    free_vals_.assign(free_pos_.size(), 0);
    fresh_combo_ = false;
  }
  Subspace out = build();
  // base-p odometer over the free values, last position fastest
  bool ticked = false;
  for (size_t t = free_vals_.size(); t-- > 0;) {
    if (++free_vals_[t] < field_.p()) {
      ticked = true;
      break;
    }
    free_vals_[t] = 0;
  }
  if (!ticked) {
    if (advance_combo())
      fresh_combo_ = true;
    else
      exhausted_ = true;
  }
  return out;
}

BasisEnumerator::BasisEnumerator(const Subspace& s) : space_(s) {
  codes_.assign(s.dim(), 0);
}

std::optional<uint64_t> BasisEnumerator::total() const {
  return gl_order(space_.dim(), space_.field().p());
}

namespace {

// Decode a base-p code into a coefficient row of length n (digit i weights
// row i).
fpm::Row decode_code(uint64_t code, unsigned n, uint64_t p) {
  fpm::Row c(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    c[i] = static_cast<uint32_t>(code % p);
    code /= p;
  }
  return c;
}

}  // namespace

bool BasisEnumerator::advance(size_t level) {
  const unsigned n = space_.dim();
  const uint64_t p = space_.field().p();
  uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  // prefix echelon form for the independence test
  fpm::Mat pref;
  for (size_t l = 0; l < level; ++l)
    pref.push_back(decode_code(codes_[l], n, p));
  auto piv = fpm::rref_in_place(pref, p);
  for (uint64_t code = codes_[level] + 1; code < count; ++code) {
    fpm::Row cand = decode_code(code, n, p);
    if (!fpm::is_zero(fpm::reduce(pref, piv, cand, p))) {
      codes_[level] = code;
      return true;
    }
  }
  return false;
}

bool BasisEnumerator::descend(size_t level) {
  for (size_t l = level; l < codes_.size(); ++l) {
    codes_[l] = 0;
    if (!advance(l)) return false;
  }
  return true;
}

std::optional<Basis> BasisEnumerator::next() {
  if (exhausted_) return std::nullopt;
  const unsigned n = space_.dim();
  if (!started_) {
    started_ = true;
    if (!descend(0)) {  // only possible for n > 0 with no valid first row
      exhausted_ = true;
      return std::nullopt;
    }
  } else {
    size_t level = n;
    bool moved = false;
    while (level-- > 0) {
      if (advance(level)) {
        // deeper levels always refill: the prefix has rank < n
        bool ok = descend(level + 1);
        assert(ok);
        (void)ok;
        moved = true;
        break;
      }
    }
    if (!moved) {
      exhausted_ = true;
      return std::nullopt;
    }
  }
  if (n == 0) return Basis::canonical(space_);  // the empty basis, once
  const uint64_t p = space_.field().p();
  std::vector<FieldElement> elems;
  elems.reserve(n);
  for (size_t l = 0; l < n; ++l) {
    fpm::Row c = decode_code(codes_[l], n, p);
    fpm::Row acc(space_.ambient(), 0);
    for (unsigned i = 0; i < n; ++i) {
      if (c[i] == 0) continue;
      for (unsigned j = 0; j < space_.ambient(); ++j)
        acc[j] = fpm::add_mod(acc[j],
                              fpm::mul_mod(c[i], space_.rows()[i][j], p), p);
    }
    elems.push_back(space_.field().element(std::move(acc)));
  }
  return Basis::of(std::move(elems));
}

std::vector<Subspace> all_subspaces(const ExtensionField& f, unsigned d,
                                    uint64_t cap) {
  SubspaceEnumerator en(f, d);
  check_guard(en.total(), cap, "subspace enumeration");
  std::vector<Subspace> out;
  out.reserve(en.total());
  while (auto s = en.next()) out.push_back(std::move(*s));
  return out;
}

std::vector<Basis> all_bases(const Subspace& s, uint64_t cap) {
  BasisEnumerator en(s);
  auto total = en.total();
  if (!total) throw GuardExceeded("ordered basis count overflows");
  check_guard(*total, cap, "ordered basis enumeration");
  std::vector<Basis> out;
  out.reserve(*total);
  while (auto b = en.next()) out.push_back(std::move(*b));
  return out;
}

fpm::Mat random_invertible_matrix(unsigned n, uint64_t p, Rng& rng) {
  while (true) {
    fpm::Mat m(n, fpm::Row(n, 0));
    for (auto& row : m)
      for (auto& c : row) c = static_cast<uint32_t>(rng.below(p));
    if (fpm::rank(m, p) == n) return m;
  }
}

Basis random_basis(const Subspace& s, Rng& rng) {
  const unsigned n = s.dim();
  if (n == 0) return Basis::canonical(s);
  const uint64_t p = s.field().p();
  fpm::Mat m = random_invertible_matrix(n, p, rng);
  std::vector<FieldElement> elems;
  elems.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    fpm::Row acc(s.ambient(), 0);
    for (unsigned j = 0; j < n; ++j) {
      if (m[i][j] == 0) continue;
      for (unsigned c = 0; c < s.ambient(); ++c)
        acc[c] = fpm::add_mod(acc[c], fpm::mul_mod(m[i][j], s.rows()[j][c], p),
                              p);
    }
    elems.push_back(s.field().element(std::move(acc)));
  }
  return Basis::of(std::move(elems));
}

Subspace random_subspace(const ExtensionField& f, unsigned d, Rng& rng) {
  if (d > f.degree())
    throw std::invalid_argument("subspace dimension exceeds ambient");
  while (true) {
    fpm::Mat m(d, fpm::Row(f.degree(), 0));
    for (auto& row : m)
      for (auto& c : row) c = static_cast<uint32_t>(rng.below(f.p()));
    if (fpm::rank(m, f.p()) == d) return Subspace::from_rows(f, std::move(m));
  }
}

}  // namespace matchfield
