#include "matchfield/gf.hpp"

#include <cassert>
#include <stdexcept>

namespace matchfield {

namespace {

constexpr uint64_t kMaxFieldSize = uint64_t(1) << 32;

// p^k with the global size cap enforced.
uint64_t checked_pow(uint64_t p, unsigned k) {
  uint64_t v = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (v > kMaxFieldSize / p)
      throw std::invalid_argument("field size p^k exceeds 2^32");
    v *= p;
  }
  return v;
}

// Remainder of a mod b over F_p, both constant term first, b nonzero.
fpm::Row poly_mod(fpm::Row a, const fpm::Row& b, uint64_t p) {
  size_t db = b.size();
  while (db > 0 && b[db - 1] == 0) --db;
  assert(db > 0);
  uint32_t lead_inv = fpm::inv_mod(b[db - 1], p);
  for (size_t i = a.size(); i >= db; --i) {
    uint32_t c = a[i - 1];
    if (c == 0) continue;
    uint32_t q = fpm::mul_mod(c, lead_inv, p);
    size_t shift = i - db;
    for (size_t j = 0; j < db; ++j)
      a[shift + j] = fpm::sub_mod(a[shift + j], fpm::mul_mod(q, b[j], p), p);
    assert(a[i - 1] == 0);
  }
  a.resize(db - 1, 0);
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool is_irreducible(const fpm::Row& f, uint64_t p) {
  const unsigned deg = static_cast<unsigned>(f.size()) - 1;
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
      fpm::Row g(d + 1, 0);
      uint64_t v = idx;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<uint32_t>(v % p);
        v /= p;
      }
      g[d] = 1;
      if (fpm::is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

ExtensionField ExtensionField::make(uint64_t p, unsigned k, fpm::Row modulus) {
  if (!is_prime(p)) throw std::invalid_argument("p is not prime");
  if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
  uint64_t size = checked_pow(p, k);
  if (modulus.size() != k + 1)
    throw std::invalid_argument("modulus must have k+1 coefficients");
  for (uint32_t c : modulus)
    if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  if (modulus[k] != 1) throw std::invalid_argument("modulus must be monic");
  if (!is_irreducible(modulus, p))
    throw std::invalid_argument("modulus is reducible");
  auto data = std::make_shared<const Data>(Data{p, k, std::move(modulus), size});
  return ExtensionField(std::move(data));
}

ExtensionField ExtensionField::make(uint64_t p, unsigned k) {
  if (!is_prime(p)) throw std::invalid_argument("p is not prime");
  if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
  uint64_t count = checked_pow(p, k);
  for (uint64_t idx = 0; idx < count; ++idx) {
    fpm::Row f(k + 1, 0);
    uint64_t v = idx;
    for (unsigned i = 0; i < k; ++i) {
      f[i] = static_cast<uint32_t>(v % p);
      v /= p;
    }
    f[k] = 1;
    if (is_irreducible(f, p)) return make(p, k, std::move(f));
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

FieldElement ExtensionField::zero() const {
  return FieldElement(*this, fpm::Row(degree(), 0));
}

FieldElement ExtensionField::one() const {
  fpm::Row c(degree(), 0);
  c[0] = 1;
  return FieldElement(*this, std::move(c));
}

FieldElement ExtensionField::gen() const {
  if (degree() == 1) return zero();  // t is 0 in F_p[t]/(t)
  fpm::Row c(degree(), 0);
  c[1] = 1;
  return FieldElement(*this, std::move(c));
}

FieldElement ExtensionField::element(fpm::Row coeffs) const {
  return FieldElement(*this, std::move(coeffs));
}

FieldElement ExtensionField::from_index(uint64_t index) const {
  if (index >= size()) throw std::invalid_argument("element index out of range");
  fpm::Row c(degree(), 0);
  for (unsigned i = 0; i < degree(); ++i) {
    c[i] = static_cast<uint32_t>(index % p());
    index /= p();
  }
  return FieldElement(*this, std::move(c));
}

std::string ExtensionField::name() const {
  if (degree() == 1) return "F_" + std::to_string(p());
  return "F_{" + std::to_string(p()) + "^" + std::to_string(degree()) + "}";
}

FieldElement::FieldElement(ExtensionField field, fpm::Row coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != field_.degree())
    throw std::invalid_argument("coefficient vector has wrong length");
  for (uint32_t c : coeffs_)
    if (c >= field_.p())
      throw std::invalid_argument("coefficient out of range");
}

static void check_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field())
    throw std::invalid_argument("elements of different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_field(*this, o);
  fpm::Row c(coeffs_);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = fpm::add_mod(c[i], o.coeffs_[i], field_.p());
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same_field(*this, o);
  fpm::Row c(coeffs_);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = fpm::sub_mod(c[i], o.coeffs_[i], field_.p());
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  fpm::Row c(coeffs_);
  for (auto& x : c) x = fpm::neg_mod(x, field_.p());
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_field(*this, o);
  const uint64_t p = field_.p();
  const unsigned k = field_.degree();
  const fpm::Row& m = field_.modulus();
  // schoolbook product, then reduce t^i -> t^(i-k) * (-tail of the modulus)
  std::vector<uint32_t> prod(2 * k - 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    if (coeffs_[i] == 0) continue;
    for (unsigned j = 0; j < k; ++j) {
      if (o.coeffs_[j] == 0) continue;
      prod[i + j] = fpm::add_mod(prod[i + j],
                                 fpm::mul_mod(coeffs_[i], o.coeffs_[j], p), p);
    }
  }
  for (unsigned i = 2 * k - 2; i >= k; --i) {
    uint32_t c = prod[i];
    if (c != 0) {
      prod[i] = 0;
      for (unsigned j = 0; j < k; ++j)
        prod[i - k + j] =
            fpm::sub_mod(prod[i - k + j], fpm::mul_mod(c, m[j], p), p);
    }
  }
  prod.resize(k);
  return FieldElement(field_, std::move(prod));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  return *this * o.inv();
}

bool FieldElement::operator==(const FieldElement& o) const {
  return field_ == o.field_ && coeffs_ == o.coeffs_;
}

FieldElement FieldElement::pow(uint64_t e) const {
  FieldElement acc = field_.one();
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

FieldElement FieldElement::inv() const {
  if (is_zero()) throw std::invalid_argument("zero has no inverse");
  return pow(field_.size() - 2);  // x^(p^k - 2) = x^-1 in F_{p^k}
}

FieldElement FieldElement::frobenius(unsigned d) const {
  FieldElement x = *this;
  for (unsigned i = 0; i < d; ++i) x = x.pow(field_.p());
  return x;
}

uint64_t FieldElement::index() const {
  uint64_t v = 0;
  for (size_t i = coeffs_.size(); i-- > 0;) v = v * field_.p() + coeffs_[i];
  return v;
}

unsigned element_degree(const FieldElement& x) {
  const unsigned k = x.field().degree();
  for (unsigned d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    if (x.frobenius(d) == x) return d;
  }
  throw std::logic_error("element fixed by no Frobenius power");  // unreachable
}

std::optional<unsigned> n0(const ExtensionField& field) {
  const unsigned k = field.degree();
  if (k == 1) return std::nullopt;
  for (unsigned d = 2; d <= k; ++d)
    if (k % d == 0) return d;
  return std::nullopt;  // unreachable
}

ExtensionField make_field(uint64_t p, unsigned k) {
  return ExtensionField::make(p, k);
}

ExtensionField make_field(uint64_t p, unsigned k, fpm::Row modulus) {
  return ExtensionField::make(p, k, std::move(modulus));
}

}  // namespace matchfield
