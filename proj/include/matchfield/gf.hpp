#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "matchfield/fp_matrix.hpp"

// Exact arithmetic in the extension F_p[t]/(f) of a prime field F_p, with f a
// monic irreducible of degree k. Elements are coefficient vectors of length k,
// constant term first. The same constant-term-first order is used for the
// modulus (length k+1) and for all serialized coefficient lists.

namespace matchfield {

class FieldElement;

class ExtensionField {
 public:
  // Builds F_{p^k} with an explicit modulus (validated: monic, irreducible,
  // coefficients in [0,p)) or, without one, with the smallest monic
  // irreducible of degree k, candidates ordered by ascending value of
  // sum(c_i p^i) over the non-leading coefficients. k = 1 is legal and picks
  // the modulus t, i.e. the prime field itself. Requires p prime and
  // p^k <= 2^32.
  static ExtensionField make(uint64_t p, unsigned k);
  static ExtensionField make(uint64_t p, unsigned k, fpm::Row modulus);

  uint64_t p() const { return data_->p; }
  unsigned degree() const { return data_->k; }
  const fpm::Row& modulus() const { return data_->modulus; }
  uint64_t size() const { return data_->size; }  // p^k

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement gen() const;  // the class of t
  FieldElement element(fpm::Row coeffs) const;
  // Element whose coefficient of t^i is the i-th base-p digit of index.
  FieldElement from_index(uint64_t index) const;

  bool operator==(const ExtensionField& o) const {
    return data_ == o.data_ ||
           (data_->p == o.data_->p && data_->modulus == o.data_->modulus);
  }
  bool operator!=(const ExtensionField& o) const { return !(*this == o); }

  std::string name() const;  // e.g. "F_{2^4}"

 private:
  struct Data {
    uint64_t p;
    unsigned k;
    fpm::Row modulus;
    uint64_t size;
  };
  explicit ExtensionField(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
  friend class FieldElement;
};

class FieldElement {
 public:
  FieldElement(ExtensionField field, fpm::Row coeffs);

  const ExtensionField& field() const { return field_; }
  const fpm::Row& coeffs() const { return coeffs_; }
  bool is_zero() const { return fpm::is_zero(coeffs_); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement pow(uint64_t e) const;
  FieldElement inv() const;             // error on zero
  FieldElement frobenius(unsigned d = 1) const;  // x^(p^d)
  uint64_t index() const;               // sum of coeff_i p^i

 private:
  ExtensionField field_;
  fpm::Row coeffs_;
};

// Smallest d dividing k with x^(p^d) = x: the degree of F_p(x) over F_p.
unsigned element_degree(const FieldElement& x);

// Smallest divisor of k exceeding 1; nullopt (read: infinity) when k = 1.
// This is the degree of the smallest proper intermediate extension, counting
// the field itself.
std::optional<unsigned> n0(const ExtensionField& field);

// Spelled-out constructors mirroring the operation names used elsewhere.
ExtensionField make_field(uint64_t p, unsigned k);
ExtensionField make_field(uint64_t p, unsigned k, fpm::Row modulus);

bool is_prime(uint64_t n);

}  // namespace matchfield
