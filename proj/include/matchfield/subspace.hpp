#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matchfield/fp_matrix.hpp"
#include "matchfield/gf.hpp"
#include "matchfield/guard.hpp"
#include "matchfield/rng.hpp"

// F_p-subspaces of an extension field L = F_{p^k}, viewed as coordinate
// vectors over the power basis 1, t, ..., t^(k-1). Every subspace is stored
// in reduced row echelon form, so equal subspaces compare bit-identical.

namespace matchfield {

class Subspace {
 public:
  static Subspace zero(const ExtensionField& f);
  static Subspace full(const ExtensionField& f);
  static Subspace from_rows(const ExtensionField& f, fpm::Mat generators);

  const ExtensionField& field() const { return field_; }
  unsigned dim() const { return static_cast<unsigned>(rows_.size()); }
  unsigned ambient() const { return field_.degree(); }
  const fpm::Mat& rows() const { return rows_; }
  const std::vector<unsigned>& pivots() const { return pivots_; }
  fpm::CoordSubspace coords() const;

  // The echelon rows as field elements; the canonical basis of the subspace.
  std::vector<FieldElement> basis_elements() const;

  bool contains(const FieldElement& x) const;
  bool contains_subspace(const Subspace& other) const;
  bool contains_one() const;

  // Coefficients against the echelon rows, or nullopt if x lies outside.
  std::optional<fpm::Row> coordinates_of(const FieldElement& x) const;

  uint64_t element_count() const;  // p^dim
  // Element sum(digit_i(index) * row_i), digits base p, least significant
  // digit weighting row 0. Enumerates each element exactly once for
  // index < element_count().
  FieldElement element_at(uint64_t index) const;

  bool operator==(const Subspace& o) const {
    return field_ == o.field_ && rows_ == o.rows_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  Subspace(ExtensionField f, fpm::Mat rref_rows, std::vector<unsigned> pivots);
  ExtensionField field_;
  fpm::Mat rows_;
  std::vector<unsigned> pivots_;
};

Subspace span(const ExtensionField& f, const std::vector<FieldElement>& gens);
Subspace span(const std::vector<FieldElement>& gens);  // must be nonempty
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

// {a*x : x in s}; a must be nonzero.
Subspace scale_left(const FieldElement& a, const Subspace& s);

// {x in B : a*x in A} = a^-1 A meet B, computed by linear algebra.
Subspace back_division(const FieldElement& a, const Subspace& A,
                       const Subspace& B);

// Span of all pairwise products of basis elements: the subspace <AB>.
Subspace product_span(const Subspace& a, const Subspace& b);

inline bool contains_one(const Subspace& s) { return s.contains_one(); }

// An ordered basis of its parent subspace; independence is validated on
// construction.
class Basis {
 public:
  static Basis of(std::vector<FieldElement> elements);
  static Basis canonical(const Subspace& s);  // the echelon rows, in order

  size_t size() const { return elements_.size(); }
  const FieldElement& operator[](size_t i) const { return elements_[i]; }
  const std::vector<FieldElement>& elements() const { return elements_; }
  const Subspace& parent() const { return parent_; }

  bool operator==(const Basis& o) const { return elements_ == o.elements_; }

 private:
  Basis(std::vector<FieldElement> elements, Subspace parent);
  std::vector<FieldElement> elements_;
  Subspace parent_;
};

// Span of every basis element except index i (0-based).
Subspace hyperplane_omitting(const Basis& basis, size_t i);

// A linear functional on a subspace, expressed by its weights against a
// chosen reference basis: f(x) = dot(weights, coords of x).
struct DualFunctional {
  fpm::Row weights;
  uint32_t apply(const fpm::Row& coords, uint64_t p) const {
    return fpm::dot(weights, coords, p);
  }
};

// Basis of {f in B* : f|C = 0} for C a subspace of B, functionals expressed
// against ref. Yields exactly dim B - dim C functionals.
std::vector<DualFunctional> annihilator(const Subspace& C, const Subspace& B,
                                        const Basis& ref);

// Given n independent functionals on B (dim B = n), the unique basis
// b_1..b_n of B with f_i(b_j) = delta_ij.
Basis dual_basis_to_primal(const std::vector<DualFunctional>& functionals,
                           const Subspace& B, const Basis& ref);

// The fixed field of x -> x^(p^d) as a subspace: the copy of F_{p^d} inside
// F_{p^k}. Requires d | k.
struct SubfieldDescriptor {
  unsigned degree;
  Subspace space;
};
SubfieldDescriptor subfield(const ExtensionField& f, unsigned d);

// Number of d-dimensional subspaces of F_p^k.
uint64_t gaussian_binomial(unsigned k, unsigned d, uint64_t p);

// |GL_n(F_p)|, or nullopt on uint64 overflow.
std::optional<uint64_t> gl_order(unsigned n, uint64_t p);

// Streams every d-dimensional subspace exactly once: pivot column sets in
// lexicographic order, then free entries in ascending base-p odometer order.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(const ExtensionField& f, unsigned d);
  std::optional<Subspace> next();
  uint64_t total() const { return total_; }

 private:
  ExtensionField field_;
  unsigned d_;
  uint64_t total_;
  std::vector<unsigned> pivot_cols_;
  std::vector<std::pair<unsigned, unsigned>> free_pos_;  // (row, col)
  std::vector<uint32_t> free_vals_;
  bool exhausted_ = false;
  bool fresh_combo_ = true;

  bool advance_combo();
  Subspace build() const;
};

// Streams every ordered basis of s exactly once: coefficient matrices against
// the echelon rows, rows enumerated by ascending base-p encoding (coefficient
// of row 0 least significant), dependent prefixes skipped.
class BasisEnumerator {
 public:
  explicit BasisEnumerator(const Subspace& s);
  std::optional<Basis> next();
  std::optional<uint64_t> total() const;  // |GL_dim(F_p)|

 private:
  Subspace space_;
  std::vector<uint64_t> codes_;
  bool exhausted_ = false;
  bool started_ = false;

  bool descend(size_t level);
  bool advance(size_t level);
};

std::vector<Subspace> all_subspaces(const ExtensionField& f, unsigned d,
                                    uint64_t cap = kDefaultEnumCap);
std::vector<Basis> all_bases(const Subspace& s,
                             uint64_t cap = kDefaultEnumCap);

// Seeded random draws (uniform over the relevant sets by rejection).
Subspace random_subspace(const ExtensionField& f, unsigned d, Rng& rng);
Basis random_basis(const Subspace& s, Rng& rng);
fpm::Mat random_invertible_matrix(unsigned n, uint64_t p, Rng& rng);

}  // namespace matchfield
