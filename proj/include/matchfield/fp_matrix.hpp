#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Exact dense linear algebra over a prime field F_p. Rows store coefficients
// as uint32_t values in [0, p); intermediates widen to uint64_t, which is
// safe for any p < 2^32.

namespace matchfield::fpm {

using Row = std::vector<uint32_t>;
using Mat = std::vector<Row>;

uint32_t add_mod(uint32_t a, uint32_t b, uint64_t p);
uint32_t sub_mod(uint32_t a, uint32_t b, uint64_t p);
uint32_t mul_mod(uint32_t a, uint32_t b, uint64_t p);
uint32_t neg_mod(uint32_t a, uint64_t p);
uint32_t inv_mod(uint32_t a, uint64_t p);

bool is_zero(const Row& v);

// In-place reduced row echelon form: pivots are 1, pivot columns are cleared
// everywhere else, pivot columns strictly increase, zero rows are dropped.
// Returns the pivot column of each surviving row. This is the canonical form
// used for subspace identity.
std::vector<unsigned> rref_in_place(Mat& m, uint64_t p);
Mat rref(Mat m, uint64_t p);
unsigned rank(Mat m, uint64_t p);

// Reduces v against an RREF matrix and returns the remainder. v lies in the
// row space iff the remainder is zero, in which case *coords (when non-null)
// holds the coefficient taken against each row.
Row reduce(const Mat& rr, const std::vector<unsigned>& pivots, Row v,
           uint64_t p, Row* coords = nullptr);

// Basis of {x : m x = 0}, x a column vector of length cols. One basis vector
// per free column, in ascending free-column order.
Mat nullspace(Mat m, unsigned cols, uint64_t p);

// Inverse of a square matrix, or nullopt when singular.
std::optional<Mat> inverse(Mat m, uint64_t p);

Mat transpose(const Mat& m, unsigned cols);
Mat mat_mul(const Mat& a, const Mat& b, uint64_t p);
Row mat_vec(const Mat& a, const Row& x, uint64_t p);
uint32_t dot(const Row& a, const Row& b, uint64_t p);

// A subspace of the plain coordinate space F_p^ambient, kept in RREF.
struct CoordSubspace {
  uint64_t p = 0;
  unsigned ambient = 0;
  Mat rows;
  std::vector<unsigned> pivots;

  unsigned dim() const { return static_cast<unsigned>(rows.size()); }
  bool contains(const Row& v) const;
  bool operator==(const CoordSubspace& o) const {
    return p == o.p && ambient == o.ambient && rows == o.rows;
  }
};

CoordSubspace coord_span(uint64_t p, unsigned ambient, Mat generators);
CoordSubspace coord_sum(const CoordSubspace& a, const CoordSubspace& b);
CoordSubspace coord_intersect(const CoordSubspace& a, const CoordSubspace& b);

}  // namespace matchfield::fpm
