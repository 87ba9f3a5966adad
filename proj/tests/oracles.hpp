#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "matchfield/fp_matrix.hpp"
#include "matchfield/matching.hpp"
#include "matchfield/subspace.hpp"

// Test-only reference implementations that settle questions by brute
// enumeration instead of linear algebra, so the library and the oracle can
// only agree by being right.

namespace oracles {

using matchfield::Basis;
using matchfield::ExtensionField;
using matchfield::FieldElement;
using matchfield::Subspace;

// Every element of s as a sorted list of field-element indices.
inline std::vector<uint64_t> element_indices(const Subspace& s) {
  std::vector<uint64_t> out;
  for (uint64_t i = 0; i < s.element_count(); ++i)
    out.push_back(s.element_at(i).index());
  std::sort(out.begin(), out.end());
  return out;
}

// A meet B by raw element intersection.
inline std::vector<uint64_t> intersect_elements(const Subspace& a,
                                                const Subspace& b) {
  std::vector<uint64_t> ea = element_indices(a), eb = element_indices(b), out;
  std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(),
                        std::back_inserter(out));
  return out;
}

// {x in B : a*x in A} by scanning every element of B.
inline std::vector<uint64_t> back_division_elements(const FieldElement& a,
                                                    const Subspace& A,
                                                    const Subspace& B) {
  std::vector<uint64_t> out;
  for (uint64_t i = 0; i < B.element_count(); ++i) {
    FieldElement x = B.element_at(i);
    if (A.contains(a * x)) out.push_back(x.index());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Multiplicative inverse by scanning the whole field.
inline std::optional<FieldElement> find_inverse(const FieldElement& x) {
  const ExtensionField& f = x.field();
  for (uint64_t i = 1; i < f.size(); ++i) {
    FieldElement y = f.from_index(i);
    if ((x * y) == f.one()) return y;
  }
  return std::nullopt;
}

// Matched-basis definition checked with element sets only: for each i, every
// x in B with a_i*x in A must be an F_p-combination of the b_j, j != i.
inline bool is_matched_by_enumeration(const Basis& src, const Basis& tgt) {
  const Subspace& A = src.parent();
  const Subspace& B = tgt.parent();
  size_t n = src.size();
  uint64_t p = A.field().p();
  for (size_t i = 0; i < n; ++i) {
    std::set<uint64_t> hyperplane;
    uint64_t combos = 1;
    for (size_t j = 0; j + 1 < n; ++j) combos *= p;
    for (uint64_t code = 0; code < combos; ++code) {
      FieldElement acc = A.field().zero();
      uint64_t c = code;
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        uint64_t digit = c % p;
        c /= p;
        for (uint64_t r = 0; r < digit; ++r) acc = acc + tgt[j];
      }
      hyperplane.insert(acc.index());
    }
    for (uint64_t e = 0; e < B.element_count(); ++e) {
      FieldElement x = B.element_at(e);
      if (A.contains(src[i] * x) && !hyperplane.count(x.index())) return false;
    }
  }
  return true;
}

// Gaussian binomial by the Pascal-style recurrence
// [k d]_p = [k-1 d-1]_p + p^d [k-1 d]_p, saturating at uint64 max.
inline uint64_t gaussian_by_recurrence(unsigned k, unsigned d, uint64_t p) {
  constexpr uint64_t kMax = UINT64_MAX;
  auto sat_mul = [](uint64_t a, uint64_t b) {
    if (a != 0 && b > kMax / a) return kMax;
    return a * b;
  };
  auto sat_add = [](uint64_t a, uint64_t b) {
    return a > kMax - b ? kMax : a + b;
  };
  if (d > k) return 0;
  std::vector<uint64_t> row(d + 1, 0);
  row[0] = 1;  // [0 0]_p
  for (unsigned kk = 1; kk <= k; ++kk) {
    for (unsigned dd = std::min(kk, d); dd >= 1; --dd) {
      uint64_t pd = 1;
      for (unsigned i = 0; i < dd; ++i) pd = sat_mul(pd, p);
      row[dd] = sat_add(row[dd - 1], sat_mul(pd, row[dd]));
    }
  }
  return row[d];
}

// Whether some tuple (x_1..x_n), x_i a nonzero element of family[i], is
// linearly independent — by trying every tuple.
inline bool transversal_exists_by_enumeration(
    const std::vector<matchfield::fpm::CoordSubspace>& family, uint64_t p) {
  size_t n = family.size();
  if (n == 0) return true;
  std::vector<uint64_t> counts;
  for (const auto& e : family) {
    uint64_t c = 1;
    for (unsigned i = 0; i < e.dim(); ++i) c *= p;
    counts.push_back(c);  // includes the zero vector; skipped below
  }
  std::vector<uint64_t> pick(n, 0);
  while (true) {
    bool any_zero = false;
    matchfield::fpm::Mat rows;
    for (size_t i = 0; i < n; ++i) {
      if (pick[i] == 0) {
        any_zero = true;
        break;
      }
      // Element number pick[i]: base-p digits weight the echelon rows.
      matchfield::fpm::Row v(family[i].ambient, 0);
      uint64_t code = pick[i];
      for (const auto& row : family[i].rows) {
        uint64_t digit = code % p;
        code /= p;
        for (size_t c = 0; c < v.size(); ++c)
          v[c] = matchfield::fpm::add_mod(
              v[c], matchfield::fpm::mul_mod(static_cast<uint32_t>(digit),
                                             row[c], p),
              p);
      }
      rows.push_back(std::move(v));
    }
    if (!any_zero) {
      matchfield::fpm::Mat copy = rows;
      if (matchfield::fpm::rref_in_place(copy, p).size() == n) return true;
    }
    size_t level = 0;
    while (level < n && ++pick[level] >= counts[level]) pick[level++] = 0;
    if (level == n) return false;
  }
}

}  // namespace oracles
