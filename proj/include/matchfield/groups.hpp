#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matchfield/guard.hpp"

// Matchings between finite subsets of abelian groups, written additively:
// a bijection f: A -> B with a + f(a) outside A for every a in A. Supported
// groups: Z_n (cyclic) and Z^d (free abelian), elements as int64 tuples.

namespace matchfield::groups {

struct GroupDescriptor {
  enum class Kind { cyclic, free_abelian };
  Kind kind;
  unsigned param;  // modulus n for cyclic, rank d for free abelian

  static GroupDescriptor cyclic(unsigned n);
  static GroupDescriptor free_abelian(unsigned d);
  std::string name() const;  // "Z4", "Z^2"
};

using GroupElement = std::vector<int64_t>;

GroupElement identity(const GroupDescriptor& g);
GroupElement add(const GroupDescriptor& g, const GroupElement& a,
                 const GroupElement& b);

// Sorted, duplicate-free subset; canonical order is lexicographic.
struct GroupSubset {
  std::vector<GroupElement> elements;

  static GroupSubset of(const GroupDescriptor& g,
                        std::vector<GroupElement> elements);
  size_t size() const { return elements.size(); }
  bool contains(const GroupElement& e) const;
};

struct GroupMatchingResult {
  // bijection[i] = index into B matched with A.elements[i]; nullopt when no
  // perfect matching exists.
  std::optional<std::vector<size_t>> bijection;
  // On failure: indices into A of a set with fewer eligible partners than
  // members (a Hall violator).
  std::vector<size_t> deficient;
};

// Maximum bipartite matching with edge (a, b) iff a + b is outside A,
// deterministic over the sorted subsets.
GroupMatchingResult find_matching(const GroupSubset& A, const GroupSubset& B,
                                  const GroupDescriptor& g);

struct ScanCounterexample {
  GroupSubset A;
  GroupSubset B;
};

struct ScanReport {
  uint64_t pairs_scanned = 0;
  uint64_t matched = 0;
  std::optional<ScanCounterexample> counterexample;  // first, by size then lex
  uint64_t b2b_checked = 0;
  uint64_t b2b_failures = 0;  // B-to-B matchings that unexpectedly failed
};

// Scans every pair (A, B) with |A| = |B| <= max_size and identity outside B,
// and separately every B-to-B self matching. Enumerable groups only (cyclic);
// free abelian groups refuse.
ScanReport matching_property_scan(const GroupDescriptor& g, unsigned max_size,
                                  uint64_t cap = kDefaultEnumCap);

}  // namespace matchfield::groups
