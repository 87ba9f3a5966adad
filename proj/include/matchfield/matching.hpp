#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "matchfield/subspace.hpp"

// Matchings between equal-dimensional subspaces A, B of L = F_{p^k}.
// An ordered basis a_1..a_n of A is matched to an ordered basis b_1..b_n of B
// when, for every i, every x in B with a_i x in A lies in the hyperplane of B
// spanned by the b_j, j != i. Equivalently: a_i b_i stays outside A in a
// strong, index-aligned way. The constructive route runs through annihilators
// in B* and a free transversal; the decision route is the subset-dimension
// criterion. Both return checkable certificates.

namespace matchfield {

struct MatchCertificate {
  Basis source;
  Basis target;
  bool verified = false;  // set after the definition-level recheck
};

// A subset J of source indices (0-based) whose common back-division space
// V_J = meet_{i in J} {x in B : a_i x in A} is too big: dim V_J > n - |J|.
struct ViolationCertificate {
  std::vector<size_t> subset;
  unsigned violation_dim = 0;
  unsigned bound = 0;
};

using MatchOutcome = std::variant<MatchCertificate, ViolationCertificate>;

inline bool matched(const MatchOutcome& o) {
  return std::holds_alternative<MatchCertificate>(o);
}

// Definition-level check: src and tgt are bases of A and B, dim A = dim B.
bool is_matched(const Basis& src, const Basis& tgt);

// Decides matchability of src against B by scanning all subsets J of the
// source indices. Returns the first violating J ordered by size then
// lexicographically, or nullopt when every subset passes (in which case a
// matching exists). The 2^n scan refuses to run for n > subset_cap.
std::optional<ViolationCertificate> dim_criterion(const Basis& src,
                                                  const Subspace& B,
                                                  unsigned subset_cap = 20);

// Constructs a matched target basis or returns a violation certificate.
// Success certificates are re-verified through is_matched before returning.
MatchOutcome match_basis(const Basis& src, const Subspace& B);

// match_basis specialized to A = B (requires src to span B).
MatchOutcome automatch(const Subspace& B, const Basis& src);

// ----- free transversals ---------------------------------------------------

struct TransversalSuccess {
  std::vector<fpm::Row> vectors;  // vectors[i] in family[i], jointly independent
};
struct TransversalViolation {
  std::vector<size_t> subset;  // J with dim(sum_{i in J} E_i) < |J|
};
using TransversalResult = std::variant<TransversalSuccess, TransversalViolation>;

// Picks one vector from each subspace so that the picks are linearly
// independent, or surfaces a subset J certifying impossibility. Runs matroid
// intersection (linear matroid vs. the partition by family index) with
// shortest augmenting paths; polynomial in family size and ambient dimension.
TransversalResult free_transversal(const std::vector<fpm::CoordSubspace>& family);

// ----- whole-space verdicts ------------------------------------------------

enum class MatchVerdict { matched, not_matched, inconclusive };

struct SpaceMatchedResult {
  MatchVerdict verdict;
  std::optional<Basis> witness;  // an unmatchable source basis, when found
  uint64_t bases_checked = 0;
};

struct ExhaustiveMode {
  uint64_t cap = kDefaultEnumCap;
};
struct SampledMode {
  uint64_t count = 100;
  uint64_t seed = 0;
};

// Exhaustive mode settles the question; sampled mode can only refute
// (not_matched) or stay inconclusive.
SpaceMatchedResult space_matched(const Subspace& A, const Subspace& B,
                                 const ExhaustiveMode& mode);
SpaceMatchedResult space_matched(const Subspace& A, const Subspace& B,
                                 const SampledMode& mode);

// ----- field-level structure ----------------------------------------------

// Whether every eligible pair (A, B) in this field is matchable: true exactly
// when the field has no proper intermediate extension, i.e. k = 1 or k prime.
bool matching_property_prediction(const ExtensionField& field);

// For composite k, a concrete unmatchable triple: A the subfield of degree
// n0(k) generated by some a, source basis 1, a, ..., a^(n-1), and B obtained
// from A by swapping 1 out for an element x outside A. The returned triple
// fails dim_criterion on J = {all indices}. nullopt when k is 1 or prime.
struct NonMatchableWitness {
  Subspace A;
  Subspace B;
  Basis source;
};
std::optional<NonMatchableWitness> non_matchable_witness(
    const ExtensionField& field);

// True when n < n0(field): any n-dimensional pair with 1 outside B is
// matchable regardless of k being composite.
bool refined_guarantee(const ExtensionField& field, unsigned n);

// ----- strong matchings ----------------------------------------------------

// A strong matching A -> B sends every basis of A to a matched basis of B.
// One exists iff no nonzero a in A back-divides a nonzero part of B, i.e.
// the set of products {ab} meets A only in 0; then every isomorphism works.
bool strong_matching_exists(const Subspace& A, const Subspace& B,
                            uint64_t cap = kDefaultEnumCap);

// Checks a specific coordinate isomorphism phi (dim x dim matrix mapping
// coordinates against A's echelon basis to coordinates against B's): for
// every nonzero a in A and every hyperplane H of A complementary to a,
// back_division(a, A, B) must land inside phi(H).
bool is_strong_matching(const fpm::Mat& phi, const Subspace& A,
                        const Subspace& B, uint64_t cap = kDefaultEnumCap);

// ----- additive-theory cross-checks ----------------------------------------

enum class KempermanStatus { holds, hypotheses_not_met };

// For K = span{1} inside both A and B, takes the canonical complements with
// vanishing 1-coordinate and tests K meet (Abar + Bbar + <Abar Bbar>) = 0.
// When that hypothesis holds, dim<AB> >= dim A + dim B - 1 must follow; a
// failure of the inequality under met hypotheses throws (invariant breach).
KempermanStatus kemperman_check(const Subspace& A, const Subspace& B);

// Prime-degree fields only: dim<AB> >= min(k, dim A + dim B - 1).
bool olson_consequence_check(const Subspace& A, const Subspace& B);

}  // namespace matchfield
