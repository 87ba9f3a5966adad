#include "matchfield/matching.hpp"

#include <cassert>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace matchfield {

namespace {

void check_pair(const Subspace& A, const Subspace& B) {
  if (A.field() != B.field())
    throw std::invalid_argument("subspaces live in different fields");
  if (A.dim() != B.dim())
    throw std::invalid_argument("subspaces have different dimensions");
}

// C_i = {x in B : src_i * x in A}, the spaces every matched target basis has
// to tuck into its hyperplanes.
std::vector<Subspace> preimages(const Basis& src, const Subspace& B) {
  const Subspace& A = src.parent();
  std::vector<Subspace> C;
  C.reserve(src.size());
  for (size_t i = 0; i < src.size(); ++i)
    C.push_back(back_division(src[i], A, B));
  return C;
}

bool matched_with(const std::vector<Subspace>& C, const Basis& tgt) {
  for (size_t i = 0; i < tgt.size(); ++i)
    if (!hyperplane_omitting(tgt, i).contains_subspace(C[i])) return false;
  return true;
}

// Lexicographically next s-combination of {0..n-1}; false when exhausted.
bool next_combination(std::vector<size_t>& c, size_t n) {
  const size_t s = c.size();
  for (size_t i = s; i-- > 0;) {
    if (c[i] < n - s + i) {
      ++c[i];
      for (size_t j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Subspace intersect_over(const std::vector<Subspace>& C,
                        const std::vector<size_t>& J) {
  assert(!J.empty());
  Subspace V = C[J[0]];
  for (size_t t = 1; t < J.size() && V.dim() > 0; ++t)
    V = intersect(V, C[J[t]]);
  return V;
}

}  // namespace

bool is_matched(const Basis& src, const Basis& tgt) {
  check_pair(src.parent(), tgt.parent());
  return matched_with(preimages(src, tgt.parent()), tgt);
}

std::optional<ViolationCertificate> dim_criterion(const Basis& src,
                                                  const Subspace& B,
                                                  unsigned subset_cap) {
  check_pair(src.parent(), B);
  const size_t n = src.size();
  if (n > subset_cap)
    throw GuardExceeded("dim_criterion: 2^n subset scan over n = " +
                        std::to_string(n) + " refused (cap " +
                        std::to_string(subset_cap) + ")");
  auto C = preimages(src, B);
  // The empty J always passes (dim B = n <= n - 0); scan sizes 1..n in
  // lexicographic order within each size.
  for (size_t s = 1; s <= n; ++s) {
    std::vector<size_t> J(s);
    std::iota(J.begin(), J.end(), 0);
    do {
      Subspace V = intersect_over(C, J);
      if (V.dim() > n - s)
        return ViolationCertificate{J, V.dim(),
                                    static_cast<unsigned>(n - s)};
    } while (next_combination(J, n));
  }
  return std::nullopt;
}

// ----- free transversal via matroid intersection ----------------------------

namespace {

struct Ground {
  size_t group;
  fpm::Row vec;
};

}  // namespace

TransversalResult free_transversal(
    const std::vector<fpm::CoordSubspace>& family) {
  const size_t n = family.size();
  if (n == 0) return TransversalSuccess{};
  const uint64_t p = family[0].p;
  const unsigned m = family[0].ambient;
  for (const auto& e : family)
    if (e.p != p || e.ambient != m)
      throw std::invalid_argument("family members live in different spaces");

  std::vector<Ground> S;
  std::vector<std::vector<size_t>> group_nodes(n);
  for (size_t i = 0; i < n; ++i)
    for (const auto& r : family[i].rows) {
      group_nodes[i].push_back(S.size());
      S.push_back(Ground{i, r});
    }

  std::vector<bool> in_I(S.size(), false);
  std::vector<std::optional<size_t>> occupant(n);

  // One round per augmentation; I grows by one each time or we stop.
  while (true) {
    std::vector<size_t> I;
    for (size_t v = 0; v < S.size(); ++v)
      if (in_I[v]) I.push_back(v);
    if (I.size() == n) break;

    const size_t t = I.size();
    // [chosen | identity]: rref tracks how reduced rows combine the chosen
    // vectors, so each outside node gets its representation over I.
    fpm::Mat aug;
    aug.reserve(t);
    for (size_t j = 0; j < t; ++j) {
      fpm::Row r = S[I[j]].vec;
      r.resize(m + t, 0);
      r[m + j] = 1;
      aug.push_back(std::move(r));
    }
    auto augpiv = fpm::rref_in_place(aug, p);
    for (unsigned c : augpiv) assert(c < m);  // chosen vectors independent

    // circuits[v] for outside nodes inside span(I): chosen indices (into I)
    // appearing in v's representation. X1: outside nodes independent of I.
    std::vector<char> is_x1(S.size(), 0);
    std::vector<std::vector<size_t>> circuit(S.size());
    for (size_t v = 0; v < S.size(); ++v) {
      if (in_I[v]) continue;
      fpm::Row ext = S[v].vec;
      ext.resize(m + t, 0);
      fpm::Row rem = fpm::reduce(aug, augpiv, ext, p);
      bool dep = true;
      for (unsigned c = 0; c < m; ++c)
        if (rem[c] != 0) {
          dep = false;
          break;
        }
      if (!dep) {
        is_x1[v] = 1;
        continue;
      }
      for (size_t j = 0; j < t; ++j)
        if (rem[m + j] != 0) circuit[v].push_back(j);
    }

    // Shortest alternating path from X1 to X2 (free-group outside nodes).
    constexpr size_t kUnset = SIZE_MAX;
    std::vector<size_t> parent(S.size(), kUnset);
    std::vector<char> seen(S.size(), 0);
    std::deque<size_t> queue;
    for (size_t v = 0; v < S.size(); ++v)
      if (!in_I[v] && is_x1[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    // in-node -> outside nodes whose circuit contains it
    std::vector<std::vector<size_t>> leaves(t);
    for (size_t v = 0; v < S.size(); ++v)
      if (!in_I[v])
        for (size_t j : circuit[v]) leaves[j].push_back(v);
    std::vector<size_t> index_in_I(S.size(), kUnset);
    for (size_t j = 0; j < t; ++j) index_in_I[I[j]] = j;

    size_t goal = kUnset;
    while (!queue.empty() && goal == kUnset) {
      size_t v = queue.front();
      queue.pop_front();
      if (!in_I[v]) {
        if (!occupant[S[v].group]) {
          goal = v;
          break;
        }
        size_t w = *occupant[S[v].group];
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          queue.push_back(w);
        }
      } else {
        for (size_t w : leaves[index_in_I[v]]) {
          if (!seen[w]) {
            seen[w] = 1;
            parent[w] = v;
            queue.push_back(w);
          }
        }
      }
    }

    if (goal != kUnset) {
      for (size_t v = goal; v != kUnset; v = parent[v]) in_I[v] = !in_I[v];
      for (auto& o : occupant) o.reset();
      for (size_t v = 0; v < S.size(); ++v)
        if (in_I[v]) {
          assert(!occupant[S[v].group]);
          occupant[S[v].group] = v;
        }
      continue;
    }

    // No augmenting path: nodes from which a free group is reachable span
    // fewer dimensions than the number of groups trapped inside, and those
    // trapped groups are a genuine violator.
    std::vector<char> reach(S.size(), 0);
    std::deque<size_t> rq;
    for (size_t v = 0; v < S.size(); ++v)
      if (!in_I[v] && !occupant[S[v].group]) {
        reach[v] = 1;
        rq.push_back(v);
      }
    while (!rq.empty()) {
      size_t w = rq.front();
      rq.pop_front();
      if (!in_I[w]) {
        // predecessors along in->out arcs: chosen nodes in w's circuit
        for (size_t j : circuit[w]) {
          size_t x = I[j];
          if (!reach[x]) {
            reach[x] = 1;
            rq.push_back(x);
          }
        }
      } else {
        // predecessors along out->occupant arcs: same-group outside nodes
        for (size_t z : group_nodes[S[w].group]) {
          if (!in_I[z] && !reach[z]) {
            reach[z] = 1;
            rq.push_back(z);
          }
        }
      }
    }
    TransversalViolation viol;
    for (size_t g = 0; g < n; ++g) {
      bool all = true;
      for (size_t v : group_nodes[g])
        if (!reach[v]) {
          all = false;
          break;
        }
      if (all) viol.subset.push_back(g);
    }
    // verify the certificate before handing it out
    fpm::Mat stacked;
    for (size_t g : viol.subset)
      for (const auto& r : family[g].rows) stacked.push_back(r);
    if (viol.subset.empty() ||
        fpm::rank(std::move(stacked), p) >= viol.subset.size())
      throw std::logic_error("transversal failure analysis broke down");
    return viol;
  }

  TransversalSuccess ok;
  ok.vectors.reserve(n);
  fpm::Mat all;
  for (size_t g = 0; g < n; ++g) {
    assert(occupant[g]);
    ok.vectors.push_back(S[*occupant[g]].vec);
    all.push_back(S[*occupant[g]].vec);
  }
  assert(fpm::rank(std::move(all), p) == n);
  return ok;
}

// ----- constructive matching -------------------------------------------------

MatchOutcome match_basis(const Basis& src, const Subspace& B) {
  const Subspace& A = src.parent();
  check_pair(A, B);
  const size_t n = src.size();
  const uint64_t p = B.field().p();

  auto C = preimages(src, B);
  Basis ref = Basis::canonical(B);

  // Dual family: the annihilators of the C_i inside B*. A free transversal
  // there is exactly a basis of functionals phi_i vanishing on C_i.
  std::vector<fpm::CoordSubspace> duals;
  duals.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    auto funcs = annihilator(C[i], B, ref);
    fpm::Mat rows;
    rows.reserve(funcs.size());
    for (auto& f : funcs) rows.push_back(std::move(f.weights));
    duals.push_back(fpm::coord_span(p, static_cast<unsigned>(n),
                                    std::move(rows)));
  }

  TransversalResult result = free_transversal(duals);
  if (auto* fail = std::get_if<TransversalViolation>(&result)) {
    // dim sum_{i in J} C_i-perp < |J| says dim meet_{i in J} C_i > n - |J|.
    const auto& J = fail->subset;
    Subspace V = intersect_over(C, J);
    ViolationCertificate cert{J, V.dim(), static_cast<unsigned>(n - J.size())};
    if (cert.violation_dim <= cert.bound)
      throw std::logic_error("transversal violation fails to certify");
    return cert;
  }

  auto& ok = std::get<TransversalSuccess>(result);
  std::vector<DualFunctional> chosen;
  chosen.reserve(n);
  for (auto& v : ok.vectors) chosen.push_back(DualFunctional{std::move(v)});
  Basis tgt = dual_basis_to_primal(chosen, B, ref);
  if (!matched_with(C, tgt))
    throw std::logic_error("constructed target basis failed verification");
  return MatchCertificate{src, std::move(tgt), true};
}

MatchOutcome automatch(const Subspace& B, const Basis& src) {
  if (src.parent() != B)
    throw std::invalid_argument("source basis must span the space itself");
  return match_basis(src, B);
}

// ----- whole-space verdicts --------------------------------------------------

SpaceMatchedResult space_matched(const Subspace& A, const Subspace& B,
                                 const ExhaustiveMode& mode) {
  check_pair(A, B);
  auto total = gl_order(A.dim(), A.field().p());
  if (!total) throw GuardExceeded("ordered basis count overflows");
  check_guard(*total, mode.cap, "ordered basis enumeration");
  BasisEnumerator en(A);
  uint64_t count = 0;
  while (auto b = en.next()) {
    ++count;
    if (!matched(match_basis(*b, B)))
      return SpaceMatchedResult{MatchVerdict::not_matched, std::move(*b),
                                count};
  }
  return SpaceMatchedResult{MatchVerdict::matched, std::nullopt, count};
}

SpaceMatchedResult space_matched(const Subspace& A, const Subspace& B,
                                 const SampledMode& mode) {
  check_pair(A, B);
  Rng rng(mode.seed);
  for (uint64_t i = 0; i < mode.count; ++i) {
    Basis b = random_basis(A, rng);
    if (!matched(match_basis(b, B)))
      return SpaceMatchedResult{MatchVerdict::not_matched, std::move(b),
                                i + 1};
  }
  // sampling can refute but never affirm
  return SpaceMatchedResult{MatchVerdict::inconclusive, std::nullopt,
                            mode.count};
}

// ----- field-level structure -------------------------------------------------

bool matching_property_prediction(const ExtensionField& field) {
  return field.degree() == 1 || is_prime(field.degree());
}

std::optional<NonMatchableWitness> non_matchable_witness(
    const ExtensionField& field) {
  if (matching_property_prediction(field)) return std::nullopt;
  const unsigned n = *n0(field);  // composite k: 1 < n < k
  SubfieldDescriptor sub = subfield(field, n);

  // First subfield element (enumeration order) of degree exactly n. n is
  // prime, so everything outside the prime field qualifies.
  std::optional<FieldElement> gen;
  for (uint64_t idx = 1; idx < sub.space.element_count(); ++idx) {
    FieldElement cand = sub.space.element_at(idx);
    if (element_degree(cand) == n) {
      gen = std::move(cand);
      break;
    }
  }
  assert(gen);

  std::vector<FieldElement> powers;
  powers.reserve(n);
  FieldElement acc = field.one();
  for (unsigned i = 0; i < n; ++i) {
    powers.push_back(acc);
    acc = acc * *gen;
  }
  Basis source = Basis::of(powers);
  Subspace A = source.parent();
  assert(A == sub.space);

  // Swap 1 out of the spanning set for the first power-basis vector of the
  // big field that escapes A.
  std::optional<FieldElement> outside;
  for (unsigned j = 0; j < field.degree(); ++j) {
    fpm::Row e(field.degree(), 0);
    e[j] = 1;
    FieldElement cand = field.element(std::move(e));
    if (!A.contains(cand)) {
      outside = std::move(cand);
      break;
    }
  }
  assert(outside);

  std::vector<FieldElement> bgens(powers.begin() + 1, powers.end());
  bgens.push_back(*outside);
  Subspace B = span(field, bgens);
  assert(B.dim() == n);

  if (!dim_criterion(source, B))
    throw std::logic_error("witness construction failed to violate");
  return NonMatchableWitness{std::move(A), std::move(B), std::move(source)};
}

bool refined_guarantee(const ExtensionField& field, unsigned n) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  auto d = n0(field);
  return !d || n < *d;
}

// ----- strong matchings ------------------------------------------------------

bool strong_matching_exists(const Subspace& A, const Subspace& B,
                            uint64_t cap) {
  check_pair(A, B);
  if (A.dim() == 0)
    throw std::invalid_argument("strong matching needs dimension >= 1");
  check_guard(A.element_count(), cap, "element enumeration");
  for (uint64_t idx = 1; idx < A.element_count(); ++idx)
    if (back_division(A.element_at(idx), A, B).dim() > 0) return false;
  return true;
}

bool is_strong_matching(const fpm::Mat& phi, const Subspace& A,
                        const Subspace& B, uint64_t cap) {
  check_pair(A, B);
  const unsigned n = A.dim();
  if (n == 0)
    throw std::invalid_argument("strong matching needs dimension >= 1");
  if (phi.size() != n)
    throw std::invalid_argument("phi must be a dim x dim matrix");
  for (const auto& r : phi)
    if (r.size() != n)
      throw std::invalid_argument("phi must be a dim x dim matrix");
  const uint64_t p = A.field().p();
  if (!fpm::inverse(phi, p))
    throw std::invalid_argument("phi must be invertible");
  check_guard(A.element_count(), cap, "element enumeration");

  // cache the back divisions then test them against every phi(H)
  const uint64_t count = A.element_count();
  std::vector<Subspace> Ca;
  Ca.reserve(count - 1);
  std::vector<fpm::Row> coords;
  coords.reserve(count - 1);
  for (uint64_t idx = 1; idx < count; ++idx) {
    FieldElement a = A.element_at(idx);
    Ca.push_back(back_division(a, A, B));
    fpm::Row c(n, 0);
    uint64_t v = idx;
    for (unsigned i = 0; i < n; ++i) {
      c[i] = static_cast<uint32_t>(v % p);
      v /= p;
    }
    coords.push_back(std::move(c));
  }

  // Hyperplanes of A are kernels of functionals, one canonical functional
  // (leading weight 1) per hyperplane.
  for (uint64_t fidx = 1; fidx < count; ++fidx) {
    fpm::Row f(n, 0);
    uint64_t v = fidx;
    for (unsigned i = 0; i < n; ++i) {
      f[i] = static_cast<uint32_t>(v % p);
      v /= p;
    }
    uint32_t lead = 0;
    for (unsigned i = 0; i < n; ++i)
      if (f[i] != 0) {
        lead = f[i];
        break;
      }
    if (lead != 1) continue;

    // phi(H) for H = ker f inside A
    fpm::Mat kernel = fpm::nullspace(fpm::Mat{f}, n, p);
    fpm::Mat image_rows;
    image_rows.reserve(kernel.size());
    for (const auto& kv : kernel) {
      fpm::Row bc = fpm::mat_vec(phi, kv, p);
      fpm::Row acc(B.ambient(), 0);
      for (unsigned j = 0; j < n; ++j) {
        if (bc[j] == 0) continue;
        for (unsigned c = 0; c < B.ambient(); ++c)
          acc[c] = fpm::add_mod(acc[c], fpm::mul_mod(bc[j], B.rows()[j][c], p),
                                p);
      }
      image_rows.push_back(std::move(acc));
    }
    Subspace phiH = Subspace::from_rows(B.field(), std::move(image_rows));

    for (uint64_t idx = 1; idx < count; ++idx) {
      if (fpm::dot(f, coords[idx - 1], p) == 0) continue;  // a inside H
      if (!phiH.contains_subspace(Ca[idx - 1])) return false;
    }
  }
  return true;
}

// ----- additive-theory cross-checks ------------------------------------------

namespace {

// For a subspace containing 1, the echelon basis starts with the row for 1;
// dropping it leaves the canonical complement of span{1}.
Subspace complement_of_one(const Subspace& S) {
  assert(S.contains_one());
  assert(!S.pivots().empty() && S.pivots()[0] == 0);
  fpm::Mat rest(S.rows().begin() + 1, S.rows().end());
  return Subspace::from_rows(S.field(), std::move(rest));
}

}  // namespace

KempermanStatus kemperman_check(const Subspace& A, const Subspace& B) {
  if (A.field() != B.field())
    throw std::invalid_argument("subspaces live in different fields");
  if (!A.contains_one() || !B.contains_one())
    return KempermanStatus::hypotheses_not_met;
  Subspace Abar = complement_of_one(A);
  Subspace Bbar = complement_of_one(B);
  Subspace mixed = sum(sum(Abar, Bbar), product_span(Abar, Bbar));
  if (mixed.contains_one()) return KempermanStatus::hypotheses_not_met;
  if (product_span(A, B).dim() < A.dim() + B.dim() - 1)
    throw std::logic_error("product bound failed under met hypotheses");
  return KempermanStatus::holds;
}

bool olson_consequence_check(const Subspace& A, const Subspace& B) {
  if (A.field() != B.field())
    throw std::invalid_argument("subspaces live in different fields");
  const unsigned k = A.field().degree();
  if (!is_prime(k))
    throw std::invalid_argument("field degree must be prime");
  if (A.dim() == 0 || B.dim() == 0)
    throw std::invalid_argument("subspaces must be nonzero");
  const unsigned bound = std::min(k, A.dim() + B.dim() - 1);
  return product_span(A, B).dim() >= bound;
}

}  // namespace matchfield
