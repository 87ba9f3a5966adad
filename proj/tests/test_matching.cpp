#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "matchfield/matching.hpp"
#include "matchfield/survey.hpp"
#include "oracles.hpp"

using namespace matchfield;

namespace {

// The canonical two-dimensional unmatchable instance: A is the degree-2
// subfield of F_16, B swaps 1 out for the generator t.
struct WitnessFixture {
  ExtensionField f = make_field(2, 4);
  FieldElement omega = f.element({0, 1, 1, 0});
  Subspace A = span({f.one(), omega});
  Subspace B = span({omega, f.gen()});
  Basis src = Basis::of({f.one(), omega});
};

MatchOutcome outcome_of(const Basis& src, const Subspace& B) {
  return match_basis(src, B);
}

}  // namespace

TEST_CASE("is_matched on frozen instances") {
  ExtensionField f4 = make_field(2, 2);
  Basis one = Basis::of({f4.one()});
  Basis t = Basis::of({f4.gen()});
  CHECK(is_matched(one, t));  // 1*t = t outside span{1}
  CHECK_FALSE(is_matched(t, one));  // t*1 = t lands back in span{t}

  WitnessFixture w;
  // No ordered basis of B works for the witness source basis.
  for (const Basis& tgt : all_bases(w.B)) {
    CHECK_FALSE(is_matched(w.src, tgt));
    CHECK_FALSE(oracles::is_matched_by_enumeration(w.src, tgt));
  }
  CHECK_THROWS_AS(is_matched(one, Basis::of({w.f.gen()})),
                  std::invalid_argument);  // mixed fields
}

TEST_CASE("is_matched agrees with the element-enumeration oracle") {
  Rng rng(31);
  for (auto [p, k] : {std::pair<uint64_t, unsigned>{2, 4}, {3, 3}}) {
    ExtensionField f = make_field(p, k);
    int match_seen = 0, fail_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
      unsigned n = 1 + unsigned(rng.below(3));
      Subspace A = random_subspace(f, n, rng);
      Subspace B = random_subspace(f, n, rng);
      Basis src = random_basis(A, rng);
      Basis tgt = random_basis(B, rng);
      bool lib = is_matched(src, tgt);
      CHECK(lib == oracles::is_matched_by_enumeration(src, tgt));
      (lib ? match_seen : fail_seen)++;
    }
    CHECK(match_seen > 0);
    CHECK(fail_seen > 0);
  }
}

TEST_CASE("dim_criterion finds the smallest-then-lex violator") {
  WitnessFixture w;
  auto v = dim_criterion(w.src, w.B);
  REQUIRE(v.has_value());
  CHECK(v->subset == std::vector<size_t>{0, 1});
  CHECK(v->violation_dim == 1);  // V_J = A meet B = span{omega}
  CHECK(v->bound == 0);

  // Any self-basis of a 1-free subspace passes (F_8, dims 1..3).
  ExtensionField f8 = make_field(2, 3);
  for (unsigned d = 1; d <= 3; ++d) {
    for (const Subspace& B : all_subspaces(f8, d)) {
      if (B.contains_one()) continue;
      for (const Basis& src : all_bases(B))
        CHECK_FALSE(dim_criterion(src, B).has_value());
    }
  }
}

TEST_CASE("dim_criterion refuses oversized subset scans") {
  ExtensionField f = make_field(2, 21);
  Subspace full = Subspace::full(f);
  Basis src = Basis::canonical(full);
  CHECK_THROWS_AS(dim_criterion(src, full), GuardExceeded);
  CHECK_NOTHROW(dim_criterion(src, full, 21));
}

TEST_CASE("match_basis returns verified certificates or genuine violations") {
  ExtensionField f8 = make_field(2, 3);
  FieldElement t = f8.gen();
  Subspace B = span({t, t * t});
  Basis src = Basis::of({t, t * t});
  MatchOutcome o = automatch(B, src);
  REQUIRE(matched(o));
  const auto& cert = std::get<MatchCertificate>(o);
  CHECK(cert.verified);
  CHECK(is_matched(cert.source, cert.target));
  CHECK(oracles::is_matched_by_enumeration(cert.source, cert.target));
  // The definition's consequence: diagonal products escape A.
  for (size_t i = 0; i < 2; ++i)
    CHECK_FALSE(B.contains(cert.source[i] * cert.target[i]));

  WitnessFixture w;
  MatchOutcome v = outcome_of(w.src, w.B);
  REQUIRE_FALSE(matched(v));
  const auto& viol = std::get<ViolationCertificate>(v);
  CHECK(viol.subset == std::vector<size_t>{0, 1});
  CHECK(viol.violation_dim == 1);
  CHECK(viol.bound == 0);
  // Check the certificate against the definition of V_J directly.
  Subspace VJ = intersect(back_division(w.src[0], w.A, w.B),
                          back_division(w.src[1], w.A, w.B));
  CHECK(VJ.dim() == viol.violation_dim);
  CHECK(VJ == span({w.omega}));

  // One-dimensional case: t^3 * t = t^4 = t+1 outside span{t^3}.
  ExtensionField f16 = make_field(2, 4);
  FieldElement g = f16.gen();
  Subspace A1 = span({g * g * g});
  Subspace B1 = span({g});
  MatchOutcome o1 = match_basis(Basis::canonical(A1), B1);
  REQUIRE(matched(o1));
  CHECK(std::get<MatchCertificate>(o1).target[0] == g);
}

TEST_CASE("1 in B dooms every source basis") {
  ExtensionField f8 = make_field(2, 3);
  FieldElement t = f8.gen();
  Subspace B = span({t, t + f8.one()});  // contains 1 = t + (t+1)
  REQUIRE(B.contains_one());
  for (const Subspace& A : all_subspaces(f8, 2))
    for (const Basis& src : all_bases(A))
      CHECK_FALSE(matched(match_basis(src, B)));
}

TEST_CASE("criterion, construction, and brute force agree everywhere sampled") {
  Rng rng(32);
  for (auto [p, k] : {std::pair<uint64_t, unsigned>{2, 4}, {3, 3}}) {
    ExtensionField f = make_field(p, k);
    int matched_seen = 0, violated_seen = 0;
    for (int trial = 0; trial < 100; ++trial) {
      unsigned n = 1 + unsigned(rng.below(3));
      Subspace A = random_subspace(f, n, rng);
      Subspace B = random_subspace(f, n, rng);
      Basis src = random_basis(A, rng);
      bool ok_criterion = !dim_criterion(src, B).has_value();
      bool ok_construct = matched(match_basis(src, B));
      bool ok_brute = brute_force_match(src, B).has_value();
      CHECK(ok_criterion == ok_construct);
      CHECK(ok_construct == ok_brute);
      (ok_construct ? matched_seen : violated_seen)++;
    }
    CHECK(matched_seen > 0);
    CHECK(violated_seen > 0);
  }
}

TEST_CASE("free_transversal solves and refuses correctly") {
  auto mk = [](std::initializer_list<fpm::Row> gens) {
    return fpm::coord_span(2, 3, fpm::Mat(gens));
  };
  // Frozen: picks exist.
  std::vector<fpm::CoordSubspace> family{
      mk({{1, 0, 0}, {0, 1, 0}}), mk({{0, 1, 0}}), mk({{0, 0, 1}})};
  TransversalResult r = free_transversal(family);
  REQUIRE(std::holds_alternative<TransversalSuccess>(r));
  const auto& succ = std::get<TransversalSuccess>(r);
  REQUIRE(succ.vectors.size() == 3);
  fpm::Mat picked;
  for (size_t i = 0; i < 3; ++i) {
    CHECK(family[i].contains(succ.vectors[i]));
    picked.push_back(succ.vectors[i]);
  }
  CHECK(fpm::rank(picked, 2) == 3);

  // Frozen: a doubled line cannot yield two independent picks.
  std::vector<fpm::CoordSubspace> bad{mk({{1, 0, 0}}), mk({{1, 0, 0}})};
  TransversalResult rb = free_transversal(bad);
  REQUIRE(std::holds_alternative<TransversalViolation>(rb));
  CHECK(std::get<TransversalViolation>(rb).subset ==
        std::vector<size_t>{0, 1});

  CHECK(std::holds_alternative<TransversalSuccess>(free_transversal({})));

  std::vector<fpm::CoordSubspace> mixed{mk({{1, 0, 0}}),
                                        fpm::coord_span(2, 4, {{1, 0, 0, 0}})};
  CHECK_THROWS_AS(free_transversal(mixed), std::invalid_argument);
}

TEST_CASE("free_transversal agrees with the exhaustive tuple oracle") {
  Rng rng(33);
  int success_seen = 0, violation_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    size_t n = 1 + rng.below(4);
    std::vector<fpm::CoordSubspace> family;
    for (size_t i = 0; i < n; ++i) {
      unsigned d = 1 + unsigned(rng.below(3));
      fpm::Mat gens;
      for (unsigned r = 0; r < d; ++r) {
        fpm::Row row(6);
        for (auto& c : row) c = static_cast<uint32_t>(rng.below(2));
        gens.push_back(std::move(row));
      }
      family.push_back(fpm::coord_span(2, 6, std::move(gens)));
    }
    TransversalResult r = free_transversal(family);
    bool exists = oracles::transversal_exists_by_enumeration(family, 2);
    if (auto* s = std::get_if<TransversalSuccess>(&r)) {
      ++success_seen;
      CHECK(exists);
      fpm::Mat picked;
      for (size_t i = 0; i < n; ++i) {
        CHECK(family[i].contains(s->vectors[i]));
        picked.push_back(s->vectors[i]);
      }
      CHECK(fpm::rank(picked, 2) == n);
    } else {
      ++violation_seen;
      CHECK_FALSE(exists);
      const auto& J = std::get<TransversalViolation>(r).subset;
      REQUIRE_FALSE(J.empty());
      fpm::CoordSubspace acc = family[J[0]];
      for (size_t idx = 1; idx < J.size(); ++idx)
        acc = fpm::coord_sum(acc, family[J[idx]]);
      CHECK(acc.dim() < J.size());
    }
  }
  CHECK(success_seen > 0);
  CHECK(violation_seen > 0);
}

TEST_CASE("space_matched verdicts") {
  ExtensionField f8 = make_field(2, 3);
  FieldElement t = f8.gen();
  Subspace B = span({t, t * t});
  SpaceMatchedResult all = space_matched(B, B, ExhaustiveMode{});
  CHECK(all.verdict == MatchVerdict::matched);
  CHECK(all.bases_checked == 6);

  WitnessFixture w;
  SpaceMatchedResult bad = space_matched(w.A, w.B, ExhaustiveMode{});
  CHECK(bad.verdict == MatchVerdict::not_matched);
  REQUIRE(bad.witness.has_value());
  CHECK_FALSE(matched(match_basis(*bad.witness, w.B)));

  SpaceMatchedResult sampled = space_matched(B, B, SampledMode{20, 7});
  CHECK(sampled.verdict == MatchVerdict::inconclusive);
  SpaceMatchedResult refuted = space_matched(w.A, w.B, SampledMode{50, 7});
  CHECK(refuted.verdict == MatchVerdict::not_matched);
}

TEST_CASE("matching property prediction and the witness constructor") {
  CHECK(matching_property_prediction(make_field(2, 3)));
  CHECK(matching_property_prediction(make_field(2, 5)));
  CHECK(matching_property_prediction(make_field(2, 1)));
  CHECK(matching_property_prediction(make_field(3, 2)));
  CHECK_FALSE(matching_property_prediction(make_field(2, 4)));
  CHECK_FALSE(matching_property_prediction(make_field(2, 6)));

  CHECK_FALSE(non_matchable_witness(make_field(2, 3)).has_value());
  CHECK_FALSE(non_matchable_witness(make_field(2, 1)).has_value());

  WitnessFixture w;
  auto nw = non_matchable_witness(w.f);
  REQUIRE(nw.has_value());
  CHECK(nw->A == w.A);
  CHECK(nw->B == w.B);
  CHECK(nw->source.elements() == w.src.elements());

  for (auto [p, k] : {std::pair<uint64_t, unsigned>{2, 6}, {3, 4}}) {
    auto witness = non_matchable_witness(make_field(p, k));
    REQUIRE(witness.has_value());
    CHECK(witness->A.dim() == 2);  // n0 = 2 for even k
    CHECK(witness->A.contains_one());
    CHECK_FALSE(witness->B.contains_one());
    auto v = dim_criterion(witness->source, witness->B);
    REQUIRE(v.has_value());
    CHECK(v->violation_dim > v->bound);
    CHECK_FALSE(brute_force_match(witness->source, witness->B).has_value());
  }
}

TEST_CASE("refined guarantee thresholds") {
  CHECK(refined_guarantee(make_field(2, 9), 2));
  CHECK_FALSE(refined_guarantee(make_field(2, 9), 3));
  CHECK_FALSE(refined_guarantee(make_field(2, 4), 2));
  CHECK(refined_guarantee(make_field(2, 4), 1));
  CHECK(refined_guarantee(make_field(2, 1), 1));  // n0 infinite
  CHECK(refined_guarantee(make_field(2, 5), 4));
}

TEST_CASE("strong matchings exist exactly when products escape A") {
  ExtensionField f4 = make_field(2, 2);
  FieldElement t4 = f4.gen();
  CHECK(strong_matching_exists(span({t4}), span({t4})));
  CHECK(strong_matching_exists(span({f4.one()}), span({t4})));

  ExtensionField f16 = make_field(2, 4);
  Subspace sub = subfield(f16, 2).space;
  CHECK_FALSE(strong_matching_exists(sub, sub));

  // Identity map works on the positive case; nothing works on the subfield.
  fpm::Mat id1{{1}};
  CHECK(is_strong_matching(id1, span({t4}), span({t4})));
  fpm::Mat id2{{1, 0}, {0, 1}};
  fpm::Mat swp{{0, 1}, {1, 0}};
  CHECK_FALSE(is_strong_matching(id2, sub, sub));
  CHECK_FALSE(is_strong_matching(swp, sub, sub));
  fpm::Mat singular{{1, 0}, {1, 0}};
  CHECK_THROWS_AS(is_strong_matching(singular, sub, sub),
                  std::invalid_argument);

  // Existence is isomorphism-independent: sampled maps agree unanimously.
  Rng rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    Subspace A = random_subspace(f16, 2, rng);
    Subspace B = random_subspace(f16, 2, rng);
    bool exists = strong_matching_exists(A, B);
    // The governing condition is on the set of products, not their span:
    // no nonzero a in A may pull any nonzero part of B back into A.
    bool set_product_clear = true;
    for (uint64_t idx = 1; idx < A.element_count(); ++idx)
      if (back_division(A.element_at(idx), A, B).dim() > 0)
        set_product_clear = false;
    CHECK(set_product_clear == exists);
    for (int j = 0; j < 10; ++j) {
      fpm::Mat phi = random_invertible_matrix(2, 2, rng);
      CHECK(is_strong_matching(phi, A, B) == exists);
    }
  }
}

TEST_CASE("kemperman status on frozen pairs, olson bound on prime degrees") {
  ExtensionField f8 = make_field(2, 3);
  FieldElement t = f8.gen();
  Subspace K = span({f8.one()});
  CHECK(kemperman_check(span({f8.one(), t}), span({f8.one(), t})) ==
        KempermanStatus::holds);
  CHECK(kemperman_check(K, K) == KempermanStatus::holds);

  ExtensionField f16 = make_field(2, 4);
  Subspace sub = subfield(f16, 2).space;
  CHECK(kemperman_check(sub, sub) == KempermanStatus::hypotheses_not_met);
  // Hypotheses require 1 in both A and B.
  CHECK(kemperman_check(span({f16.gen()}), sub) ==
        KempermanStatus::hypotheses_not_met);

  CHECK(olson_consequence_check(span({t}), span({t * t})));
  CHECK(olson_consequence_check(Subspace::full(f8), Subspace::full(f8)));
  CHECK_THROWS_AS(olson_consequence_check(sub, sub), std::invalid_argument);
  CHECK_THROWS_AS(olson_consequence_check(Subspace::zero(f8), K),
                  std::invalid_argument);

  Rng rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    unsigned da = 1 + unsigned(rng.below(3));
    unsigned db = 1 + unsigned(rng.below(3));
    Subspace A = random_subspace(f8, da, rng);
    Subspace B = random_subspace(f8, db, rng);
    CHECK(olson_consequence_check(A, B));
    kemperman_check(A, B);  // must never throw on desk-scale instances
  }
}
