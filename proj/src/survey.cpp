#include "matchfield/survey.hpp"

#include <chrono>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace matchfield {

namespace {

using nlohmann::json;

// Saturating product: anything that overflows certainly exceeds every cap.
uint64_t predicted_product(std::initializer_list<uint64_t> factors) {
  uint64_t acc = 1;
  for (uint64_t f : factors) {
    if (f != 0 && acc > UINT64_MAX / f) return UINT64_MAX;
    acc *= f;
  }
  return acc;
}

template <typename Fn>
int run_guarded(json& out, Fn fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    out = json{{"error", e.what()}};
    return 2;
  }
}

Subspace random_one_free_subspace(const ExtensionField& f, unsigned d,
                                  Rng& rng) {
  // For d < k a positive fraction of d-dim subspaces avoid 1, so rejection
  // terminates; the iteration bound is pure paranoia.
  for (int tries = 0; tries < 65536; ++tries) {
    Subspace s = random_subspace(f, d, rng);
    if (!s.contains_one()) return s;
  }
  throw std::logic_error("rejection sampling for a 1-free subspace stalled");
}

unsigned checked_dim(const ExtensionField& f, unsigned dim) {
  if (dim < 1 || dim > f.degree())
    throw std::invalid_argument("dimension must be between 1 and the field degree");
  return dim;
}

json instance_json(const Subspace& A, const Subspace& B, const Basis& src,
                   const MatchOutcome& o) {
  return json{{"A", subspace_to_json(A)},
              {"B", subspace_to_json(B)},
              {"basis", basis_to_json(src)},
              {"outcome", outcome_to_json(o)}};
}

json sweep_params_json(const SweepParams& p, const ExtensionField& f,
                       bool sampled) {
  json jp{{"task", p.task},
          {"field", field_to_json(f)},
          {"dim", p.dim},
          {"cap", p.cap},
          {"exhaustive", !sampled}};
  if (sampled) {
    jp["samples"] = p.samples;
    jp["seed"] = p.seed;
  }
  return jp;
}

void record_failure(SweepReport& r, json counterexample) {
  ++r.failures;
  if (r.first_counterexample.is_null())
    r.first_counterexample = std::move(counterexample);
}

void sweep_automatch(const ExtensionField& f, const SweepParams& p,
                     SweepReport& r) {
  unsigned n = checked_dim(f, p.dim);
  bool sampled = p.samples > 0;
  r.params = sweep_params_json(p, f, sampled);
  uint64_t matched_count = 0, contains_one_count = 0;

  auto consider = [&](const Subspace& B, const Basis& src) {
    MatchOutcome o = automatch(B, src);
    bool expect = !B.contains_one();
    if (!expect) ++contains_one_count;
    if (matched(o)) ++matched_count;
    ++r.total;
    if (matched(o) == expect) {
      ++r.success;
    } else {
      record_failure(r, json{{"B", subspace_to_json(B)},
                             {"basis", basis_to_json(src)},
                             {"containsOne", !expect},
                             {"outcome", outcome_to_json(o)}});
    }
  };

  if (sampled) {
    Rng rng(p.seed);
    for (uint64_t i = 0; i < p.samples; ++i) {
      Subspace B = random_subspace(f, n, rng);
      consider(B, random_basis(B, rng));
    }
  } else {
    uint64_t bases = gl_order(n, f.p()).value_or(UINT64_MAX);
    check_guard(predicted_product({gaussian_binomial(f.degree(), n, f.p()),
                                   bases}),
                p.cap, "automatch sweep");
    SubspaceEnumerator subs(f, n);
    while (auto B = subs.next()) {
      BasisEnumerator bas(*B);
      while (auto src = bas.next()) consider(*B, *src);
    }
  }
  r.detail = json{{"matched", matched_count},
                  {"containsOne", contains_one_count}};
}

// Shared by the matchingProperty and refinement tasks: run match_basis over
// eligible (A, B, basis) triples with 1 outside B. `must_match` scores an
// unmatched triple as a failure; otherwise unmatched triples are merely
// tallied.
void sweep_match_triples(const ExtensionField& f, const SweepParams& p,
                         SweepReport& r, bool must_match,
                         uint64_t* unmatched_out) {
  unsigned n = checked_dim(f, p.dim);
  bool sampled = p.samples > 0;
  uint64_t unmatched = 0;

  auto consider = [&](const Subspace& A, const Subspace& B, const Basis& src) {
    MatchOutcome o = match_basis(src, B);
    ++r.total;
    if (!matched(o)) ++unmatched;
    if (matched(o) || !must_match) {
      ++r.success;
    } else {
      record_failure(r, instance_json(A, B, src, o));
    }
  };

  if (sampled) {
    if (n >= f.degree())
      throw std::invalid_argument("every full-dimension subspace contains 1");
    Rng rng(p.seed);
    for (uint64_t i = 0; i < p.samples; ++i) {
      Subspace A = random_subspace(f, n, rng);
      Subspace B = random_one_free_subspace(f, n, rng);
      consider(A, B, random_basis(A, rng));
    }
  } else {
    uint64_t sub_count = gaussian_binomial(f.degree(), n, f.p());
    uint64_t bases = gl_order(n, f.p()).value_or(UINT64_MAX);
    check_guard(predicted_product({sub_count, sub_count, bases}), p.cap,
                "matching sweep");
    std::vector<Subspace> spaces = all_subspaces(f, n, p.cap);
    std::vector<const Subspace*> eligible;
    for (const Subspace& s : spaces)
      if (!s.contains_one()) eligible.push_back(&s);
    for (const Subspace& A : spaces) {
      BasisEnumerator bas(A);
      while (auto src = bas.next())
        for (const Subspace* B : eligible) consider(A, *B, *src);
    }
  }
  if (unmatched_out) *unmatched_out = unmatched;
}

void sweep_matching_property(const ExtensionField& f, const SweepParams& p,
                             SweepReport& r) {
  bool prediction = matching_property_prediction(f);
  r.params = sweep_params_json(p, f, p.samples > 0);
  uint64_t unmatched = 0;
  sweep_match_triples(f, p, r, prediction, &unmatched);
  r.detail = json{{"prediction", prediction}, {"unmatched", unmatched}};

  if (!prediction) {
    // The theory promises a concrete unmatchable triple; produce and test it.
    auto w = non_matchable_witness(f);
    if (!w) throw std::logic_error("no witness for a field without the matching property");
    MatchOutcome o = match_basis(w->source, w->B);
    ++r.total;
    if (!matched(o)) {
      ++r.success;
    } else {
      record_failure(r, instance_json(w->A, w->B, w->source, o));
    }
    r.detail["witness"] = instance_json(w->A, w->B, w->source, o);
  }
}

void sweep_refinement(const ExtensionField& f, const SweepParams& p,
                      SweepReport& r) {
  if (!refined_guarantee(f, p.dim))
    throw std::invalid_argument(
        "dimension is not below the refined matchability bound for this field");
  r.params = sweep_params_json(p, f, p.samples > 0);
  uint64_t unmatched = 0;
  sweep_match_triples(f, p, r, /*must_match=*/true, &unmatched);
  r.detail = json{{"unmatched", unmatched}};
}

void sweep_strong(const ExtensionField& f, const SweepParams& p,
                  SweepReport& r) {
  unsigned n = checked_dim(f, p.dim);
  bool sampled = p.samples > 0;
  r.params = sweep_params_json(p, f, sampled);
  r.params["phiSamples"] = p.phi_samples;
  r.params["seed"] = p.seed;  // phi draws are seeded even in exhaustive mode
  uint64_t exists_count = 0;
  Rng phi_rng(p.seed);

  auto consider = [&](const Subspace& A, const Subspace& B, Rng& rng) {
    bool exists = strong_matching_exists(A, B, p.cap);
    if (exists) ++exists_count;
    // A strong matching exists iff every isomorphism is one, so sampled
    // isomorphisms must agree unanimously with the existence verdict.
    bool consistent = true;
    for (unsigned j = 0; j < p.phi_samples; ++j) {
      fpm::Mat phi = random_invertible_matrix(n, f.p(), rng);
      if (is_strong_matching(phi, A, B, p.cap) != exists) consistent = false;
    }
    ++r.total;
    if (consistent) {
      ++r.success;
    } else {
      record_failure(r, json{{"A", subspace_to_json(A)},
                             {"B", subspace_to_json(B)},
                             {"exists", exists}});
    }
  };

  if (sampled) {
    Rng rng(p.seed);
    for (uint64_t i = 0; i < p.samples; ++i) {
      Subspace A = random_subspace(f, n, rng);
      Subspace B = random_subspace(f, n, rng);
      consider(A, B, rng);
    }
  } else {
    uint64_t sub_count = gaussian_binomial(f.degree(), n, f.p());
    check_guard(predicted_product({sub_count, sub_count, p.phi_samples}),
                p.cap, "strong matching sweep");
    std::vector<Subspace> spaces = all_subspaces(f, n, p.cap);
    for (const Subspace& A : spaces)
      for (const Subspace& B : spaces) consider(A, B, phi_rng);
  }
  r.detail = json{{"exists", exists_count},
                  {"notExists", r.total - exists_count}};
}

void sweep_olson(const ExtensionField& f, const SweepParams& p,
                 SweepReport& r) {
  unsigned dim_a = checked_dim(f, p.dim);
  unsigned dim_b = checked_dim(f, p.dim_b.value_or(p.dim));
  if (p.samples == 0)
    throw std::invalid_argument("the olson sweep is sampled; pass a sample count");
  r.params = sweep_params_json(p, f, true);
  r.params["dimB"] = dim_b;
  bool olson_applicable = is_prime(f.degree());
  uint64_t holds = 0, not_met = 0;

  Rng rng(p.seed);
  for (uint64_t i = 0; i < p.samples; ++i) {
    Subspace A = random_subspace(f, dim_a, rng);
    Subspace B = random_subspace(f, dim_b, rng);
    bool ok = !olson_applicable || olson_consequence_check(A, B);
    // kemperman_check throws on an inequality breach under met hypotheses;
    // that is an invariant failure, not a counterexample, so it propagates.
    if (kemperman_check(A, B) == KempermanStatus::holds)
      ++holds;
    else
      ++not_met;
    ++r.total;
    if (ok) {
      ++r.success;
    } else {
      record_failure(r, json{{"A", subspace_to_json(A)},
                             {"B", subspace_to_json(B)},
                             {"productDim", product_span(A, B).dim()}});
    }
  }
  r.detail = json{{"olsonApplicable", olson_applicable},
                  {"kempermanHolds", holds},
                  {"kempermanHypothesesNotMet", not_met}};
}

groups::GroupDescriptor parse_group(const std::string& s) {
  try {
    if (s.size() >= 2 && s[0] == 'Z') {
      if (s[1] == '^')
        return groups::GroupDescriptor::free_abelian(
            static_cast<unsigned>(std::stoul(s.substr(2))));
      return groups::GroupDescriptor::cyclic(
          static_cast<unsigned>(std::stoul(s.substr(1))));
    }
  } catch (const std::logic_error&) {
    // fall through to the shared error below
  }
  throw std::invalid_argument("unrecognized group name: " + s +
                              " (expected e.g. Z6 or Z^2)");
}

void sweep_groups(const SweepParams& p, SweepReport& r) {
  if (!p.group) throw std::invalid_argument("the groups sweep needs a group name");
  groups::GroupDescriptor g = parse_group(*p.group);
  r.params = json{{"task", p.task},
                  {"group", g.name()},
                  {"maxSize", p.max_size},
                  {"cap", p.cap}};
  groups::ScanReport sr = groups::matching_property_scan(g, p.max_size, p.cap);
  bool prediction = g.param == 1 || is_prime(g.param);
  uint64_t unmatched = sr.pairs_scanned - sr.matched;

  r.total = sr.pairs_scanned + sr.b2b_checked;
  r.failures = sr.b2b_failures + (prediction ? unmatched : 0);
  r.success = r.total - r.failures;
  if (prediction && sr.counterexample) {
    r.first_counterexample = group_counterexample_json(
        g, sr.counterexample->A, sr.counterexample->B);
  }
  r.detail = json{{"prediction", prediction},
                  {"unmatched", unmatched},
                  {"b2bChecked", sr.b2b_checked},
                  {"b2bFailures", sr.b2b_failures}};
  r.detail["counterexample"] =
      sr.counterexample ? group_counterexample_json(g, sr.counterexample->A,
                                                    sr.counterexample->B)
                        : json(nullptr);
}

}  // namespace

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
  if (!j.contains("field")) throw std::invalid_argument("instance needs a \"field\"");
  Instance inst{field_from_json(j.at("field")), std::nullopt, std::nullopt,
                std::nullopt};
  if (j.contains("A")) inst.A = subspace_from_json(inst.field, j.at("A"));
  if (j.contains("B")) inst.B = subspace_from_json(inst.field, j.at("B"));
  if (j.contains("basis"))
    inst.basis = basis_from_json(inst.field, j.at("basis"));
  return inst;
}

std::optional<Basis> brute_force_match(const Basis& src, const Subspace& B,
                                       uint64_t cap) {
  const Subspace& A = src.parent();
  if (src.size() != B.dim())
    throw std::invalid_argument("source basis and target space sizes differ");
  size_t n = src.size();
  BasisEnumerator en(B);
  check_guard(en.total().value_or(UINT64_MAX), cap, "ordered-basis scan");

  std::vector<Subspace> C;
  C.reserve(n);
  for (size_t i = 0; i < n; ++i) C.push_back(back_division(src[i], A, B));
  for (const Subspace& Ci : C)
    if (Ci.dim() == n && n > 0) return std::nullopt;  // no hyperplane holds B

  while (auto cand = en.next()) {
    bool ok = true;
    // b_i never lies in its own omitted hyperplane, so b_i in C_i is fatal.
    for (size_t i = 0; ok && i < n; ++i)
      if (C[i].dim() > 0 && C[i].contains((*cand)[i])) ok = false;
    for (size_t i = 0; ok && i < n; ++i) {
      if (C[i].dim() == 0) continue;
      ok = hyperplane_omitting(*cand, i).contains_subspace(C[i]);
    }
    if (ok) return cand;
  }
  return std::nullopt;
}

int cmd_match(const json& instance, json& out) {
  return run_guarded(out, [&]() {
    Instance inst = instance_from_json(instance);
    if (!inst.A || !inst.B)
      throw std::invalid_argument("match needs subspaces \"A\" and \"B\"");
    if (inst.A->dim() < 1 || inst.A->dim() != inst.B->dim())
      throw std::invalid_argument("A and B must share a positive dimension");
    Basis src = inst.basis ? *inst.basis : Basis::canonical(*inst.A);
    if (!(src.parent() == *inst.A))
      throw std::invalid_argument("\"basis\" must span A");
    MatchOutcome o = match_basis(src, *inst.B);
    out = outcome_to_json(o);
    return matched(o) ? 0 : 1;
  });
}

int cmd_automatch(const json& instance, json& out) {
  return run_guarded(out, [&]() {
    Instance inst = instance_from_json(instance);
    const std::optional<Subspace>& space = inst.B ? inst.B : inst.A;
    if (!space)
      throw std::invalid_argument("automatch needs a subspace \"B\" (or \"A\")");
    if (space->dim() < 1)
      throw std::invalid_argument("automatch needs a positive dimension");
    Basis src = inst.basis ? *inst.basis : Basis::canonical(*space);
    if (!(src.parent() == *space))
      throw std::invalid_argument("\"basis\" must span the subspace");
    MatchOutcome o = automatch(*space, src);
    out = outcome_to_json(o);
    return matched(o) ? 0 : 1;
  });
}

int cmd_strong(const json& instance, json& out) {
  return run_guarded(out, [&]() {
    Instance inst = instance_from_json(instance);
    if (!inst.A || !inst.B)
      throw std::invalid_argument("strong needs subspaces \"A\" and \"B\"");
    if (inst.A->dim() < 1 || inst.A->dim() != inst.B->dim())
      throw std::invalid_argument("A and B must share a positive dimension");
    bool exists = strong_matching_exists(*inst.A, *inst.B);
    out = json{{"exists", exists},
               {"productDim", product_span(*inst.A, *inst.B).dim()}};
    return exists ? 0 : 1;
  });
}

SweepReport run_sweep(const SweepParams& params) {
  auto t0 = std::chrono::steady_clock::now();
  SweepReport r;
  r.task = params.task;
  if (params.task == "groups") {
    sweep_groups(params, r);
  } else {
    if (!params.p || !params.k)
      throw std::invalid_argument("this sweep needs a field (p and k)");
    ExtensionField f = params.modulus
                           ? make_field(*params.p, *params.k, *params.modulus)
                           : make_field(*params.p, *params.k);
    if (params.task == "automatch")
      sweep_automatch(f, params, r);
    else if (params.task == "matchingProperty")
      sweep_matching_property(f, params, r);
    else if (params.task == "strongMatching")
      sweep_strong(f, params, r);
    else if (params.task == "refinement")
      sweep_refinement(f, params, r);
    else if (params.task == "olson")
      sweep_olson(f, params, r);
    else
      throw std::invalid_argument("unknown sweep task: " + params.task);
  }
  r.duration_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return r;
}

json report_to_json(const SweepReport& r) {
  // Deliberately excludes the wall-clock duration: identical inputs and seed
  // must reproduce this JSON byte for byte.
  return json{{"task", r.task},
              {"params", r.params},
              {"total", r.total},
              {"success", r.success},
              {"failures", r.failures},
              {"firstCounterexample", r.first_counterexample},
              {"detail", r.detail}};
}

std::string report_summary(const SweepReport& r) {
  std::ostringstream os;
  os << "task         " << r.task << "\n"
     << "params       " << r.params.dump() << "\n"
     << "instances    " << r.total << "\n"
     << "success      " << r.success << "\n"
     << "failures     " << r.failures << "\n";
  if (!r.first_counterexample.is_null())
    os << "first fail   " << r.first_counterexample.dump() << "\n";
  os << "elapsed      " << r.duration_ms << " ms\n";
  return os.str();
}

int cmd_sweep(const SweepParams& params, json& out) {
  return run_guarded(out, [&]() {
    SweepReport r = run_sweep(params);
    out = report_to_json(r);
    return r.failures == 0 ? 0 : 1;
  });
}

}  // namespace matchfield
