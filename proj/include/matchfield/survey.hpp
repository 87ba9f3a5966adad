#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "matchfield/json_io.hpp"
#include "matchfield/matching.hpp"

// Instance-level commands and theorem-probing sweeps behind the CLI. Command
// functions return process exit codes: 0 success/matched, 1 violation or
// counterexample, 2 invalid input. Sweep reports are deterministic for a
// fixed seed; wall-clock time is reported separately so the JSON is
// byte-reproducible.

namespace matchfield {

// {"field": {...}, "A": [[...]], "B": [[...]], "basis": [[...]]}; A, B and
// basis are each optional at this level, commands check what they need.
struct Instance {
  ExtensionField field;
  std::optional<Subspace> A;
  std::optional<Subspace> B;
  std::optional<Basis> basis;
};

Instance instance_from_json(const nlohmann::json& j);

// Reference oracle: tries every ordered basis of B against the matched-basis
// definition, independent of the constructive pipeline.
std::optional<Basis> brute_force_match(const Basis& src, const Subspace& B,
                                       uint64_t cap = kDefaultEnumCap);

int cmd_match(const nlohmann::json& instance, nlohmann::json& out);
int cmd_automatch(const nlohmann::json& instance, nlohmann::json& out);
int cmd_strong(const nlohmann::json& instance, nlohmann::json& out);

struct SweepParams {
  std::string task;  // automatch | matchingProperty | strongMatching |
                     // refinement | olson | groups
  std::optional<uint64_t> p;
  std::optional<unsigned> k;
  std::optional<fpm::Row> modulus;
  unsigned dim = 2;
  std::optional<unsigned> dim_b;  // olson: dim of B when it differs from A's
  uint64_t samples = 500;
  uint64_t seed = 0;
  uint64_t cap = kDefaultEnumCap;
  unsigned phi_samples = 50;        // strongMatching
  std::optional<std::string> group; // groups, e.g. "Z4"
  unsigned max_size = 2;            // groups
};

struct SweepReport {
  std::string task;
  nlohmann::json params;  // normalized inputs, including the seed
  uint64_t total = 0;
  uint64_t success = 0;
  uint64_t failures = 0;
  nlohmann::json first_counterexample;  // null when none
  nlohmann::json detail;                // task-specific tallies, may be null
  double duration_ms = 0;               // excluded from the JSON report
};

SweepReport run_sweep(const SweepParams& params);
nlohmann::json report_to_json(const SweepReport& report);
std::string report_summary(const SweepReport& report);  // human text

int cmd_sweep(const SweepParams& params, nlohmann::json& out);

}  // namespace matchfield
