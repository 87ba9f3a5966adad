#include "matchfield/json_io.hpp"

#include <stdexcept>

namespace matchfield {

using nlohmann::json;

namespace {

// JSON has no signedness: accept any integer value >= 0 however the producer
// tagged it.
bool nonnegative_integer(const json& v) {
  return v.is_number_unsigned() ||
         (v.is_number_integer() && v.get<int64_t>() >= 0);
}

fpm::Row row_from_json(const json& j, uint64_t p, const char* what) {
  if (!j.is_array())
    throw std::invalid_argument(std::string(what) + ": expected an array");
  fpm::Row row;
  row.reserve(j.size());
  for (const auto& v : j) {
    if (!nonnegative_integer(v) || v.get<uint64_t>() >= p)
      throw std::invalid_argument(std::string(what) +
                                  ": coefficients must lie in [0, p)");
    row.push_back(v.get<uint32_t>());
  }
  return row;
}

}  // namespace

json field_to_json(const ExtensionField& f) {
  return json{{"p", f.p()}, {"k", f.degree()}, {"modulus", f.modulus()}};
}

ExtensionField field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("k"))
    throw std::invalid_argument("field: need p and k");
  if (!nonnegative_integer(j["p"]) || !nonnegative_integer(j["k"]))
    throw std::invalid_argument("field: p and k must be nonnegative integers");
  uint64_t p = j["p"].get<uint64_t>();
  uint64_t k_raw = j["k"].get<uint64_t>();
  if (k_raw == 0 || k_raw > 64)
    throw std::invalid_argument("field: k is out of range");
  unsigned k = static_cast<unsigned>(k_raw);
  if (!j.contains("modulus") || j["modulus"].is_null())
    return make_field(p, k);
  return make_field(p, k, row_from_json(j["modulus"], p, "modulus"));
}

json subspace_to_json(const Subspace& s) {
  json rows = json::array();
  for (const auto& r : s.rows()) rows.push_back(r);
  return rows;
}

Subspace subspace_from_json(const ExtensionField& f, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("subspace: expected an array");
  fpm::Mat rows;
  rows.reserve(j.size());
  for (const auto& g : j) {
    fpm::Row row = row_from_json(g, f.p(), "generator");
    if (row.size() != f.degree())
      throw std::invalid_argument("generator width does not match the field");
    rows.push_back(std::move(row));
  }
  return Subspace::from_rows(f, std::move(rows));
}

json basis_to_json(const Basis& b) {
  json rows = json::array();
  for (const auto& e : b.elements()) rows.push_back(e.coeffs());
  return rows;
}

Basis basis_from_json(const ExtensionField& f, const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("basis: expected a nonempty array");
  std::vector<FieldElement> elems;
  elems.reserve(j.size());
  for (const auto& g : j) {
    fpm::Row row = row_from_json(g, f.p(), "basis element");
    if (row.size() != f.degree())
      throw std::invalid_argument("basis width does not match the field");
    elems.push_back(f.element(std::move(row)));
  }
  return Basis::of(std::move(elems));  // throws on dependence
}

json outcome_to_json(const MatchOutcome& o) {
  if (const auto* cert = std::get_if<MatchCertificate>(&o)) {
    return json{{"kind", "match"},
                {"source", basis_to_json(cert->source)},
                {"target", basis_to_json(cert->target)}};
  }
  const auto& v = std::get<ViolationCertificate>(o);
  json J = json::array();
  for (size_t i : v.subset) J.push_back(i + 1);  // 1-based on the wire
  return json{{"kind", "violation"},
              {"J", J},
              {"vdim", v.violation_dim},
              {"bound", v.bound}};
}

json group_counterexample_json(const groups::GroupDescriptor& g,
                               const groups::GroupSubset& A,
                               const groups::GroupSubset& B) {
  auto elems = [&](const groups::GroupSubset& s) {
    json out = json::array();
    for (const auto& e : s.elements) {
      if (g.kind == groups::GroupDescriptor::Kind::cyclic)
        out.push_back(e[0]);
      else
        out.push_back(e);
    }
    return out;
  };
  return json{{"group", g.name()},
              {"A", elems(A)},
              {"B", elems(B)},
              {"matching", nullptr}};
}

}  // namespace matchfield
