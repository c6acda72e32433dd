#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ghelab/distribution.hpp"
#include "ghelab/group.hpp"
#include "ghelab/schemes.hpp"

namespace ghelab {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::uint64_t field_u64(const Json& j, const std::string& field) {
  if (!j.contains(field))
    throw ParameterError(field + ": required field is missing");
  const Json& v = j.at(field);
  if (!v.is_number_unsigned() && !(v.is_number_integer() &&
                                   v.get<std::int64_t>() >= 0))
    throw ParameterError(field + ": expected a non-negative integer");
  return v.get<std::uint64_t>();
}

inline std::string field_string(const Json& j, const std::string& field) {
  if (!j.contains(field))
    throw ParameterError(field + ": required field is missing");
  if (!j.at(field).is_string())
    throw ParameterError(field + ": expected a string");
  return j.at(field).get<std::string>();
}

}  // namespace detail

inline Json group_to_json(const Group& g) {
  switch (g.family()) {
    case GroupFamily::BitVector:
      return Json{{"family", "bitvector"}, {"lambda", g.lambda()}};
    case GroupFamily::MultMod:
      return Json{{"family", "multmod"}, {"n", g.modulus()}};
    case GroupFamily::CyclicProduct:
      return Json{{"family", "cyclic"}, {"moduli", g.moduli()}};
    case GroupFamily::DirectProduct:
      return Json{{"family", "direct"},
                  {"left", group_to_json(g.left())},
                  {"right", group_to_json(g.right())}};
  }
  throw ParameterError("group_to_json: unknown family");
}

inline Group group_from_json(const Json& j) {
  if (!j.is_object()) throw ParameterError("group: expected a JSON object");
  const std::string family = detail::field_string(j, "family");
  if (family == "bitvector")
    return Group::bitvector(
        static_cast<unsigned>(detail::field_u64(j, "lambda")));
  if (family == "multmod") return Group::multmod(detail::field_u64(j, "n"));
  if (family == "cyclic") {
    if (!j.contains("moduli") || !j.at("moduli").is_array())
      throw ParameterError("moduli: expected an array of integers");
    std::vector<std::uint64_t> moduli;
    for (const auto& m : j.at("moduli")) {
      if (!m.is_number_unsigned() && !m.is_number_integer())
        throw ParameterError("moduli: expected an array of integers");
      moduli.push_back(m.get<std::uint64_t>());
    }
    return Group::cyclic_product(std::move(moduli));
  }
  if (family == "direct") {
    if (!j.contains("left") || !j.contains("right"))
      throw ParameterError("direct: fields left and right are required");
    return Group::direct_product(group_from_json(j.at("left")),
                                 group_from_json(j.at("right")));
  }
  throw ParameterError("family: unknown group family '" + family + "'");
}

inline Json element_to_json(const Element& e) { return Json(e); }

inline Element element_from_json(const Json& j, const Group& g,
                                 const std::string& field = "element") {
  Element e;
  if (j.is_number_unsigned() || j.is_number_integer()) {
    e.push_back(j.get<std::uint64_t>());
  } else if (j.is_array()) {
    for (const auto& c : j) {
      if (!c.is_number_unsigned() && !c.is_number_integer())
        throw ParameterError(field + ": coordinates must be integers");
      e.push_back(c.get<std::uint64_t>());
    }
  } else {
    throw ParameterError(field + ": expected an integer array");
  }
  if (!g.is_valid(e))
    throw ParameterError(field + ": not a valid element of " + g.describe());
  return e;
}

inline GroupDistribution distribution_from_json(
    const Json& j, const std::optional<Group>& context = std::nullopt) {
  if (!j.is_object())
    throw ParameterError("distribution: expected a JSON object");
  const std::string kind = detail::field_string(j, "kind");
  if (kind == "exotic")
    return GroupDistribution::exotic(
        static_cast<unsigned>(detail::field_u64(j, "lambda")));
  if (kind == "uniform") {
    if (j.contains("group"))
      return GroupDistribution::uniform(group_from_json(j.at("group")));
    if (context) return GroupDistribution::uniform(*context);
    throw ParameterError("kind=uniform: a group field (or --group) is "
                         "required");
  }
  if (kind == "table") {
    Group g = j.contains("group")
                  ? group_from_json(j.at("group"))
                  : (context ? *context
                             : throw ParameterError(
                                   "kind=table: a group field (or --group) "
                                   "is required"));
    if (!j.contains("pmf") || !j.at("pmf").is_array())
      throw ParameterError("pmf: expected an array of probabilities");
    std::vector<double> pmf;
    for (const auto& p : j.at("pmf")) {
      if (!p.is_number())
        throw ParameterError("pmf: entries must be numbers");
      pmf.push_back(p.get<double>());
    }
    return GroupDistribution::table(std::move(g), std::move(pmf));
  }
  throw ParameterError("kind: unknown distribution kind '" + kind + "'");
}

inline Json distribution_to_json(const GroupDistribution& d) {
  Json j;
  j["kind"] = d.kind();
  if (d.kind() == "exotic")
    j["lambda"] = d.exotic_lambda();
  else
    j["group"] = group_to_json(d.support());
  return j;
}

/// Builds a keyed scheme from its JSON spec. Key generation randomness is
/// derived from keygen_seed, so identical spec + seed gives identical
/// keys.
inline Scheme scheme_from_json(const Json& j, std::uint64_t keygen_seed) {
  if (!j.is_object()) throw ParameterError("scheme: expected a JSON object");
  const std::string kind = detail::field_string(j, "scheme");
  if (kind == "elgamal") {
    const std::uint64_t p = detail::field_u64(j, "p");
    const std::uint64_t g = detail::field_u64(j, "g");
    if (j.contains("x"))
      return make_toy_elgamal_with_key(p, g, detail::field_u64(j, "x"));
    Rng rng = Rng::derive(keygen_seed, 0x6b657967656eULL);  // keygen stream
    return make_toy_elgamal(p, g, rng);
  }
  if (kind == "gm")
    return make_goldwasser_micali(detail::field_u64(j, "p"),
                                  detail::field_u64(j, "q"));
  if (kind == "estar") {
    if (!j.contains("base"))
      throw ParameterError("base: required field is missing");
    const Scheme base = scheme_from_json(j.at("base"), keygen_seed);
    const Element m_star =
        element_from_json(j.contains("m_star")
                              ? j.at("m_star")
                              : throw ParameterError(
                                    "m_star: required field is missing"),
                          base.plaintext, "m_star");
    return make_estar(base, m_star, detail::field_u64(j, "r_star"));
  }
  throw ParameterError("scheme: unknown scheme kind '" + kind + "'");
}

inline Json scheme_to_json(const Scheme& s) {
  Json j;
  j["kind"] = s.kind;
  j["plaintext_group"] = group_to_json(s.plaintext);
  j["ciphertext_group"] = group_to_json(s.ciphertext_space);
  j["randomness_size"] = s.randomness_size;
  Json params = Json::object();
  for (const auto& [name, value] : s.params) params[name] = value;
  j["params"] = params;
  return j;
}

}  // namespace ghelab
