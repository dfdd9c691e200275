#pragma once

// Versioned JSON catalog of cyclic CM fields and CM curves. The family
// y^2 = x^l - 1 over Q(zeta_l) is synthesized on demand for odd primes l.

#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cmreduce/bigint.hpp"
#include "cmreduce/cm_types.hpp"
#include "cmreduce/errors.hpp"
#include "cmreduce/integer_poly.hpp"
#include "cmreduce/splitting.hpp"

namespace cmreduce {

using json = nlohmann::ordered_json;

inline constexpr int kCatalogVersion = 1;

struct CMCurveRecord {
  std::string label;
  int genus = 0;
  ZPoly f;
  std::string field_label;
  std::string provenance;
  std::optional<CMType> cm_type;
  BigInt discriminant;
};

namespace detail {

inline json int_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return json(v.convert_to<std::int64_t>());
  return json(to_string(v));
}

inline BigInt int_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>()) : BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_bigint(j.get<std::string>());
    } catch (const domain_error&) {
    }
  }
  throw schema_error(where + ": expected an integer");
}

inline ZPoly zpoly_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw schema_error(where + ": expected a nonempty coefficient array");
  ZPoly out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline json zpoly_to_json(const ZPoly& f) {
  json a = json::array();
  for (const auto& c : f) a.push_back(int_to_json(c));
  return a;
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw schema_error(where + ": missing key '" + key + "'");
  return obj.at(key);
}

inline std::int64_t small_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw schema_error(where + ": expected an integer");
  return j.get<std::int64_t>();
}

inline std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) throw schema_error(where + ": expected a string");
  return j.get<std::string>();
}

/// Odd prime l parsed from "<prefix><l>", or empty.
inline std::optional<std::uint64_t> family_index(const std::string& label, const std::string& prefix) {
  if (label.rfind(prefix, 0) != 0 || label.size() == prefix.size() || label.size() > prefix.size() + 6) return std::nullopt;
  std::uint64_t l = 0;
  for (std::size_t i = prefix.size(); i < label.size(); ++i) {
    if (label[i] < '0' || label[i] > '9') return std::nullopt;
    l = l * 10 + static_cast<std::uint64_t>(label[i] - '0');
  }
  if (l < 3 || !is_prime(BigInt(l)) || std::to_string(l) != label.substr(prefix.size())) return std::nullopt;
  return l;
}

}  // namespace detail

/// Q(zeta_l): conductor l, trivial H, D = (-1)^((l-1)/2) l^(l-2).
inline CyclicCMField cyclotomic_field(std::uint64_t l) {
  if (l < 3 || !is_prime(BigInt(l))) throw domain_error("cyclotomic_field: l must be an odd prime");
  CyclicCMField k;
  k.label = "cyclotomic-" + std::to_string(l);
  k.two_g = static_cast<int>(l - 1);
  k.conductor = l;
  k.discriminant = boost::multiprecision::pow(BigInt(l), static_cast<unsigned>(l - 2));
  if ((l - 1) / 2 % 2 == 1) k.discriminant = -k.discriminant;
  k.defining_polys.push_back(ZPoly(l, BigInt(1)));
  return k;
}

/// y^2 = x^l - 1 with CM type {tau^e : r^e in 1..g} for the least primitive root r mod l.
inline CMCurveRecord cyclotomic_curve(std::uint64_t l) {
  const CyclicCMField k = cyclotomic_field(l);
  CMCurveRecord rec;
  rec.label = "cyclo-" + std::to_string(l);
  rec.genus = static_cast<int>((l - 1) / 2);
  rec.f.assign(l + 1, 0);
  rec.f[0] = -1;
  rec.f[l] = 1;
  rec.field_label = k.label;
  rec.provenance = "y^2 = x^" + std::to_string(l) + " - 1, CM by Z[zeta_" + std::to_string(l) + "] (Shimura-Taniyama 1961)";
  std::uint64_t r = 2;
  for (;; ++r) {
    std::uint64_t x = r, order = 1;
    while (x != 1) x = x * r % l, ++order;
    if (order == l - 1) break;
  }
  std::vector<int> exps;
  std::uint64_t x = 1;
  for (std::uint64_t e = 0; e < l - 1; ++e, x = x * r % l)
    if (x <= (l - 1) / 2) exps.push_back(static_cast<int>(e));
  rec.cm_type = CMType::from_exponents(rec.genus, exps);
  rec.discriminant = zpoly_discriminant(rec.f);
  return rec;
}

class Catalog {
 public:
  int version = kCatalogVersion;
  std::vector<CyclicCMField> fields;
  std::vector<CMCurveRecord> curves;

  /// Stored field, else a synthesized cyclotomic-l.
  CyclicCMField field(const std::string& label) const {
    for (const auto& f : fields)
      if (f.label == label) return f;
    if (auto l = detail::family_index(label, "cyclotomic-")) return cyclotomic_field(*l);
    throw missing_data("catalog: unknown field '" + label + "'");
  }

  /// Stored curve, else a synthesized cyclo-l.
  CMCurveRecord curve(const std::string& label) const {
    for (const auto& c : curves)
      if (c.label == label) return c;
    if (auto l = detail::family_index(label, "cyclo-")) return cyclotomic_curve(*l);
    throw missing_data("catalog: unknown curve '" + label + "'");
  }

  bool has_field(const std::string& label) const {
    try {
      field(label);
      return true;
    } catch (const missing_data&) {
      return false;
    }
  }
};

/// Record invariants: degree, nonzero discriminant, field of degree 2g, type genus.
inline void validate_curve(const CMCurveRecord& c, const Catalog& catalog, const std::string& where) {
  const long d = zpoly_degree(c.f);
  if (c.genus < 1 || (d != 2 * c.genus + 1 && d != 2 * c.genus + 2))
    throw schema_error(where + ": degree of f must be 2g+1 or 2g+2");
  if (c.discriminant == 0) throw schema_error(where + ": f has zero discriminant");
  if (!catalog.has_field(c.field_label)) throw schema_error(where + ": unknown field_label '" + c.field_label + "'");
  if (catalog.field(c.field_label).two_g != 2 * c.genus) throw schema_error(where + ": field degree must equal 2g");
  if (c.cm_type && c.cm_type->genus() != c.genus) throw schema_error(where + ": cm_type genus mismatch");
}

inline Catalog catalog_from_json(const json& doc) {
  Catalog cat;
  cat.version = static_cast<int>(detail::small_int(detail::require(doc, "version", "catalog"), "catalog.version"));
  if (cat.version != kCatalogVersion) throw schema_error("catalog: unsupported version " + std::to_string(cat.version));
  const json& fields = detail::require(doc, "fields", "catalog");
  const json& curves = detail::require(doc, "curves", "catalog");
  if (!fields.is_array() || !curves.is_array()) throw schema_error("catalog: fields and curves must be arrays");

  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string where = "fields[" + std::to_string(i) + "]";
    const json& j = fields[i];
    CyclicCMField k;
    k.label = detail::text(detail::require(j, "label", where), where + ".label");
    k.two_g = static_cast<int>(detail::small_int(detail::require(j, "two_g", where), where + ".two_g"));
    if (j.contains("conductor")) {
      const auto f = detail::small_int(j.at("conductor"), where + ".conductor");
      if (f < 1) throw schema_error(where + ".conductor: must be positive");
      k.conductor = static_cast<std::uint64_t>(f);
      const json& gens = detail::require(j, "H_generators", where);
      if (!gens.is_array()) throw schema_error(where + ".H_generators: expected an array");
      for (const auto& g : gens) {
        const auto h = detail::small_int(g, where + ".H_generators");
        if (h < 1) throw schema_error(where + ".H_generators: entries must be positive");
        k.h_generators.push_back(static_cast<std::uint64_t>(h));
      }
    } else if (j.contains("H_generators")) {
      throw schema_error(where + ": H_generators given without conductor");
    }
    k.discriminant = detail::int_from_json(detail::require(j, "discriminant", where), where + ".discriminant");
    const json& polys = detail::require(j, "defining_polys", where);
    if (!polys.is_array()) throw schema_error(where + ".defining_polys: expected an array");
    for (std::size_t t = 0; t < polys.size(); ++t)
      k.defining_polys.push_back(detail::zpoly_from_json(polys[t], where + ".defining_polys[" + std::to_string(t) + "]"));
    try {
      validate_field(k);
    } catch (const schema_error& e) {
      throw schema_error(where + ": " + e.what());
    }
    for (const auto& other : cat.fields)
      if (other.label == k.label) throw schema_error(where + ": duplicate label '" + k.label + "'");
    cat.fields.push_back(std::move(k));
  }

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const std::string where = "curves[" + std::to_string(i) + "]";
    const json& j = curves[i];
    CMCurveRecord c;
    c.label = detail::text(detail::require(j, "label", where), where + ".label");
    c.genus = static_cast<int>(detail::small_int(detail::require(j, "genus", where), where + ".genus"));
    c.f = detail::zpoly_from_json(detail::require(j, "f_coeffs", where), where + ".f_coeffs");
    if (c.f.back() == 0) throw schema_error(where + ".f_coeffs: leading coefficient must be nonzero");
    c.field_label = detail::text(detail::require(j, "field_label", where), where + ".field_label");
    c.provenance = detail::text(detail::require(j, "provenance", where), where + ".provenance");
    if (j.contains("cm_type")) {
      const json& t = j.at("cm_type");
      if (!t.is_array()) throw schema_error(where + ".cm_type: expected an exponent array");
      std::vector<int> e;
      for (const auto& x : t) e.push_back(static_cast<int>(detail::small_int(x, where + ".cm_type")));
      try {
        c.cm_type = CMType::from_exponents(c.genus, e);
      } catch (const domain_error& err) {
        throw schema_error(where + ".cm_type: " + err.what());
      }
    }
    c.discriminant = zpoly_discriminant(c.f);
    validate_curve(c, cat, where);
    for (const auto& other : cat.curves)
      if (other.label == c.label) throw schema_error(where + ": duplicate label '" + c.label + "'");
    cat.curves.push_back(std::move(c));
  }
  return cat;
}

inline json catalog_to_json(const Catalog& cat) {
  json doc;
  doc["version"] = cat.version;
  doc["fields"] = json::array();
  for (const auto& k : cat.fields) {
    json j;
    j["label"] = k.label;
    j["two_g"] = k.two_g;
    if (k.conductor) {
      j["conductor"] = *k.conductor;
      j["H_generators"] = k.h_generators;
    }
    j["discriminant"] = detail::int_to_json(k.discriminant);
    j["defining_polys"] = json::array();
    for (const auto& poly : k.defining_polys) j["defining_polys"].push_back(detail::zpoly_to_json(poly));
    doc["fields"].push_back(std::move(j));
  }
  doc["curves"] = json::array();
  for (const auto& c : cat.curves) {
    json j;
    j["label"] = c.label;
    j["genus"] = c.genus;
    j["f_coeffs"] = detail::zpoly_to_json(c.f);
    j["field_label"] = c.field_label;
    j["provenance"] = c.provenance;
    if (c.cm_type) j["cm_type"] = c.cm_type->exponents();
    doc["curves"].push_back(std::move(j));
  }
  return doc;
}

inline Catalog catalog_parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw schema_error(std::string("catalog: malformed JSON: ") + e.what());
  }
  return catalog_from_json(doc);
}

inline Catalog catalog_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("catalog: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return catalog_parse(buf.str());
}

inline std::string catalog_dump(const Catalog& cat, int indent = 2) { return catalog_to_json(cat).dump(indent); }

}  // namespace cmreduce
