#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "chainmf/collection.hpp"
#include "chainmf/errors.hpp"
#include "chainmf/factorization.hpp"
#include "chainmf/quiver.hpp"
#include "chainmf/verify.hpp"

namespace chainmf {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.3.0";

namespace detail {

// Integers that fit in 64 bits are plain JSON numbers, larger ones decimal strings.
inline Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
  return z.get_str();
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad integer '" + j.get<std::string>() + "'");
    return z;
  }
  throw ParseError("expected an integer");
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

/// [[exponents, num, den], ...] in graded lexicographic order.
inline Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms())
    out.push_back(Json::array({m, detail::integer_to_json(c.get_num()), detail::integer_to_json(c.get_den())}));
  return out;
}

inline Polynomial polynomial_from_json(const Json& j, std::size_t variables) {
  if (!j.is_array()) throw ParseError("polynomial must be a term list");
  Polynomial p(variables);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw ParseError("term must be [exponents, num, den]");
    const auto m = t[0].get<Monomial>();
    if (m.size() != variables) throw ParseError("monomial has wrong number of variables");
    const Integer den = detail::integer_from_json(t[2]);
    if (den <= 0) throw ParseError("denominator must be positive");
    Rational c(detail::integer_from_json(t[1]), den);
    c.canonicalize();
    p.add_term(m, c);
  }
  return p;
}

inline Json to_json(const PolyMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

inline PolyMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, std::size_t variables) {
  if (!j.is_array() || j.size() != rows) throw ParseError("matrix has wrong number of rows");
  PolyMatrix m(rows, cols, variables);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("matrix has wrong number of columns");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = polynomial_from_json(j[r][c], variables);
  }
  return m;
}

inline Json to_json(const GroupElement& e) { return e.coords(); }

inline GroupElement group_element_from_json(const Json& j, const GroupPtr& g) {
  auto c = j.get<std::vector<std::int64_t>>();
  if (c.size() != g->coord_count()) throw ParseError("group element has wrong number of coordinates");
  auto e = g->normalize(c);
  if (e.coords() != c) throw ParseError("torsion coordinate out of range");
  return e;
}

inline Json grading_to_json(const GradedRing& ring) {
  const auto& g = *ring.group();
  Json degrees = Json::array();
  for (const auto& d : ring.variable_degrees()) degrees.push_back(to_json(d));
  return Json{{"rank", g.rank()},
              {"torsion", g.torsion_invariants()},
              {"variable_degrees", std::move(degrees)},
              {"potential_degree", to_json(ring.potential_degree())}};
}

/// Twists are canonical group coordinates; the ring is recorded through its exponents.
inline Json to_json(const MatrixFactorization& F) {
  auto twists = [](const FreeModule& M) {
    Json out = Json::array();
    for (const auto& t : M.twists) out.push_back(to_json(t));
    return out;
  };
  Json out;
  out["schema_version"] = kSchemaVersion;
  if (F.ring()->exponents()) out["exponents"] = *F.ring()->exponents();
  out["potential"] = to_json(F.potential());
  out["m1"] = twists(F.m1());
  out["m0"] = twists(F.m0());
  out["phi1"] = to_json(F.phi1());
  out["phi0"] = to_json(F.phi0());
  return out;
}

inline MatrixFactorization factorization_from_json(const Json& j, const RingPtr& ring) {
  if (detail::field(j, "schema_version").get<int>() != kSchemaVersion) throw ParseError("unsupported schema version");
  const auto v = ring->variables();
  auto twists = [&](const Json& a) {
    if (!a.is_array()) throw ParseError("twist list must be an array");
    FreeModule M;
    for (const auto& t : a) M.twists.push_back(group_element_from_json(t, ring->group()));
    return M;
  };
  FreeModule m1 = twists(detail::field(j, "m1")), m0 = twists(detail::field(j, "m0"));
  auto phi1 = matrix_from_json(detail::field(j, "phi1"), m0.rank(), m1.rank(), v);
  auto phi0 = matrix_from_json(detail::field(j, "phi0"), m1.rank(), m0.rank(), v);
  return MatrixFactorization(ring, polynomial_from_json(detail::field(j, "potential"), v), std::move(m1), std::move(m0),
                             std::move(phi1), std::move(phi0));
}

/// Rebuilds the chain ring from the recorded exponents.
inline MatrixFactorization factorization_from_json(const Json& j) {
  const auto a = detail::field(j, "exponents").get<std::vector<int>>();
  return factorization_from_json(j, GradedRing::chain(a));
}

inline std::string to_string(Origin::Kind k) {
  switch (k) {
    case Origin::Kind::Base: return "base";
    case Origin::Kind::Psi: return "psi";
    case Origin::Kind::Phi: return "phi";
  }
  return "?";
}

inline Json to_json(const HomTable& h) {
  Json out = Json::array();
  for (std::size_t s = 0; s < h.size(); ++s) {
    Json row = Json::array();
    for (std::size_t t = 0; t < h.size(); ++t) {
      const auto& e = h.entry(s, t);
      Json window = e.window_lo > e.window_hi ? Json(nullptr) : Json::array({e.window_lo, e.window_hi});
      row.push_back(Json{{"window", std::move(window)}, {"from", e.from}, {"dims", e.dims}});
    }
    out.push_back(std::move(row));
  }
  return out;
}

/// hom[s][t] holds dims of Hom(E_s, E_t[l]) for l = from, from + 1, ...
inline Json collection_to_json(const Collection& c, const HomTable& h) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["exponents"] = c.exponents();
  out["grading"] = grading_to_json(*c[0].ring());
  Json labels = Json::array(), objects = Json::array();
  for (const auto& o : c.objects()) {
    labels.push_back(o.label);
    Json obj = to_json(*o.object);
    obj.erase("schema_version");
    obj.erase("exponents");
    objects.push_back(Json{{"label", o.label},
                           {"origin", {{"kind", to_string(o.origin.kind)}, {"index", o.origin.index}, {"parent", o.origin.parent}}},
                           {"factorization", std::move(obj)}});
  }
  out["labels"] = std::move(labels);
  out["objects"] = std::move(objects);
  out["hom"] = to_json(h);
  return out;
}

inline Json to_json(const Quiver& q) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["exponents"] = q.exponents;
  out["vertices"] = q.vertices;
  Json arrows = Json::array();
  for (const auto& a : q.arrows)
    arrows.push_back(Json{{"source", a.source},
                          {"target", a.target},
                          {"kind", to_string(a.kind)},
                          {"index", a.index},
                          {"base", a.base},
                          {"label", a.label}});
  out["arrows"] = std::move(arrows);
  Json rels = Json::array();
  for (const auto& r : q.relations)
    rels.push_back(Json{{"kind", r.kind == Relation::Kind::Null ? "null" : "comm"},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"family", r.family}});
  out["relations"] = std::move(rels);
  return out;
}

inline std::string export_json(const Quiver& q) { return to_json(q).dump(2) + "\n"; }

inline Quiver quiver_from_json(const Json& j) {
  if (detail::field(j, "schema_version").get<int>() != kSchemaVersion) throw ParseError("unsupported schema version");
  Quiver q;
  try {
    q.exponents = detail::field(j, "exponents").get<std::vector<int>>();
    q.vertices = detail::field(j, "vertices").get<std::vector<std::string>>();
    for (const auto& a : detail::field(j, "arrows"))
      q.arrows.push_back({detail::field(a, "source").get<std::size_t>(), detail::field(a, "target").get<std::size_t>(),
                          arrow_kind_from_string(detail::field(a, "kind").get<std::string>()),
                          detail::field(a, "index").get<int>(), detail::field(a, "base").get<std::size_t>(),
                          detail::field(a, "label").get<std::string>()});
    for (const auto& r : detail::field(j, "relations")) {
      const auto kind = detail::field(r, "kind").get<std::string>();
      if (kind != "null" && kind != "comm") throw ParseError("unknown relation kind '" + kind + "'");
      q.relations.push_back({kind == "null" ? Relation::Kind::Null : Relation::Kind::Comm,
                             detail::field(r, "lhs").get<Path>(), detail::field(r, "rhs").get<Path>(),
                             detail::field(r, "family").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  check_quiver(q);
  return q;
}

inline Quiver parse_quiver(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  return quiver_from_json(j);
}

inline Json to_json(const Counterexample& c) {
  return Json{{"source", c.source}, {"target", c.target}, {"shift", c.shift},
              {"expected", c.expected}, {"found", c.found}, {"note", c.note}};
}

inline Json to_json(const CheckResult& r) {
  Json ce = Json::array();
  for (const auto& c : r.counterexamples) ce.push_back(to_json(c));
  return Json{{"name", r.name},
              {"pass", r.pass()},
              {"cases", r.cases},
              {"counterexamples", std::move(ce)},
              {"warnings", r.warnings}};
}

}  // namespace chainmf
