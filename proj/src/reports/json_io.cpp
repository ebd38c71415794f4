#include "json_io.hpp"

namespace gammadyn::io {

const json& require(const json& obj, const std::string& key) {
  if (!obj.is_object()) throw DomainError("expected an object containing '" + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) throw DomainError("missing field '" + key + "'");
  return *it;
}

Int int_from(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Int(j.dump());
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const DomainError& e) {
      throw DomainError(what + ": " + e.what());
    }
  }
  throw DomainError(what + ": expected an integer or a decimal string");
}

Rat rat_from(const json& j, const std::string& what) {
  if (j.is_number()) return parse_rational(j.dump());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const DomainError& e) {
      throw DomainError(what + ": " + e.what());
    }
  }
  throw DomainError(what + ": expected a rational as number or string");
}

long small_int_from(const json& j, const std::string& what, long lo, long hi) {
  Int v = int_from(j, what);
  if (v < lo || v > hi) throw DomainError(what + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v.get_si();
}

IntVector vector_from(const json& j, const std::string& what) {
  if (!j.is_array()) throw DomainError(what + ": expected an array");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(int_from(j[i], what + "[" + std::to_string(i) + "]"));
  return v;
}

IntMatrix matrix_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw DomainError(what + ": expected a nonempty array of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_from(j[i], what + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size()) throw DomainError(what + ": rows have different lengths");
  }
  return IntMatrix::from_rows(rows, rows.front().size());
}

GroupSpecPtr group_spec_from(const json& j) {
  const std::string type = require(j, "type").is_string() ? j["type"].get<std::string>() : "";
  if (type == "free_abelian") return GroupSpec::free_abelian(small_int_from(require(j, "rank"), "rank", 0, 64));
  if (type == "heisenberg") return GroupSpec::heisenberg();
  if (type == "semidirect_z") {
    IntMatrix a = matrix_from(require(j, "matrix"), "matrix");
    if (j.contains("rank") && static_cast<std::size_t>(small_int_from(j["rank"], "rank", 0, 64)) != a.rows())
      throw DomainError("rank does not match the matrix size");
    return GroupSpec::semidirect_z(std::move(a));
  }
  if (type == "finite_quotient") {
    IntVector moduli = vector_from(require(j, "moduli"), "moduli");
    return GroupSpec::finite_quotient(group_spec_from(require(j, "base")), std::move(moduli));
  }
  throw DomainError("unknown group type '" + type + "'");
}

GroupRingElement ring_element_from(const json& j, const GroupSpecPtr& spec) {
  if (!j.is_array()) throw DomainError("group ring element: expected an array of {\"g\", \"c\"} terms");
  GroupRingElement f(spec);
  for (const auto& t : j) f.add_term(GroupElement(spec, vector_from(require(t, "g"), "g")).exponents(), int_from(require(t, "c"), "c"));
  return f;
}

ToralActionSpec toral_spec_from(const json& j) {
  ToralActionSpec s;
  s.n = static_cast<std::size_t>(small_int_from(require(j, "n"), "n", 1, 32));
  const json& gens = require(j, "generators");
  if (!gens.is_array()) throw DomainError("generators: expected an array of matrices");
  for (std::size_t i = 0; i < gens.size(); ++i) s.generators.push_back(matrix_from(gens[i], "generators[" + std::to_string(i) + "]"));
  if (j.contains("hint")) {
    if (!j["hint"].is_string()) throw DomainError("hint must be a string");
    s.hint = parse_structure_hint(j["hint"].get<std::string>());
  } else {
    s.hint = s.generators.size() == 1 ? StructureHint::Cyclic : StructureHint::General;
  }
  if (j.contains("block_split")) s.block_split = static_cast<std::size_t>(small_int_from(j["block_split"], "block_split", 0, 32));
  else if (s.hint == StructureHint::SemidirectTranslationBlock) throw DomainError("missing field 'block_split'");
  s.validate();
  return s;
}

GroupPresentation presentation_from(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "z") return GroupPresentation::integers();
    if (name == "z2") return GroupPresentation::integers_2();
    if (name == "heisenberg") return GroupPresentation::heisenberg();
    throw DomainError("unknown presentation '" + name + "'");
  }
  GroupPresentation p;
  p.generator_count = static_cast<std::size_t>(small_int_from(require(j, "generators"), "generators", 1, 64));
  if (j.contains("relators")) {
    if (!j["relators"].is_array()) throw DomainError("relators: expected an array of words");
    for (const auto& w : j["relators"]) {
      Word word;
      for (const auto& x : vector_from(w, "relator")) {
        if (!x.fits_slong_p()) throw DomainError("relator letter out of range");
        word.push_back(x.get_si());
      }
      p.relators.push_back(std::move(word));
    }
  }
  p.validate();
  return p;
}

FiniteModuleAction action_from(const json& j) {
  FiniteModuleAction a;
  a.modulus = int_from(require(j, "modulus"), "modulus");
  a.rank = static_cast<std::size_t>(small_int_from(require(j, "rank"), "rank", 1, 16));
  const json& ms = require(j, "matrices");
  if (!ms.is_array()) throw DomainError("matrices: expected an array");
  for (std::size_t i = 0; i < ms.size(); ++i) a.matrices.push_back(matrix_from(ms[i], "matrices[" + std::to_string(i) + "]"));
  return a;
}

json to_json(const Int& v) { return v.get_str(); }
json to_json(const Rat& v) { return gammadyn::to_string(v); }

json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json to_json(const std::vector<IntVector>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const IntMatrix& m) { return to_json(m.row_vectors()); }

json to_json(const AbelianGroupStructure& s) {
  json t = json::array();
  for (const auto& d : s.torsion) t.push_back(d.get_str());
  auto card = s.cardinality();
  return {{"torsion", t},
          {"free_rank", s.free_rank},
          {"finite", s.finite()},
          {"cardinality", card ? json(card->get_str()) : json(nullptr)},
          {"description", s.to_string()}};
}

json to_json(const GroupSpec& s) {
  switch (s.kind()) {
    case GroupKind::FreeAbelian:
      return {{"type", "free_abelian"}, {"rank", s.rank()}};
    case GroupKind::Heisenberg:
      return {{"type", "heisenberg"}};
    case GroupKind::SemidirectZ:
      return {{"type", "semidirect_z"}, {"matrix", to_json(s.matrix())}, {"rank", s.rank()}};
    case GroupKind::FiniteQuotient:
      return {{"type", "finite_quotient"}, {"base", to_json(*s.base())}, {"moduli", to_json(s.moduli())}};
  }
  return nullptr;
}

}  // namespace gammadyn::io
