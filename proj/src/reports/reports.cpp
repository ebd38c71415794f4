#include "reports.hpp"

#include <chrono>
#include <cstdio>

#include "shift_spaces.hpp"

namespace gammadyn::reports {

namespace {

using io::require;
using io::to_json;

constexpr std::size_t kListedCharacters = 100;
constexpr std::size_t kListedCoefficients = 5000;
constexpr std::size_t kListedMatrixSize = 32;

json options_json(const Options& o, const Rat& epsilon) {
  return {{"norm_bound", o.norm_bound},
          {"orbit_cap", o.orbit_cap},
          {"search_depth", o.depth},
          {"epsilon", to_json(epsilon)}};
}

json expansiveness_json(const ExpansivenessVerdict& v) {
  json j{{"status", to_string(v.status)},
         {"method", v.method},
         {"certificate", v.certificate},
         {"witness_vectors", to_json(v.witness_vectors)},
         {"witness_period", v.witness_period ? json(v.witness_period->get_str()) : json(nullptr)},
         {"hyperbolic_element", v.hyperbolic_element ? to_json(*v.hyperbolic_element) : json(nullptr)},
         {"bounds", {{"search_depth", v.search_depth}}}};
  return j;
}

json character_json(const FiniteOrbitCharacter& c) {
  return {{"character", to_json(c.character)}, {"orbit_size", c.orbit_size}};
}

json ergodicity_json(const ErgodicityReport& r) {
  json found = json::array();
  for (std::size_t i = 0; i < r.found.size() && i < kListedCharacters; ++i) found.push_back(character_json(r.found[i]));
  json steps = json::array();
  if (r.certificate)
    steps.push_back("character " + to_string(r.certificate->character) + " has an orbit of size " +
                    std::to_string(r.certificate->orbit_size) + " under the dual action");
  else if (r.status == ErgodicityStatus::Ergodic)
    steps.push_back("no character is periodic under every single generator, so no nonzero character has a finite orbit");
  return {{"status", to_string(r.status)},
          {"method", r.method},
          {"certificate", steps},
          {"certificate_character", r.certificate ? character_json(*r.certificate) : json(nullptr)},
          {"finite_orbit_characters", found},
          {"finite_orbit_character_count", r.found.size()},
          {"finite_orbit_lattice", to_json(r.finite_orbit_lattice)},
          {"periodic_lattice", to_json(r.periodic_lattice)},
          {"sigma_algebra", to_json(r.sigma_algebra)},
          {"bounds", {{"norm_bound", r.norm_bound}, {"orbit_cap", r.orbit_cap}}}};
}

Status toral_report(const ToralActionSpec& spec, const Options& o, json& out) {
  ExpansivenessVerdict e = expansiveness(spec, o.depth);
  ErgodicityReport g = ergodicity(spec, o.norm_bound, o.orbit_cap);
  if (g.certificate) {
    auto size = character_orbit_size(spec, g.certificate->character, o.orbit_cap);
    if (!size || *size != g.certificate->orbit_size) throw InvariantError("certificate character orbit does not re-verify");
  }
  json gens = json::array();
  for (const auto& m : spec.generators) gens.push_back(to_json(m));
  out["action"] = {{"n", spec.n}, {"generators", gens}, {"hint", to_string(spec.hint)}, {"block_split", spec.block_split}};
  out["fixed_point_group"] = to_json(fixed_point_group(spec));
  out["verdicts"] = {{"expansiveness", expansiveness_json(e)}, {"ergodicity", ergodicity_json(g)}};
  out["certificates"] = json::array();
  out["certificates"].push_back({{"kind", "expansiveness"}, {"status", to_string(e.status)}, {"steps", e.certificate}});
  if (g.certificate)
    out["certificates"].push_back({{"kind", "finite_orbit_character"}, {"character", to_json(g.certificate->character)},
                                   {"orbit_size", g.certificate->orbit_size}});
  bool unknown = e.status == ExpansivenessStatus::Unknown || g.status == ErgodicityStatus::Unknown;
  return unknown ? Status::Unknown : Status::Ok;
}

Status run_toral(const json& in, const Options& o, json& out) { return toral_report(io::toral_spec_from(in), o, out); }

Status run_paper_example(const Options& o, json& out) {
  Status s = toral_report(paper_example_spec(), o, out);
  const auto& v = out["verdicts"];
  if (v["expansiveness"]["status"] != "expansive" || v["ergodicity"]["status"] != "non_ergodic")
    throw InvariantError("the three-generator example no longer reproduces expansive and non-ergodic");
  out["example"] = {{"group", "Z^2 x|_A Z with A = [[2,1],[1,1]] acting on T^3"},
                    {"claim", "expansive but not ergodic"},
                    {"invariant_subgroup", "K = {(x, y, 0)}; the group acts trivially on T^3 / K"}};
  return s;
}

Status run_h1(const json& in, const Options&, json& out) {
  GroupPresentation pres = io::presentation_from(require(in, "presentation"));
  FiniteModuleAction act = io::action_from(require(in, "action"));
  act.validate(pres);
  CohomologyReport r = h1(pres, act);
  ModuleSubgroup c = cocycle_space(pres, act);

  json rel = json::array();
  for (const auto& w : pres.relators) rel.push_back(w);
  out["presentation"] = {{"generators", pres.generator_count}, {"relators", rel}};
  out["action"] = {{"modulus", act.modulus.get_str()}, {"rank", act.rank}, {"module_size", act.module_size().get_str()}};
  out["c_size"] = r.c_size.get_str();
  out["b_size"] = r.b_size.get_str();
  out["h1"] = to_json(r.h1);
  out["f_alpha"] = to_json(r.f_alpha);
  out["cocycle_lattice_basis"] = to_json(c.generators);
  json steps = {"cocycles: kernel of the stacked Fox matrix modulo " + act.modulus.get_str() + ", order " + r.c_size.get_str(),
                "coboundaries: image of x -> ((alpha(g_i) - I) x)_i, order " + r.b_size.get_str(),
                "|C| = |B| |H1|: " + r.c_size.get_str() + " = " + r.b_size.get_str() + " * " + r.h1_size().get_str(),
                "|B| |F| = |X|: " + r.b_size.get_str() + " * " + r.f_size().get_str() + " = " + act.module_size().get_str()};
  out["verdicts"] = {{"h1", {{"status", "finite"}, {"structure", r.h1.to_string()}, {"certificate", steps}}}};
  out["certificates"] = json::array({{{"kind", "cohomology_orders"}, {"steps", steps}}});

  if (in.contains("submodule")) {
    std::vector<IntVector> k;
    for (const auto& v : in["submodule"]) k.push_back(io::vector_from(v, "submodule"));
    LemmaCheck l = lemma_inequalities(pres, act, k);
    json numbers = {{"h1_alpha", l.h1_alpha.get_str()},   {"h1_beta", l.h1_beta.get_str()},
                    {"h1_restricted", l.h1_restricted.get_str()}, {"f_alpha", l.f_alpha.get_str()},
                    {"f_beta", l.f_beta.get_str()},       {"f_restricted", l.f_restricted.get_str()}};
    json lsteps = {"|H1(alpha)| <= |H1(beta)| |H1(alpha|K)|: " + l.h1_alpha.get_str() + " <= " + l.h1_beta.get_str() +
                       " * " + l.h1_restricted.get_str(),
                   "|F(beta)| <= |F(alpha)| |H1(alpha|K)|: " + l.f_beta.get_str() + " <= " + l.f_alpha.get_str() +
                       " * " + l.h1_restricted.get_str()};
    bool ok = l.extension_ok && l.dichotomy_ok;
    out["lemma_inequalities"] = {{"extension_ok", l.extension_ok}, {"dichotomy_ok", l.dichotomy_ok}, {"numbers", numbers}};
    out["verdicts"]["lemma_inequalities"] = {{"status", ok ? "hold" : "violated"}, {"certificate", lsteps}};
    out["certificates"].push_back({{"kind", "lemma_inequalities"}, {"steps", lsteps}});
    if (!ok) throw InvariantError("a cardinality inequality failed: " + numbers.dump());
  }
  return Status::Ok;
}

json principal_json(const PrincipalExpansiveness& p) {
  json steps = json::array();
  if (p.pivot) steps.push_back("pivot " + p.pivot->to_string() + " dominates the other coefficients, so f is invertible in l1");
  json j{{"status", p.expansive ? "expansive" : "unknown"}, {"reason", p.reason}, {"certificate", steps}};
  if (!p.expansive) j["bounds"] = {{"decided_classes", json::array({"lopsided"})}};
  return j;
}

Status run_invert(const json& in, const Options& o, json& out) {
  GroupSpecPtr spec = io::group_spec_from(require(in, "group"));
  GroupRingElement f = io::ring_element_from(require(in, "f"), spec);
  if (f.is_zero()) throw DomainError("f must be nonzero");
  Rat eps = (!o.epsilon_explicit && in.contains("epsilon")) ? io::rat_from(in["epsilon"], "epsilon") : o.epsilon;
  std::size_t max_support = in.contains("max_support")
                                ? static_cast<std::size_t>(io::small_int_from(in["max_support"], "max_support", 1, 100'000'000))
                                : 4'000'000;
  out["options"]["epsilon"] = to_json(eps);

  LopsidedInverse inv = invert_lopsided(f, eps, max_support);
  const Rat bound = eps * Rat(f.l1_norm());
  const Rat right = right_residual(f, inv.inverse), left = left_residual(f, inv.inverse);
  if (right > bound || left > bound) throw InvariantError("residual exceeds epsilon |f|_1");
  HomoclinicCandidate h = homoclinic_point(f, eps);
  if (!h.verified) throw InvariantError("homoclinic point failed its exact check");

  json coeffs = json::array();
  if (inv.inverse.support_size() <= kListedCoefficients)
    for (const auto& [g, c] : inv.inverse.terms()) coeffs.push_back({{"g", to_json(g)}, {"c", to_json(c)}});
  out["group"] = to_json(*spec);
  out["f"] = f.to_string();
  out["inverse"] = {{"pivot", to_json(inv.pivot.exponents())},
                    {"pivot_coefficient", inv.pivot_coefficient.get_str()},
                    {"rho", to_json(inv.rho)},
                    {"truncation_order", inv.truncation_order},
                    {"support_size", inv.inverse.support_size()},
                    {"tail_bound", to_json(inv.inverse.tail_bound())},
                    {"coefficients", coeffs},
                    {"coefficients_listed", inv.inverse.support_size() <= kListedCoefficients}};
  out["residual"] = {{"right", to_json(right)}, {"left", to_json(left)}, {"bound", to_json(bound)}, {"within_bound", true}};
  out["homoclinic"] = {{"support_size", h.point.size()},
                       {"max_distance_to_integers", to_json(h.max_distance)},
                       {"residual_bound", to_json(h.residual_bound)},
                       {"verified", h.verified}};
  json steps = {"f = c0 delta_g0 (delta_e - h) with c0 = " + inv.pivot_coefficient.get_str() + ", |h|_1 = " + to_string(inv.rho) + " < 1",
                "Neumann series truncated after h^" + std::to_string(inv.truncation_order) + ", tail bound " +
                    to_string(inv.inverse.tail_bound()),
                "exact |f r - delta_e|_1 = " + to_string(right) + " <= " + to_string(bound),
                "exact |r f - delta_e|_1 = " + to_string(left) + " <= " + to_string(bound)};
  out["verdicts"] = {{"invertibility", {{"status", "invertible"}, {"method", "neumann_series"}, {"certificate", steps},
                                         {"bounds", {{"epsilon", to_json(eps)}}}}},
                     {"expansive_principal", principal_json(expansive_principal(f))}};
  out["certificates"] = json::array({{{"kind", "l1_inverse"}, {"steps", steps}}});
  return Status::Ok;
}

Status run_shift(const json& in, const Options&, json& out) {
  GroupSpecPtr spec = io::group_spec_from(require(in, "group"));
  GroupSpecPtr quotient;
  if (in.contains("quotient")) quotient = io::group_spec_from(in["quotient"]);
  else if (in.contains("moduli")) quotient = GroupSpec::finite_quotient(spec, io::vector_from(in["moduli"], "moduli"));
  else if (spec->is_finite()) quotient = spec;
  else throw DomainError("shift needs 'moduli' or 'quotient' for an infinite group");
  if (quotient->order() > 4096) throw DomainError("quotient has more than 4096 elements");

  GroupRingElement f = io::ring_element_from(require(in, "f"), spec);
  if (f.is_zero()) throw DomainError("f must be nonzero");
  FiniteQuotientApprox a = regular_rep_matrix(f, quotient);
  ApproxStructure s = approx_structure(a);
  AbelianGroupStructure sat = saturation_structure(a);
  PrincipalExpansiveness p = expansive_principal(f);

  json elements = json::array();
  for (const auto& g : a.elements) elements.push_back(to_json(g.exponents()));
  out["group"] = to_json(*spec);
  out["quotient"] = to_json(*quotient);
  out["quotient_order"] = a.elements.size();
  out["elements"] = elements;
  out["f"] = f.to_string();
  out["f_bar"] = a.f_bar.to_string();
  if (a.elements.size() <= kListedMatrixSize) out["rep_matrix"] = to_json(a.rep_matrix);
  out["dimension"] = s.dimension;
  out["components"] = s.components.get_str();
  out["dual_module"] = to_json(s.dual);
  out["saturation"] = to_json(sat);
  out["uncomputed_conclusions"] = json::array();
  if (p.expansive)
    out["uncomputed_conclusions"].push_back(
        "for lopsided f the action dual to Z[Gamma]/J* is ergodic; this is a cited result and is not computed here");

  json count = {"X(f) on the quotient is dual to Z^m / (rows of the regular representation): " + s.dual.to_string(),
                "dimension " + std::to_string(s.dimension) + ", components " + s.components.get_str()};
  out["verdicts"] = {{"expansive_principal", principal_json(p)}};
  out["certificates"] = json::array({{{"kind", "quotient_count"}, {"steps", count}}});
  return p.expansive ? Status::Ok : Status::Unknown;
}

json error_report(const std::string& command, const std::string& code, const std::string& message) {
  return {{"command", command}, {"version", kVersion}, {"error", {{"code", code}, {"message", message}}}};
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"toral", "h1", "invert", "shift", "paper-example"};
  return c;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

Result run(const std::string& command, std::string_view input, const Options& options) {
  const auto start = std::chrono::steady_clock::now();
  Result res;
  try {
    if (std::find(commands().begin(), commands().end(), command) == commands().end())
      throw DomainError("unknown command '" + command + "'");
    if (options.norm_bound < 1 || options.orbit_cap < 1 || options.depth < 1 || options.epsilon <= 0)
      throw DomainError("bounds must be >= 1 and epsilon positive");

    json in = json::object();
    if (command != "paper-example") {
      try {
        in = json::parse(input);
      } catch (const json::parse_error& e) {
        throw DomainError(std::string("input is not valid JSON: ") + e.what());
      }
      if (!in.is_object()) throw DomainError("input must be a JSON object");
    }

    json out = json::object();
    out["command"] = command;
    out["version"] = kVersion;
    out["input_hash"] = hex64(fnv1a64(in.dump()));
    out["options"] = options_json(options, options.epsilon);
    if (command == "toral") res.status = run_toral(in, options, out);
    else if (command == "h1") res.status = run_h1(in, options, out);
    else if (command == "invert") res.status = run_invert(in, options, out);
    else if (command == "shift") res.status = run_shift(in, options, out);
    else res.status = run_paper_example(options, out);
    res.report = std::move(out);
  } catch (const DomainError& e) {
    res = {Status::BadInput, error_report(command, "bad_input", e.what())};
  } catch (const json::exception& e) {
    res = {Status::BadInput, error_report(command, "bad_input", e.what())};
  } catch (const InvariantError& e) {
    res = {Status::Internal, error_report(command, "internal", e.what())};
  } catch (const std::exception& e) {
    res = {Status::Internal, error_report(command, "internal", e.what())};
  }
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  res.report["wall_time_ms"] = ms;
  res.report["exit_status"] = static_cast<int>(res.status);
  return res;
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

std::vector<std::string> schema_violations(const json& r) {
  std::vector<std::string> bad;
  auto need = [&](const char* key, bool ok) {
    if (!ok) bad.push_back(std::string("field '") + key + "' missing or mistyped");
  };
  if (!r.is_object()) return {"report is not an object"};
  need("command", r.contains("command") && r["command"].is_string());
  need("version", r.contains("version") && r["version"].is_string());
  need("wall_time_ms", r.contains("wall_time_ms") && r["wall_time_ms"].is_number());
  need("exit_status", r.contains("exit_status") && r["exit_status"].is_number_integer());
  if (r.contains("error")) {
    need("error.code", r["error"].contains("code") && r["error"]["code"].is_string());
    need("error.message", r["error"].contains("message") && r["error"]["message"].is_string());
    return bad;
  }
  need("input_hash", r.contains("input_hash") && r["input_hash"].is_string() && r["input_hash"].get<std::string>().size() == 16);
  need("certificates", r.contains("certificates") && r["certificates"].is_array());
  need("verdicts", r.contains("verdicts") && r["verdicts"].is_object() && !r["verdicts"].empty());
  if (r.contains("verdicts") && r["verdicts"].is_object())
    for (const auto& [name, v] : r["verdicts"].items()) {
      if (!v.is_object() || !v.contains("status") || !v["status"].is_string()) {
        bad.push_back("verdict '" + name + "' has no status");
        continue;
      }
      bool certified = v.contains("certificate") && v["certificate"].is_array() && !v["certificate"].empty();
      bool bounded = v.contains("bounds") && v["bounds"].is_object();
      if (!certified && !bounded) bad.push_back("verdict '" + name + "' carries neither a certificate nor bounds");
    }
  return bad;
}

}  // namespace gammadyn::reports
