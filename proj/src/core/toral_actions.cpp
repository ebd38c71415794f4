#include "toral_actions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace gammadyn {

std::string to_string(StructureHint h) {
  switch (h) {
    case StructureHint::Cyclic:
      return "cyclic";
    case StructureHint::SemidirectTranslationBlock:
      return "semidirect_translation_block";
    case StructureHint::General:
      return "general";
  }
  return "general";
}

StructureHint parse_structure_hint(const std::string& s) {
  if (s == "cyclic") return StructureHint::Cyclic;
  if (s == "semidirect_translation_block") return StructureHint::SemidirectTranslationBlock;
  if (s == "general") return StructureHint::General;
  throw DomainError("unknown structure hint '" + s + "'");
}

std::string to_string(ExpansivenessStatus s) {
  switch (s) {
    case ExpansivenessStatus::Expansive:
      return "expansive";
    case ExpansivenessStatus::NonExpansive:
      return "non_expansive";
    case ExpansivenessStatus::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::string to_string(ErgodicityStatus s) {
  switch (s) {
    case ErgodicityStatus::Ergodic:
      return "ergodic";
    case ErgodicityStatus::NonErgodic:
      return "non_ergodic";
    case ErgodicityStatus::Unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

struct BlockParts {
  IntMatrix block;        // k x k
  IntMatrix translation;  // k x m
};

BlockParts split_block(const IntMatrix& g, std::size_t k) {
  const std::size_t n = g.rows(), m = n - k;
  BlockParts p{IntMatrix(k, k), IntMatrix(k, m)};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) p.block(i, j) = g(i, j);
    for (std::size_t j = 0; j < m; ++j) p.translation(i, j) = g(i, k + j);
  }
  return p;
}

IntVector pad(const IntVector& v, std::size_t offset, std::size_t n) {
  IntVector out(n);
  for (std::size_t i = 0; i < v.size(); ++i) out[offset + i] = v[i];
  return out;
}

std::vector<IntVector> unit_vectors(std::size_t n) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

std::string spectrum_summary(const IntMatrix& m, const UnitCircleSpectrum& s) {
  std::string out = "generator " + m.to_string() + ": characteristic polynomial " + s.characteristic.to_string();
  if (s.decided_by == "gcd")
    return out + "; gcd with its reciprocal is " + s.reciprocal_gcd.to_string() +
           ", so no eigenvalue has modulus 1";
  if (!s.cyclotomic_factors.empty()) {
    out += "; cyclotomic factors";
    for (const auto& f : s.cyclotomic_factors) out += " Phi_" + std::to_string(f.index);
    return out + " give roots of unity";
  }
  out += "; reciprocal part " + s.non_cyclotomic_part.to_string() + " = x^m q(x+1/x) with q(y) = " +
         s.trace_poly->to_string("y") + "; Sturm count of roots of q in [-2,2] is " +
         std::to_string(s.trace_roots.size());
  if (s.trace_roots.empty()) return out + ", so no eigenvalue has modulus 1";
  return out + " (first in (" + to_string(s.trace_roots.front().lo) + ", " + to_string(s.trace_roots.front().hi) +
         "]), so a conjugate pair of eigenvalues lies on the unit circle";
}

ExpansivenessVerdict cyclic_verdict(const IntMatrix& m) {
  ExpansivenessVerdict v;
  v.method = "cyclic_spectrum";
  UnitCircleSpectrum s = unit_circle_spectrum(m);
  v.certificate.push_back(spectrum_summary(m, s));
  if (!s.has_unit_modulus_eigenvalue) {
    v.status = ExpansivenessStatus::Expansive;
    v.certificate.push_back("every nonzero p in R^" + std::to_string(m.rows()) +
                            " has an unbounded orbit under the generator");
    return v;
  }
  v.status = ExpansivenessStatus::NonExpansive;
  if (!s.cyclotomic_factors.empty()) {
    Polynomial c = Polynomial::from_ints({1});
    Int period = 1;
    for (const auto& f : s.cyclotomic_factors) {
      c = c * cyclotomic(f.index);
      period = lcm(period, Int(static_cast<unsigned long>(f.index)));
    }
    v.witness_vectors = integer_kernel(c.evaluate(m));
    v.witness_period = period;
    IntMatrix mp = m.pow(period);
    for (const auto& w : v.witness_vectors)
      if (mp * w != w) throw InvariantError("periodic witness does not return after the period");
    v.certificate.push_back("integer points of ker(" + c.to_string("M") + ") satisfy M^" + period.get_str() +
                            " p = p, so their orbits are finite");
  } else {
    v.certificate.push_back(
        "the eigenvalue pair on the unit circle spans an invariant real plane on which the orbits are bounded");
  }
  return v;
}

std::vector<IntMatrix> with_inverses(const std::vector<IntMatrix>& gens) {
  std::vector<IntMatrix> out;
  for (const auto& g : gens) {
    out.push_back(g);
    IntMatrix inv = unimodular_inverse(g);
    if (inv != g) out.push_back(std::move(inv));
  }
  return out;
}

std::vector<Int> flat(const IntMatrix& m) {
  std::vector<Int> v;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& x : m.row(i)) v.push_back(x);
  return v;
}

constexpr std::size_t kBallElementCap = 20000;

ExpansivenessVerdict general_verdict(std::size_t n, const std::vector<IntMatrix>& gens, std::size_t depth) {
  ExpansivenessVerdict v;
  v.method = "ball_search";
  v.search_depth = depth;

  std::vector<IntMatrix> shifted;
  for (const auto& g : gens) shifted.push_back(g - IntMatrix::identity(n));
  auto fixed = gens.empty() ? unit_vectors(n) : integer_kernel(IntMatrix::vstack(shifted));
  if (!fixed.empty()) {
    v.status = ExpansivenessStatus::NonExpansive;
    v.witness_vectors = std::move(fixed);
    v.witness_period = 1;
    v.certificate.push_back("the generators have common nonzero fixed vectors (kernel of the stacked M_i - I)");
    return v;
  }

  const auto steps = with_inverses(gens);
  std::set<std::vector<Int>> seen{flat(IntMatrix::identity(n))};
  std::vector<IntMatrix> frontier{IntMatrix::identity(n)};
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<IntMatrix> next;
    for (const auto& f : frontier)
      for (const auto& s : steps) {
        IntMatrix p = f * s;
        if (!seen.insert(flat(p)).second) continue;
        UnitCircleSpectrum sp = unit_circle_spectrum(p);
        if (!sp.has_unit_modulus_eigenvalue) {
          v.status = ExpansivenessStatus::Expansive;
          v.certificate.push_back("group element of word length " + std::to_string(d) + ": " + spectrum_summary(p, sp));
          v.certificate.push_back("its cyclic subgroup already moves every nonzero p in R^" + std::to_string(n) +
                                  " along an unbounded orbit");
          v.hyperbolic_element = std::move(p);
          return v;
        }
        next.push_back(std::move(p));
        if (seen.size() > kBallElementCap) {
          v.certificate.push_back("ball search stopped after " + std::to_string(seen.size()) + " elements");
          return v;
        }
      }
    if (next.empty()) {
      v.status = ExpansivenessStatus::NonExpansive;
      v.witness_vectors = unit_vectors(n);
      v.witness_period = Int(static_cast<unsigned long>(seen.size()));
      v.certificate.push_back("the generated group closes after " + std::to_string(seen.size()) +
                              " elements, so every orbit in R^" + std::to_string(n) + " is finite");
      return v;
    }
    frontier = std::move(next);
  }
  v.certificate.push_back("no element of the radius-" + std::to_string(depth) +
                          " ball is free of unit-modulus eigenvalues; no common fixed vector; group not closed");
  return v;
}

ExpansivenessVerdict staged_verdict(const ToralActionSpec& spec, std::size_t depth) {
  const std::size_t n = spec.n, k = spec.block_split, m = n - k;
  ExpansivenessVerdict v;
  v.method = "staged_elimination";
  v.search_depth = depth;

  std::vector<IntMatrix> translations, blocks;
  bool all_translations = true;
  for (const auto& g : spec.generators) {
    auto parts = split_block(g, k);
    if (parts.block.is_identity())
      translations.push_back(parts.translation);
    else
      all_translations = false;
    blocks.push_back(parts.block);
  }

  // Stage 1: a pure translation g(u, w) = (u + b w, w) has bounded powers on
  // p = (u, w) only if b w = 0.
  std::size_t trank = 0;
  std::vector<Int> diag;
  IntMatrix stacked = translations.empty() ? IntMatrix(0, m) : IntMatrix::vstack(translations);
  if (!translations.empty()) {
    for (const auto& d : smith_normal_form(stacked).diagonal())
      if (d != 0) {
        ++trank;
        diag.push_back(d);
      }
  }
  v.certificate.push_back("stage 1: " + std::to_string(translations.size()) +
                          " pure translation generator(s); stacked translation block has rank " +
                          std::to_string(trank) + " of " + std::to_string(m) + " (SNF diagonal " + to_string(diag) +
                          ")");
  if (trank < m) {
    if (all_translations) {
      v.status = ExpansivenessStatus::NonExpansive;
      auto kernel = translations.empty() ? unit_vectors(m) : integer_kernel(stacked);
      for (const auto& w : kernel) v.witness_vectors.push_back(pad(w, k, n));
      for (const auto& e : unit_vectors(k)) v.witness_vectors.push_back(pad(e, 0, n));
      v.witness_period = 1;
      v.certificate.push_back("every generator is a translation; points (u, w) with b w = 0 are fixed");
    } else {
      v.certificate.push_back("translation coordinates are not eliminated; staged argument inconclusive");
    }
    return v;
  }
  v.certificate.push_back("=> coordinates " + std::to_string(k + 1) + ".." + std::to_string(n) +
                          " of any point with a bounded orbit vanish");
  if (k == 0) {
    v.status = ExpansivenessStatus::Expansive;
    v.certificate.push_back("no block coordinates remain; only p = 0 has a bounded orbit");
    return v;
  }

  // Stage 2: on {w = 0} every generator acts through its block B.
  std::vector<IntMatrix> distinct;
  for (const auto& b : blocks) {
    if (b.is_identity()) continue;
    bool dup = false;
    for (const auto& d : distinct)
      if (d == b || d * b == IntMatrix::identity(k)) dup = true;
    if (!dup) distinct.push_back(b);
  }
  if (distinct.empty()) {
    v.status = ExpansivenessStatus::NonExpansive;
    for (const auto& e : unit_vectors(k)) v.witness_vectors.push_back(pad(e, 0, n));
    v.witness_period = 1;
    v.certificate.push_back("stage 2: the quotient block action on R^" + std::to_string(k) +
                            " is trivial; the points (u, 0) are fixed");
    return v;
  }
  ExpansivenessVerdict inner = distinct.size() == 1 ? cyclic_verdict(distinct.front())
                                                    : general_verdict(k, distinct, depth);
  v.certificate.push_back("stage 2: quotient block action on R^" + std::to_string(k) + " via " + inner.method);
  for (const auto& c : inner.certificate) v.certificate.push_back("  " + c);
  v.status = inner.status;
  for (const auto& w : inner.witness_vectors) v.witness_vectors.push_back(pad(w, 0, n));
  v.witness_period = inner.witness_period;
  v.hyperbolic_element = inner.hyperbolic_element;
  return v;
}

// Lattice points of an echelon basis inside the box |x|_inf <= bound.
void enumerate_box(const IntMatrix& basis, const Int& bound, std::vector<IntVector>& out) {
  const std::size_t r = basis.rows(), n = basis.cols();
  std::vector<std::size_t> pivot(r);
  for (std::size_t i = 0, c = 0; i < r; ++i) {
    while (basis(i, c) == 0) ++c;
    pivot[i] = c;
  }
  IntVector acc(n);
  auto within = [&](std::size_t from, std::size_t to) {
    for (std::size_t c = from; c < to; ++c)
      if (abs(acc[c]) > bound) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == r) {
      out.push_back(acc);
      return;
    }
    const Int& p = basis(i, pivot[i]);
    const Int s = acc[pivot[i]];
    // |s + c p| <= bound, p > 0
    Int lo = -floor_div(bound + s, p);
    Int hi = floor_div(bound - s, p);
    const std::size_t next_pivot = i + 1 < r ? pivot[i + 1] : n;
    for (Int c = lo; c <= hi; ++c) {
      for (std::size_t j = 0; j < n; ++j) acc[j] += c * basis(i, j);
      if (within(pivot[i], next_pivot)) self(self, i + 1);
      for (std::size_t j = 0; j < n; ++j) acc[j] -= c * basis(i, j);
    }
  };
  rec(rec, 0);
}

Int sup_norm(const IntVector& v) {
  Int m = 0;
  for (const auto& x : v) m = std::max<Int>(m, abs(x));
  return m;
}

bool norm_lex_less(const IntVector& a, const IntVector& b) {
  Int na = sup_norm(a), nb = sup_norm(b);
  if (na != nb) return na < nb;
  return a < b;
}

std::vector<IntMatrix> transposes(const ToralActionSpec& spec) {
  std::vector<IntMatrix> t;
  for (const auto& g : spec.generators) t.push_back(g.transpose());
  return t;
}

// Forward closure; finite forward closure equals the group orbit.
std::optional<std::set<IntVector>> orbit(const std::vector<IntMatrix>& gens_t, const IntVector& chi,
                                         std::size_t cap, std::set<IntVector>* visited_on_overflow) {
  std::set<IntVector> seen{chi};
  std::deque<IntVector> queue{chi};
  while (!queue.empty()) {
    IntVector x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens_t) {
      IntVector y = g * x;
      if (seen.insert(y).second) {
        if (seen.size() > cap) {
          if (visited_on_overflow) *visited_on_overflow = std::move(seen);
          return std::nullopt;
        }
        queue.push_back(std::move(y));
      }
    }
  }
  return seen;
}

}  // namespace

void ToralActionSpec::validate() const {
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n)
      throw DomainError("generator is not " + std::to_string(n) + "x" + std::to_string(n));
    Int d = determinant(g);
    if (d != 1 && d != -1) throw DomainError("generator " + g.to_string() + " has det " + d.get_str());
  }
  if (hint == StructureHint::Cyclic && generators.size() != 1)
    throw DomainError("cyclic hint requires exactly one generator");
  if (hint == StructureHint::SemidirectTranslationBlock) {
    if (block_split > n) throw DomainError("block_split exceeds the dimension");
    const std::size_t k = block_split;
    for (const auto& g : generators)
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (g(i, j) != (i == j ? 1 : 0))
            throw DomainError("generator " + g.to_string() + " is not of the form [[B, b], [0, I]] with B of size " +
                              std::to_string(k));
  }
}

UnitCircleSpectrum unit_circle_spectrum(const IntMatrix& m) {
  UnitCircleSpectrum s;
  s.characteristic = characteristic_polynomial(m);
  s.reciprocal_gcd = gcd(s.characteristic, s.characteristic.reversed());
  s.non_cyclotomic_part = s.reciprocal_gcd;
  if (s.reciprocal_gcd.degree() <= 0) {
    s.decided_by = "gcd";
    return s;
  }
  // phi(k) >= sqrt(k/2), so any Phi_k dividing a degree-d polynomial has k <= 2 d^2.
  const unsigned long d = static_cast<unsigned long>(s.reciprocal_gcd.degree());
  Polynomial rest = s.reciprocal_gcd;
  for (unsigned long k = 1; k <= 2 * d * d + 2 && rest.degree() > 0; ++k) {
    if (euler_phi(k) > static_cast<unsigned long>(rest.degree())) continue;
    const Polynomial& phi = cyclotomic(k);
    std::size_t mult = 0;
    while (rest.degree() >= phi.degree() && (rest % phi).is_zero()) {
      rest = rest / phi;
      ++mult;
    }
    if (mult) s.cyclotomic_factors.push_back({k, mult});
  }
  s.non_cyclotomic_part = rest.monic();
  if (!s.cyclotomic_factors.empty()) {
    s.has_unit_modulus_eigenvalue = true;
    s.decided_by = "cyclotomic";
  }
  if (s.non_cyclotomic_part.degree() > 0) {
    s.trace_poly = trace_polynomial(s.non_cyclotomic_part);
    s.trace_roots = isolate_real_roots(*s.trace_poly, Rat(-2), Rat(2), Rat(1, 1 << 20));
    for (const auto& r : s.trace_roots)
      if (r.lo == r.hi && (r.lo == 2 || r.lo == -2))
        throw InvariantError("trace polynomial vanishes at +-2 after removing cyclotomic factors");
    if (!s.trace_roots.empty()) s.has_unit_modulus_eigenvalue = true;
    if (s.cyclotomic_factors.empty()) s.decided_by = "sturm";
  }
  return s;
}

Polynomial cyclotomic_part(const IntMatrix& m) {
  Polynomial p = characteristic_polynomial(m);
  Polynomial c = Polynomial::from_ints({1});
  const unsigned long n = static_cast<unsigned long>(std::max<long>(p.degree(), 0));
  for (unsigned long k = 1; k <= 2 * n * n + 2; ++k) {
    if (euler_phi(k) > n) continue;
    if ((p % cyclotomic(k)).is_zero()) c = c * cyclotomic(k);
  }
  return c;
}

AbelianGroupStructure fixed_point_group(const ToralActionSpec& spec) {
  spec.validate();
  if (spec.generators.empty()) return cokernel_structure(IntMatrix(spec.n, 0));
  std::vector<IntMatrix> blocks;
  for (const auto& g : spec.generators) blocks.push_back(g.transpose() - IntMatrix::identity(spec.n));
  return cokernel_structure(IntMatrix::hstack(blocks));
}

ExpansivenessVerdict expansiveness(const ToralActionSpec& spec, std::size_t search_depth) {
  spec.validate();
  if (search_depth < 1) throw DomainError("search_depth must be >= 1");
  switch (spec.hint) {
    case StructureHint::Cyclic:
      return cyclic_verdict(spec.generators.front());
    case StructureHint::SemidirectTranslationBlock:
      return staged_verdict(spec, search_depth);
    case StructureHint::General:
      return general_verdict(spec.n, spec.generators, search_depth);
  }
  return {};
}

std::vector<IntVector> periodic_character_lattice(const ToralActionSpec& spec) {
  spec.validate();
  if (spec.generators.empty()) return unit_vectors(spec.n);
  std::vector<IntMatrix> conditions;
  for (const auto& g : spec.generators) {
    Polynomial c = cyclotomic_part(g);
    if (c.degree() == 0) return {};
    conditions.push_back(c.evaluate(g.transpose()));
  }
  return integer_kernel(IntMatrix::vstack(conditions));
}

std::optional<std::size_t> character_orbit_size(const ToralActionSpec& spec, const IntVector& chi,
                                                std::size_t orbit_cap) {
  if (chi.size() != spec.n) throw DomainError("character has wrong length");
  auto o = orbit(transposes(spec), chi, orbit_cap, nullptr);
  if (!o) return std::nullopt;
  return o->size();
}

std::vector<FiniteOrbitCharacter> finite_orbit_characters(const ToralActionSpec& spec, long norm_bound,
                                                          std::size_t orbit_cap) {
  if (norm_bound < 1 || orbit_cap < 1) throw DomainError("bounds must be >= 1");
  auto lattice = periodic_character_lattice(spec);
  if (lattice.empty()) return {};
  std::vector<IntVector> candidates;
  enumerate_box(IntMatrix::from_rows(lattice, spec.n), Int(norm_bound), candidates);
  std::sort(candidates.begin(), candidates.end(), norm_lex_less);

  const auto gens_t = transposes(spec);
  std::map<IntVector, std::optional<std::size_t>> known;
  std::vector<FiniteOrbitCharacter> out;
  for (const auto& chi : candidates) {
    if (sup_norm(chi) == 0) continue;
    auto it = known.find(chi);
    if (it == known.end()) {
      std::set<IntVector> partial;
      auto o = orbit(gens_t, chi, orbit_cap, &partial);
      if (o) {
        for (const auto& x : *o) known[x] = o->size();
      } else {
        for (const auto& x : partial) known[x] = std::nullopt;
      }
      it = known.find(chi);
    }
    if (it->second) out.push_back({chi, *it->second});
  }
  return out;
}

ErgodicityReport ergodicity(const ToralActionSpec& spec, long norm_bound, std::size_t orbit_cap) {
  ErgodicityReport r;
  r.norm_bound = norm_bound;
  r.orbit_cap = orbit_cap;
  r.periodic_lattice = periodic_character_lattice(spec);
  r.found = finite_orbit_characters(spec, norm_bound, orbit_cap);

  if (r.found.empty() && r.periodic_lattice.empty()) {
    r.status = ErgodicityStatus::Ergodic;
    r.method = "no_periodic_characters";
  } else if (r.found.empty()) {
    // The lattice basis may lie outside the search box; its vectors are still valid certificates.
    for (const auto& b : r.periodic_lattice)
      if (auto size = character_orbit_size(spec, b, orbit_cap)) r.found.push_back({b, *size});
    r.method = "periodic_lattice_basis";
  } else {
    r.method = "character_search";
  }

  if (!r.found.empty()) {
    r.status = ErgodicityStatus::NonErgodic;
    // chi and -chi have orbits of equal size; prefer the representative whose
    // first nonzero entry is positive.
    auto positive = std::find_if(r.found.begin(), r.found.end(), [](const FiniteOrbitCharacter& f) {
      auto nz = std::find_if(f.character.begin(), f.character.end(), [](const Int& x) { return x != 0; });
      return nz != f.character.end() && *nz > 0;
    });
    r.certificate = positive != r.found.end() ? *positive : r.found.front();
    std::vector<IntVector> chars;
    for (const auto& f : r.found) chars.push_back(f.character);
    r.finite_orbit_lattice = saturate_lattice(chars, spec.n);
  } else if (r.status != ErgodicityStatus::Ergodic) {
    r.status = ErgodicityStatus::Unknown;
    r.method = "bounded_search";
  }
  r.sigma_algebra.free_rank = r.finite_orbit_lattice.size();
  return r;
}

ToralActionSpec paper_example_spec() {
  ToralActionSpec s;
  s.n = 3;
  s.hint = StructureHint::SemidirectTranslationBlock;
  s.block_split = 2;
  s.generators = {
      IntMatrix{{2, 1, 0}, {1, 1, 0}, {0, 0, 1}},
      IntMatrix{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}},
      IntMatrix{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}},
  };
  return s;
}

PaperExample paper_example(std::size_t search_depth, long norm_bound, std::size_t orbit_cap) {
  PaperExample p{paper_example_spec(), {}, {}};
  p.expansiveness = expansiveness(p.spec, search_depth);
  p.ergodicity = ergodicity(p.spec, norm_bound, orbit_cap);
  return p;
}

}  // namespace gammadyn
