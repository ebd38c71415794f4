#include "cohomology.hpp"

#include <cstdlib>

namespace gammadyn {

void GroupPresentation::validate() const {
  if (generator_count < 1) throw DomainError("presentation needs at least one generator");
  for (const auto& r : relators) {
    if (r.empty()) throw DomainError("empty relator");
    for (long a : r)
      if (a == 0 || static_cast<std::size_t>(std::labs(a)) > generator_count)
        throw DomainError("relator letter " + std::to_string(a) + " out of range");
  }
}

GroupPresentation GroupPresentation::integers() { return {1, {}}; }
GroupPresentation GroupPresentation::integers_2() { return {2, {{1, 2, -1, -2}}}; }
GroupPresentation GroupPresentation::heisenberg() {
  return {3, {{-3, 1, 2, -1, -2}, {3, 1, -3, -1}, {3, 2, -3, -2}}};
}

Int FiniteModuleAction::module_size() const {
  Int s = 1;
  for (std::size_t i = 0; i < rank; ++i) s *= modulus;
  return s;
}

namespace {

// X = Z^k / Lambda with Lambda of full rank; every action matrix preserves
// Lambda, and invs[i] induces the inverse of mats[i] on X.
struct LatticeModule {
  std::size_t k = 0;
  IntMatrix relations;  // echelon rows spanning Lambda
  std::vector<IntMatrix> mats, invs;
  Int exponent;  // |Z^k / Lambda|, which annihilates X
};

IntMatrix inverse_letter(const FiniteModuleAction& act, std::size_t i) { return inverse_mod(act.matrices[i], act.modulus); }

LatticeModule top_module(const FiniteModuleAction& act) {
  LatticeModule m;
  m.k = act.rank;
  IntMatrix rel = IntMatrix::identity(act.rank);
  for (std::size_t i = 0; i < act.rank; ++i) rel(i, i) = act.modulus;
  m.relations = rel;
  m.mats = act.matrices;
  for (std::size_t i = 0; i < act.matrices.size(); ++i) m.invs.push_back(inverse_letter(act, i));
  m.exponent = act.module_size();
  return m;
}

IntMatrix reduce(const IntMatrix& m, const Int& e) { return m.mod(e); }

// Fox matrix: rows are relators times k, columns generators times k.
IntMatrix fox_matrix(const GroupPresentation& pres, const LatticeModule& mod) {
  const std::size_t k = mod.k, g = pres.generator_count;
  IntMatrix d(pres.relators.size() * k, g * k);
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    IntMatrix prefix = IntMatrix::identity(k);
    for (long letter : pres.relators[r]) {
      const std::size_t a = static_cast<std::size_t>(std::labs(letter)) - 1;
      IntMatrix contribution = letter > 0 ? prefix : IntMatrix(k, k) - prefix * mod.invs[a];
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) d(r * k + i, a * k + j) += contribution(i, j);
      prefix = reduce(prefix * (letter > 0 ? mod.mats[a] : mod.invs[a]), mod.exponent);
    }
  }
  return reduce(d, mod.exponent);
}

// {c in Z^cols : a c in Lambda^blocks}, as an echelon basis.
IntMatrix preimage(const IntMatrix& a, const LatticeModule& mod, std::size_t blocks) {
  const std::size_t cols = a.cols();
  if (a.rows() == 0) return IntMatrix::identity(cols);
  IntMatrix neg_rel = IntMatrix(mod.k, mod.relations.rows()) - mod.relations.transpose();
  std::vector<IntMatrix> diag(blocks, neg_rel);
  IntMatrix system = IntMatrix::hstack(std::vector<IntMatrix>{a, IntMatrix::block_diagonal(diag)});
  std::vector<IntVector> projected;
  for (const auto& v : integer_kernel(system)) projected.emplace_back(v.begin(), v.begin() + static_cast<long>(cols));
  return hermite_basis(IntMatrix::from_rows(projected, cols));
}

std::vector<IntVector> relation_blocks(const LatticeModule& mod, std::size_t blocks) {
  std::vector<IntVector> out;
  for (std::size_t b = 0; b < blocks; ++b)
    for (const auto& r : mod.relations.row_vectors()) {
      IntVector v(blocks * mod.k);
      std::copy(r.begin(), r.end(), v.begin() + static_cast<long>(b * mod.k));
      out.push_back(std::move(v));
    }
  return out;
}

struct Spaces {
  IntMatrix cocycles;                  // echelon, contains Lambda^g
  std::vector<IntVector> coboundaries;  // generators, including Lambda^g
  std::vector<IntVector> lambda_g;
};

Spaces spaces(const GroupPresentation& pres, const LatticeModule& mod) {
  const std::size_t k = mod.k, g = pres.generator_count;
  Spaces s;
  s.cocycles = preimage(fox_matrix(pres, mod), mod, pres.relators.size());
  s.lambda_g = relation_blocks(mod, g);
  for (std::size_t j = 0; j < k; ++j) {
    IntVector v(g * k);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t r = 0; r < k; ++r) v[i * k + r] = mod.mats[i](r, j) - (r == j ? 1 : 0);
    s.coboundaries.push_back(std::move(v));
  }
  s.coboundaries.insert(s.coboundaries.end(), s.lambda_g.begin(), s.lambda_g.end());
  return s;
}

AbelianGroupStructure fixed_points(const LatticeModule& mod) {
  std::vector<IntMatrix> shifted;
  for (const auto& m : mod.mats) shifted.push_back(m - IntMatrix::identity(mod.k));
  IntMatrix f = shifted.empty() ? IntMatrix::identity(mod.k) : preimage(IntMatrix::vstack(shifted), mod, shifted.size());
  return quotient_structure(f, mod.relations);
}

CohomologyReport report(const GroupPresentation& pres, const LatticeModule& mod) {
  const std::size_t cols = pres.generator_count * mod.k;
  Spaces s = spaces(pres, mod);
  IntMatrix lambda_g = IntMatrix::from_rows(s.lambda_g, cols);
  IntMatrix b_gens = IntMatrix::from_rows(s.coboundaries, cols);

  CohomologyReport r;
  r.c_size = *quotient_structure(s.cocycles, lambda_g).cardinality();
  r.b_size = *quotient_structure(hermite_basis(b_gens), lambda_g).cardinality();
  r.h1 = quotient_structure(s.cocycles, b_gens);
  r.f_alpha = fixed_points(mod);
  if (r.c_size != r.b_size * r.h1_size())
    throw InvariantError("|C| != |B| |H1| (" + r.c_size.get_str() + " vs " + r.b_size.get_str() + " * " +
                         r.h1_size().get_str() + ")");
  if (r.b_size * r.f_size() != mod.exponent)
    throw InvariantError("|B| |F| != |X| for the coboundary map");
  return r;
}

IntMatrix column_coordinates(const IntMatrix& basis, const IntMatrix& m, const char* what) {
  // Matrix T with basis^T T = m basis^T: coordinates of m applied to each basis row.
  const std::size_t k = basis.rows();
  IntMatrix t(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    auto c = lattice_coordinates(basis, m * basis.row_vector(j));
    if (!c) throw DomainError(std::string("submodule K is not invariant under ") + what);
    for (std::size_t i = 0; i < k; ++i) t(i, j) = (*c)[i];
  }
  return t;
}

}  // namespace

void FiniteModuleAction::validate(const GroupPresentation& pres) {
  pres.validate();
  if (modulus < 2) throw DomainError("modulus must be >= 2");
  if (rank < 1) throw DomainError("rank must be >= 1");
  if (matrices.size() != pres.generator_count)
    throw DomainError("expected " + std::to_string(pres.generator_count) + " matrices, got " +
                      std::to_string(matrices.size()));
  for (auto& m : matrices) {
    if (m.rows() != rank || m.cols() != rank) throw DomainError("action matrix has wrong shape");
    m = m.mod(modulus);
    if (gcd(determinant(m), modulus) != 1)
      throw DomainError("matrix " + m.to_string() + " is not invertible mod " + modulus.get_str());
  }
  for (const auto& r : pres.relators)
    if (!evaluate_word(*this, r).is_identity())
      throw DomainError("relator " + to_string(IntVector(r.begin(), r.end())) + " does not act trivially");
}

IntMatrix evaluate_word(const FiniteModuleAction& act, const Word& w) {
  IntMatrix p = IntMatrix::identity(act.rank);
  for (long letter : w) {
    const std::size_t a = static_cast<std::size_t>(std::labs(letter)) - 1;
    p = (p * (letter > 0 ? act.matrices[a] : inverse_letter(act, a))).mod(act.modulus);
  }
  return p;
}

IntVector cocycle_value(const FiniteModuleAction& act, const std::vector<IntVector>& values, const Word& w) {
  IntVector c(act.rank);
  IntMatrix prefix = IntMatrix::identity(act.rank);
  for (long letter : w) {
    const std::size_t a = static_cast<std::size_t>(std::labs(letter)) - 1;
    if (letter > 0) {
      IntVector t = prefix * values[a];
      for (std::size_t i = 0; i < act.rank; ++i) c[i] += t[i];
      prefix = (prefix * act.matrices[a]).mod(act.modulus);
    } else {
      prefix = (prefix * inverse_letter(act, a)).mod(act.modulus);
      IntVector t = prefix * values[a];
      for (std::size_t i = 0; i < act.rank; ++i) c[i] -= t[i];
    }
  }
  for (auto& x : c) x = mod_floor(x, act.modulus);
  return c;
}

ModuleSubgroup cocycle_space(const GroupPresentation& pres, const FiniteModuleAction& act) {
  const LatticeModule mod = top_module(act);
  Spaces s = spaces(pres, mod);
  ModuleSubgroup out;
  out.generators = s.cocycles.row_vectors();
  out.structure = quotient_structure(s.cocycles, IntMatrix::from_rows(s.lambda_g, s.cocycles.cols()));
  out.size = *out.structure.cardinality();
  return out;
}

ModuleSubgroup coboundary_space(const GroupPresentation& pres, const FiniteModuleAction& act) {
  const LatticeModule mod = top_module(act);
  Spaces s = spaces(pres, mod);
  const std::size_t cols = pres.generator_count * act.rank;
  IntMatrix basis = hermite_basis(IntMatrix::from_rows(s.coboundaries, cols));
  ModuleSubgroup out;
  out.generators = basis.row_vectors();
  out.structure = quotient_structure(basis, IntMatrix::from_rows(s.lambda_g, cols));
  out.size = *out.structure.cardinality();
  return out;
}

CohomologyReport h1(const GroupPresentation& pres, const FiniteModuleAction& act) {
  return report(pres, top_module(act));
}

LemmaCheck lemma_inequalities(const GroupPresentation& pres, const FiniteModuleAction& act,
                              const std::vector<IntVector>& k_generators) {
  const std::size_t k = act.rank;
  std::vector<IntVector> gens = k_generators;
  for (const auto& v : gens)
    if (v.size() != k) throw DomainError("submodule generator has wrong length");
  for (std::size_t i = 0; i < k; ++i) {
    IntVector e(k);
    e[i] = act.modulus;
    gens.push_back(std::move(e));
  }
  const IntMatrix kt = hermite_basis(IntMatrix::from_rows(gens, k));  // preimage of K in Z^k

  const LatticeModule alpha = top_module(act);

  LatticeModule beta = alpha;
  beta.relations = kt;
  beta.exponent = abs(determinant(kt));

  LatticeModule restricted;
  restricted.k = k;
  for (std::size_t i = 0; i < alpha.mats.size(); ++i) {
    restricted.mats.push_back(column_coordinates(kt, alpha.mats[i], "the action"));
    restricted.invs.push_back(column_coordinates(kt, alpha.invs[i], "the inverse action"));
  }
  std::vector<IntVector> rel;
  for (const auto& r : alpha.relations.row_vectors()) rel.push_back(*lattice_coordinates(kt, r));
  restricted.relations = hermite_basis(IntMatrix::from_rows(rel, k));
  restricted.exponent = abs(determinant(restricted.relations));

  LemmaCheck out;
  out.alpha = report(pres, alpha);
  out.beta = report(pres, beta);
  out.restricted = report(pres, restricted);
  out.h1_alpha = out.alpha.h1_size();
  out.h1_beta = out.beta.h1_size();
  out.h1_restricted = out.restricted.h1_size();
  out.f_alpha = out.alpha.f_size();
  out.f_beta = out.beta.f_size();
  out.f_restricted = out.restricted.f_size();
  out.extension_ok = out.h1_alpha <= out.h1_beta * out.h1_restricted;
  out.dichotomy_ok = out.f_beta <= out.f_alpha * out.h1_restricted;
  return out;
}

}  // namespace gammadyn
