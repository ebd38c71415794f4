#pragma once

// First cohomology of a finitely presented group acting on (Z/N)^k.
//
// A 1-cocycle is fixed by its values on the generators. A relator imposes one
// linear condition through the Fox expansion
//   c(s_1 ... s_l) = sum_j alpha(s_1 ... s_{j-1}) c(s_j),  c(g^-1) = -alpha(g^-1) c(g).
// Every group here is handled as a lattice quotient Z^m / Lambda so that the
// structures come out of Smith normal forms over Z.

#include <vector>

#include "exact_linalg.hpp"

namespace gammadyn {

/// Letters are signed 1-based generator indices: 2 is g_2, -2 its inverse.
using Word = std::vector<long>;

struct GroupPresentation {
  std::size_t generator_count = 0;
  std::vector<Word> relators;

  void validate() const;

  static GroupPresentation integers();     ///< <a | >
  static GroupPresentation integers_2();  ///< <a, b | [a, b]>
  /// <x, y, z | z^-1 x y x^-1 y^-1, z x z^-1 x^-1, z y z^-1 y^-1>
  static GroupPresentation heisenberg();
};

struct FiniteModuleAction {
  Int modulus;  ///< N >= 2
  std::size_t rank = 0;
  std::vector<IntMatrix> matrices;  ///< one per generator, entries reduced to [0, N)

  /// Reduces the entries and checks invertibility mod N and every relator.
  void validate(const GroupPresentation& pres);
  Int module_size() const;
};

/// Image of a word under the action, reduced mod N.
IntMatrix evaluate_word(const FiniteModuleAction& act, const Word& w);

/// c(w) for the cocycle with the given generator values, reduced mod N.
IntVector cocycle_value(const FiniteModuleAction& act, const std::vector<IntVector>& generator_values,
                        const Word& w);

/// A subgroup of X^g (values on the generators, concatenated) given by
/// integer generators, with its isomorphism type and order.
struct ModuleSubgroup {
  std::vector<IntVector> generators;
  AbelianGroupStructure structure;
  Int size;
};

ModuleSubgroup cocycle_space(const GroupPresentation& pres, const FiniteModuleAction& act);
ModuleSubgroup coboundary_space(const GroupPresentation& pres, const FiniteModuleAction& act);

struct CohomologyReport {
  Int c_size;
  Int b_size;
  AbelianGroupStructure h1;
  AbelianGroupStructure f_alpha;
  Int h1_size() const { return *h1.cardinality(); }
  Int f_size() const { return *f_alpha.cardinality(); }
};

CohomologyReport h1(const GroupPresentation& pres, const FiniteModuleAction& act);

struct LemmaCheck {
  bool extension_ok = false;  ///< |H1(alpha)| <= |H1(beta)| |H1(alpha|K)|
  bool dichotomy_ok = false;  ///< |F(beta)| <= |F(alpha)| |H1(alpha|K)|
  Int h1_alpha, h1_beta, h1_restricted;
  Int f_alpha, f_beta, f_restricted;
  CohomologyReport alpha, beta, restricted;
};

/// K is given by generators mod N; throws DomainError unless it is invariant.
LemmaCheck lemma_inequalities(const GroupPresentation& pres, const FiniteModuleAction& act,
                              const std::vector<IntVector>& k_generators);

}  // namespace gammadyn
