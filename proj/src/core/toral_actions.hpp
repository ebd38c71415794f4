#pragma once

// Actions of matrix groups G in GL(n, Z) on the torus T^n = R^n / Z^n.
// Points transform as x -> M x; characters chi in Z^n as chi -> M^T chi.
//
// Verdicts are certificates, never floating-point judgements:
//  * expansiveness uses the criterion "every nonzero p in R^n has an
//    unbounded orbit", decided exactly for one generator (no eigenvalue of
//    modulus one, via cyclotomic division and a Sturm count) and for the
//    translation-block class by staged elimination;
//  * ergodicity uses the dual criterion "no nonzero character has a finite
//    orbit".

#include <optional>
#include <string>
#include <vector>

#include "exact_linalg.hpp"
#include "polynomial.hpp"

namespace gammadyn {

enum class StructureHint { Cyclic, SemidirectTranslationBlock, General };

std::string to_string(StructureHint h);
StructureHint parse_structure_hint(const std::string& s);

struct ToralActionSpec {
  std::size_t n = 0;
  std::vector<IntMatrix> generators;
  StructureHint hint = StructureHint::General;
  /// Size of the B block in [[B, b], [0, I]] for the translation-block hint.
  std::size_t block_split = 0;

  /// Throws DomainError on wrong shapes, |det| != 1, or an inconsistent block split.
  void validate() const;
};

struct UnitCircleSpectrum {
  bool has_unit_modulus_eigenvalue = false;
  Polynomial characteristic;
  Polynomial reciprocal_gcd;  ///< gcd(p, x^n p(1/x))
  struct CyclotomicFactor {
    std::size_t index;         ///< k in Phi_k
    std::size_t multiplicity;  ///< in reciprocal_gcd
  };
  std::vector<CyclotomicFactor> cyclotomic_factors;
  Polynomial non_cyclotomic_part;          ///< reciprocal_gcd with cyclotomic factors removed
  std::optional<Polynomial> trace_poly;    ///< q with part(x) = x^m q(x + 1/x)
  std::vector<RootInterval> trace_roots;   ///< roots of q inside [-2, 2]
  std::string decided_by;                  ///< "gcd", "cyclotomic" or "sturm"
};

UnitCircleSpectrum unit_circle_spectrum(const IntMatrix& m);

/// Product of the distinct cyclotomic factors of the characteristic polynomial.
Polynomial cyclotomic_part(const IntMatrix& m);

/// Structure of the group F of common fixed points: the dual of
/// Z^n / sum_i (M_i^T - I) Z^n, which has the same structure.
AbelianGroupStructure fixed_point_group(const ToralActionSpec& spec);

enum class ExpansivenessStatus { Expansive, NonExpansive, Unknown };
std::string to_string(ExpansivenessStatus s);

struct ExpansivenessVerdict {
  ExpansivenessStatus status = ExpansivenessStatus::Unknown;
  std::string method;                    ///< cyclic_spectrum | staged_elimination | ball_search
  std::vector<std::string> certificate;  ///< ordered argument steps
  /// NonExpansive: nonzero integer vectors spanning points with bounded orbits.
  std::vector<IntVector> witness_vectors;
  /// When set, every generator g satisfies g^period p = p on the witnesses.
  std::optional<Int> witness_period;
  /// Expansive via ball search: group element with no eigenvalue of modulus one.
  std::optional<IntMatrix> hyperbolic_element;
  std::size_t search_depth = 0;
};

ExpansivenessVerdict expansiveness(const ToralActionSpec& spec, std::size_t search_depth);

struct FiniteOrbitCharacter {
  IntVector character;
  std::size_t orbit_size;
  bool operator==(const FiniteOrbitCharacter&) const = default;
};

/// Every nonzero chi with |chi|_inf <= norm_bound whose orbit under the
/// transposed generators closes within orbit_cap elements, sorted by
/// sup-norm then lexicographically. Characters outside the lattice of vectors
/// periodic under every single generator are skipped: their orbits are
/// provably infinite.
std::vector<FiniteOrbitCharacter> finite_orbit_characters(const ToralActionSpec& spec, long norm_bound,
                                                          std::size_t orbit_cap);

/// Size of the orbit of chi under the transposed generators, or nullopt if it
/// exceeds orbit_cap.
std::optional<std::size_t> character_orbit_size(const ToralActionSpec& spec, const IntVector& chi,
                                                std::size_t orbit_cap);

/// Saturated basis of the characters periodic under each generator separately;
/// every finite-orbit character lies in it.
std::vector<IntVector> periodic_character_lattice(const ToralActionSpec& spec);

enum class ErgodicityStatus { Ergodic, NonErgodic, Unknown };
std::string to_string(ErgodicityStatus s);

struct ErgodicityReport {
  ErgodicityStatus status = ErgodicityStatus::Unknown;
  std::string method;
  std::optional<FiniteOrbitCharacter> certificate;
  std::vector<FiniteOrbitCharacter> found;
  std::vector<IntVector> finite_orbit_lattice;   ///< saturated span of found characters
  std::vector<IntVector> periodic_lattice;       ///< exact superset of the finite-orbit module
  AbelianGroupStructure sigma_algebra;
  long norm_bound = 0;
  std::size_t orbit_cap = 0;
};

ErgodicityReport ergodicity(const ToralActionSpec& spec, long norm_bound, std::size_t orbit_cap);

struct PaperExample {
  ToralActionSpec spec;
  ExpansivenessVerdict expansiveness;
  ErgodicityReport ergodicity;
};

/// A = [[2,1],[1,1]]; G generated by blockdiag(A, 1) and the translations by
/// e1 and e2, acting on T^3. Expansive, yet it fixes the character (0,0,1).
ToralActionSpec paper_example_spec();
PaperExample paper_example(std::size_t search_depth = 8, long norm_bound = 20, std::size_t orbit_cap = 10000);

}  // namespace gammadyn
