#pragma once

// Principal actions X(f) = {x in T^G : x f = 0} modelled on finite quotients
// G of the acting group, plus homoclinic points built from l1 inverses.

#include <optional>

#include "group_ring.hpp"

namespace gammadyn {

struct FiniteQuotientApprox {
  GroupSpecPtr quotient;
  std::vector<GroupElement> elements;  ///< lexicographic on reduced exponents
  GroupRingElement f_bar;              ///< f pushed to Z[G]
  /// rep(a, b) = f_bar(g_a^-1 g_b): row a is delta_{g_a} f_bar, so the
  /// matrix acts on row vectors by right multiplication with f_bar.
  IntMatrix rep_matrix;
};

/// f may live over G itself or over the base group of the finite quotient G.
FiniteQuotientApprox regular_rep_matrix(const GroupRingElement& f, const GroupSpecPtr& quotient);

struct ApproxStructure {
  std::size_t dimension = 0;
  Int components;  ///< number of connected components (points when dimension is 0)
  AbelianGroupStructure dual;  ///< Z[G] / Z[G] f_bar
};

ApproxStructure approx_structure(const FiniteQuotientApprox& approx);

/// Z[G] / (saturation of Z[G] f_bar): always torsion free.
AbelianGroupStructure saturation_structure(const FiniteQuotientApprox& approx);

struct HomoclinicCandidate {
  std::map<IntVector, Rat> point;  ///< fractional parts in [0, 1), zeros omitted
  Rat residual_bound;              ///< epsilon |f|_1
  Rat max_distance;                ///< largest distance of a coordinate of f * point to Z
  bool verified = false;           ///< max_distance <= residual_bound
  std::size_t truncation_order = 0;
  Rat rho;
};

HomoclinicCandidate homoclinic_point(const GroupRingElement& f, const Rat& epsilon);

struct PrincipalExpansiveness {
  std::optional<bool> expansive;  ///< nullopt when undecided
  std::string reason;
  std::optional<GroupElement> pivot;
};

PrincipalExpansiveness expansive_principal(const GroupRingElement& f);

}  // namespace gammadyn
