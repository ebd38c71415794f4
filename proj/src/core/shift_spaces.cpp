#include "shift_spaces.hpp"

#include <map>

namespace gammadyn {

FiniteQuotientApprox regular_rep_matrix(const GroupRingElement& f, const GroupSpecPtr& quotient) {
  if (!quotient->is_finite()) throw DomainError("regular_rep_matrix needs a finite quotient, got " + quotient->describe());
  const bool direct = same_group(f.spec(), quotient);
  if (!direct && !(quotient->kind() == GroupKind::FiniteQuotient && same_group(f.spec(), quotient->base())))
    throw DomainError("element over " + f.spec()->describe() + " does not descend to " + quotient->describe());

  GroupRingElement f_bar(quotient);
  for (const auto& [g, c] : f.terms()) f_bar.add_term(g, c);

  FiniteQuotientApprox out{quotient, enumerate_elements(quotient), f_bar, IntMatrix(0, 0)};
  const std::size_t m = out.elements.size();
  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index.emplace(out.elements[i].exponents(), i);

  out.rep_matrix = IntMatrix(m, m);
  GroupLaw law(quotient);
  for (std::size_t a = 0; a < m; ++a)
    for (const auto& [h, c] : f_bar.terms()) out.rep_matrix(a, index.at(law.multiply(out.elements[a].exponents(), h))) += c;
  return out;
}

ApproxStructure approx_structure(const FiniteQuotientApprox& approx) {
  ApproxStructure s;
  s.dual = cokernel_structure(approx.rep_matrix.transpose());
  s.dimension = s.dual.free_rank;
  s.components = 1;
  for (const auto& d : s.dual.torsion) s.components *= d;
  return s;
}

AbelianGroupStructure saturation_structure(const FiniteQuotientApprox& approx) {
  const std::size_t m = approx.rep_matrix.rows();
  auto sat = saturate_lattice(approx.rep_matrix.row_vectors(), m);
  AbelianGroupStructure s = cokernel_structure(IntMatrix::from_rows(sat, m).transpose());
  if (!s.torsion.empty()) throw InvariantError("saturated lattice has torsion cokernel");
  return s;
}

HomoclinicCandidate homoclinic_point(const GroupRingElement& f, const Rat& epsilon) {
  LopsidedInverse inv = invert_lopsided(f, epsilon);
  HomoclinicCandidate h;
  h.truncation_order = inv.truncation_order;
  h.rho = inv.rho;
  h.residual_bound = epsilon * Rat(f.l1_norm());
  for (const auto& [g, c] : inv.inverse.terms()) {
    Rat x = frac(c);
    if (x != 0) h.point.emplace(g, x);
  }
  // f * point differs from f * f^-1 ~ delta_e by an integer vector; measure how
  // far each coordinate is from Z.
  L1Element product = l1_mul(L1Element::from_ring(f), L1Element(f.spec(), h.point, 0));
  h.max_distance = 0;
  for (const auto& [g, c] : product.terms()) {
    Rat r = frac(c);
    Rat d = r <= Rat(1, 2) ? r : Rat(1) - r;
    if (d > h.max_distance) h.max_distance = d;
  }
  h.verified = h.max_distance <= h.residual_bound;
  return h;
}

PrincipalExpansiveness expansive_principal(const GroupRingElement& f) {
  PrincipalExpansiveness p;
  p.pivot = is_lopsided(f);
  if (p.pivot) {
    p.expansive = true;
    p.reason = "lopsided";
  } else {
    p.reason = "not lopsided; l1 invertibility undecided";
  }
  return p;
}

}  // namespace gammadyn
