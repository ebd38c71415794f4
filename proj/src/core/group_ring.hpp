#pragma once

// Integral group rings Z[G] and rational finite-support approximations of
// l1(G), with certified inversion of lopsided elements.

#include <map>
#include <optional>

#include "group_core.hpp"

namespace gammadyn {

/// f = sum c_g delta_g with finite support and no stored zero coefficients.
class GroupRingElement {
 public:
  using Terms = std::map<IntVector, Int>;

  explicit GroupRingElement(GroupSpecPtr spec) : spec_(std::move(spec)) {}
  GroupRingElement(GroupSpecPtr spec, Terms terms);
  static GroupRingElement delta(const GroupElement& g, const Int& c = 1);

  const GroupSpecPtr& spec() const { return spec_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  Int coefficient(const GroupElement& g) const;
  Int l1_norm() const;
  Int coefficient_sum() const;

  /// Adds c to the coefficient at g (exponents are normalized for quotients).
  void add_term(const IntVector& g, const Int& c);

  bool operator==(const GroupRingElement& o) const { return terms_ == o.terms_ && same_group(spec_, o.spec_); }
  std::string to_string() const;

 private:
  GroupSpecPtr spec_;
  Terms terms_;
};

GroupRingElement ring_add(const GroupRingElement& f, const GroupRingElement& g);
GroupRingElement ring_sub(const GroupRingElement& f, const GroupRingElement& g);
/// Convolution: (f g)(x) = sum_{ab = x} f(a) g(b).
GroupRingElement ring_mul(const GroupRingElement& f, const GroupRingElement& g);
GroupRingElement ring_scale(const GroupRingElement& f, const Int& s);

/// The pivot g0 with |c_g0| > sum of all other |c_g|, if there is one.
/// Throws DomainError on the zero element.
std::optional<GroupElement> is_lopsided(const GroupRingElement& f);

/// Rational finite-support element together with an l1 bound on the mass
/// the truncation dropped.
class L1Element {
 public:
  using Terms = std::map<IntVector, Rat>;

  explicit L1Element(GroupSpecPtr spec) : spec_(std::move(spec)) {}
  L1Element(GroupSpecPtr spec, Terms terms, Rat tail_bound);
  static L1Element from_ring(const GroupRingElement& f);

  const GroupSpecPtr& spec() const { return spec_; }
  const Terms& terms() const { return terms_; }
  const Rat& tail_bound() const { return tail_bound_; }
  std::size_t support_size() const { return terms_.size(); }
  Rat coefficient(const GroupElement& g) const;
  Rat l1_norm() const;

 private:
  GroupSpecPtr spec_;
  Terms terms_;
  Rat tail_bound_;
};

/// Exact product of the finite parts. Tail bound of the result is
/// |a|_1 t_b + |b|_1 t_a + t_a t_b.
L1Element l1_mul(const L1Element& a, const L1Element& b);
L1Element l1_sub(const L1Element& a, const L1Element& b);

struct LopsidedInverse {
  L1Element inverse;
  GroupElement pivot;
  Int pivot_coefficient;
  Rat rho;                        ///< |h|_1 < 1 for f = c0 delta_g0 (delta_e - h)
  std::size_t truncation_order;  ///< K: the series keeps h^0 .. h^K
};

/// Truncated Neumann series for f^{-1}, with K minimal such that
/// rho^{K+1} / ((1 - rho)|c0|) <= epsilon. That quantity is the tail bound,
/// and both |f r - delta_e|_1 and |r f - delta_e|_1 are at most rho^{K+1}.
LopsidedInverse invert_lopsided(const GroupRingElement& f, const Rat& epsilon,
                                std::size_t max_support = 4'000'000);

/// Exact |f r - delta_e|_1 and |r f - delta_e|_1.
Rat right_residual(const GroupRingElement& f, const L1Element& r);
Rat left_residual(const GroupRingElement& f, const L1Element& r);

}  // namespace gammadyn
