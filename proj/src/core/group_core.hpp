#pragma once

// Finitely generated groups with canonical normal forms.
//
//   FreeAbelian(d)      Z^d, element (e_1, ..., e_d)
//   Heisenberg          (a, b, c) = x^a y^b z^c with z = x y x^-1 y^-1 central,
//                       so y x = z^-1 x y and
//                       (a,b,c)(a',b',c') = (a+a', b+b', c+c'-a'b)
//   SemidirectZ(A)      Z^k x|_A Z, element (n, b) <-> [[A^n, b], [0, 1]],
//                       (n,b)(n',b') = (n+n', b + A^n b')
//   FiniteQuotient      FreeAbelian or SemidirectZ reduced coordinatewise by
//                       moduli; only accepted when the group law descends.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "exact_linalg.hpp"

namespace gammadyn {

enum class GroupKind { FreeAbelian, Heisenberg, SemidirectZ, FiniteQuotient };

class GroupSpec;
using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

class GroupSpec {
 public:
  static GroupSpecPtr free_abelian(std::size_t rank);
  static GroupSpecPtr heisenberg();
  /// Requires |det A| = 1.
  static GroupSpecPtr semidirect_z(IntMatrix a);
  /// Moduli are per exponent coordinate; for SemidirectZ the first modulus
  /// reduces n and the rest reduce b. Throws DomainError when the group law
  /// does not descend to the quotient.
  static GroupSpecPtr finite_quotient(GroupSpecPtr base, std::vector<Int> moduli);

  GroupKind kind() const { return kind_; }
  /// Length of the exponent vector of an element.
  std::size_t exponent_length() const;
  /// FreeAbelian: d; SemidirectZ: k; FiniteQuotient: the base's rank.
  std::size_t rank() const { return rank_; }
  const IntMatrix& matrix() const { return a_; }
  const IntMatrix& matrix_inverse() const { return a_inv_; }
  const GroupSpecPtr& base() const { return base_; }
  const std::vector<Int>& moduli() const { return moduli_; }

  bool is_finite() const;
  /// Number of elements; only for finite groups.
  Int order() const;
  /// The group whose multiplication this one uses (itself unless a quotient).
  const GroupSpec& law() const { return base_ ? *base_ : *this; }

  std::string describe() const;
  bool operator==(const GroupSpec& other) const;

 private:
  GroupSpec() = default;
  GroupKind kind_ = GroupKind::FreeAbelian;
  std::size_t rank_ = 0;
  IntMatrix a_, a_inv_;
  GroupSpecPtr base_;
  std::vector<Int> moduli_;
};

bool same_group(const GroupSpecPtr& a, const GroupSpecPtr& b);

class GroupElement {
 public:
  /// Validates the length and reduces into canonical form for quotients.
  GroupElement(GroupSpecPtr spec, IntVector exponents);
  static GroupElement identity(GroupSpecPtr spec);

  const GroupSpecPtr& spec() const { return spec_; }
  const IntVector& exponents() const { return exps_; }
  bool is_identity() const;

  bool operator==(const GroupElement& o) const { return exps_ == o.exps_ && same_group(spec_, o.spec_); }
  bool operator<(const GroupElement& o) const { return exps_ < o.exps_; }

  std::string to_string() const { return gammadyn::to_string(exps_); }

 private:
  GroupSpecPtr spec_;
  IntVector exps_;
};

/// Exponent-level group law with a cache of matrix powers; used by the
/// convolution kernels. Not thread-safe: one instance per thread.
class GroupLaw {
 public:
  explicit GroupLaw(GroupSpecPtr spec);
  const GroupSpecPtr& spec() const { return spec_; }
  IntVector multiply(const IntVector& g, const IntVector& h);
  IntVector inverse(const IntVector& g);

 private:
  const IntMatrix& power(const Int& n);
  GroupSpecPtr spec_;
  std::map<Int, IntMatrix> powers_;
};

GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
GroupElement power(const GroupElement& g, long e);

/// All products of at most `radius` factors from generators and their
/// inverses, deduplicated and sorted by normal form.
std::vector<GroupElement> ball(const GroupSpecPtr& spec, const std::vector<GroupElement>& generators,
                               std::size_t radius);

/// Faithful integer matrix: SemidirectZ -> (k+1)x(k+1) block form,
/// Heisenberg -> upper unitriangular [[1,a,ab+c],[0,1,b],[0,0,1]].
IntMatrix matrix_representation(const GroupElement& g);

/// Every element of a finite group, in lexicographic order of exponents.
std::vector<GroupElement> enumerate_elements(const GroupSpecPtr& finite_spec);

/// Map an element of the base group into a quotient of it.
GroupElement reduce_into(const GroupSpecPtr& quotient, const GroupElement& g);

/// Standard generators: unit vectors for Z^d; x, y for Heisenberg;
/// (1, 0) and (0, e_i) for SemidirectZ; images of base generators for quotients.
std::vector<GroupElement> standard_generators(const GroupSpecPtr& spec);

}  // namespace gammadyn
