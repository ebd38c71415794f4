#include "group_core.hpp"

#include <deque>
#include <set>

namespace gammadyn {

namespace {

IntMatrix signed_power(const GroupSpec& s, const Int& n) {
  return n >= 0 ? s.matrix().pow(n) : s.matrix_inverse().pow(-n);
}

void require_same(const GroupElement& g, const GroupElement& h) {
  if (!same_group(g.spec(), h.spec()))
    throw DomainError("group elements belong to different groups: " + g.spec()->describe() + " vs " +
                      h.spec()->describe());
}

IntVector reduce_exponents(const GroupSpec& q, IntVector e) {
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = mod_floor(e[i], q.moduli()[i]);
  return e;
}

// Multiplication under the law of a non-quotient group.
IntVector base_multiply(const GroupSpec& s, const IntVector& g, const IntVector& h) {
  switch (s.kind()) {
    case GroupKind::FreeAbelian: {
      IntVector r(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) r[i] = g[i] + h[i];
      return r;
    }
    case GroupKind::Heisenberg:
      return {g[0] + h[0], g[1] + h[1], g[2] + h[2] - h[0] * g[1]};
    case GroupKind::SemidirectZ: {
      const std::size_t k = s.rank();
      IntVector b(h.begin() + 1, h.end());
      IntVector moved = signed_power(s, g[0]) * b;
      IntVector r(k + 1);
      r[0] = g[0] + h[0];
      for (std::size_t i = 0; i < k; ++i) r[i + 1] = g[i + 1] + moved[i];
      return r;
    }
    case GroupKind::FiniteQuotient:
      break;
  }
  throw InvariantError("base_multiply on a quotient");
}

IntVector base_inverse(const GroupSpec& s, const IntVector& g) {
  switch (s.kind()) {
    case GroupKind::FreeAbelian: {
      IntVector r(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) r[i] = -g[i];
      return r;
    }
    case GroupKind::Heisenberg:
      return {-g[0], -g[1], -g[2] - g[0] * g[1]};
    case GroupKind::SemidirectZ: {
      IntVector b(g.begin() + 1, g.end());
      IntVector moved = signed_power(s, -g[0]) * b;
      IntVector r(g.size());
      r[0] = -g[0];
      for (std::size_t i = 0; i < moved.size(); ++i) r[i + 1] = -moved[i];
      return r;
    }
    case GroupKind::FiniteQuotient:
      break;
  }
  throw InvariantError("base_inverse on a quotient");
}

}  // namespace

GroupSpecPtr GroupSpec::free_abelian(std::size_t rank) {
  auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
  s->kind_ = GroupKind::FreeAbelian;
  s->rank_ = rank;
  return s;
}

GroupSpecPtr GroupSpec::heisenberg() {
  auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
  s->kind_ = GroupKind::Heisenberg;
  s->rank_ = 3;
  return s;
}

GroupSpecPtr GroupSpec::semidirect_z(IntMatrix a) {
  if (!a.square() || a.rows() == 0) throw DomainError("semidirect_z: matrix must be square and nonempty");
  const Int det = determinant(a);
  if (det != 1 && det != -1) throw DomainError("semidirect_z: |det A| must be 1, got det = " + det.get_str());
  auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
  s->kind_ = GroupKind::SemidirectZ;
  s->rank_ = a.rows();
  s->a_inv_ = unimodular_inverse(a);
  s->a_ = std::move(a);
  return s;
}

GroupSpecPtr GroupSpec::finite_quotient(GroupSpecPtr base, std::vector<Int> moduli) {
  if (!base) throw DomainError("finite_quotient: missing base group");
  if (base->kind_ != GroupKind::FreeAbelian && base->kind_ != GroupKind::SemidirectZ)
    throw DomainError("finite_quotient: base must be free_abelian or semidirect_z");
  if (moduli.size() != base->exponent_length())
    throw DomainError("finite_quotient: expected " + std::to_string(base->exponent_length()) + " moduli");
  for (const auto& m : moduli)
    if (m < 1) throw DomainError("finite_quotient: moduli must be >= 1");

  if (base->kind_ == GroupKind::SemidirectZ) {
    // L = diag(m_1..m_k) Z^k must be A-invariant, and A^{m_0} must act
    // trivially on Z^k / L, for (n, b) -> (n mod m_0, b mod L) to be a homomorphism.
    const std::size_t k = base->rank_;
    const IntMatrix& a = base->a_;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if ((a(i, j) * moduli[j + 1]) % moduli[i + 1] != 0)
          throw DomainError("finite_quotient: translation lattice is not A-invariant");
    IntMatrix periodic = a.pow(moduli[0]) - IntMatrix::identity(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (periodic(i, j) % moduli[i + 1] != 0)
          throw DomainError("finite_quotient: A^" + moduli[0].get_str() +
                            " does not act trivially modulo the translation moduli");
  }
  auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
  s->kind_ = GroupKind::FiniteQuotient;
  s->rank_ = base->rank_;
  s->base_ = std::move(base);
  s->moduli_ = std::move(moduli);
  return s;
}

std::size_t GroupSpec::exponent_length() const {
  switch (kind_) {
    case GroupKind::FreeAbelian:
      return rank_;
    case GroupKind::Heisenberg:
      return 3;
    case GroupKind::SemidirectZ:
      return rank_ + 1;
    case GroupKind::FiniteQuotient:
      return base_->exponent_length();
  }
  return 0;
}

bool GroupSpec::is_finite() const {
  return kind_ == GroupKind::FiniteQuotient || (kind_ == GroupKind::FreeAbelian && rank_ == 0);
}

Int GroupSpec::order() const {
  if (!is_finite()) throw DomainError("order of an infinite group");
  Int n = 1;
  for (const auto& m : moduli_) n *= m;
  return n;
}

std::string GroupSpec::describe() const {
  switch (kind_) {
    case GroupKind::FreeAbelian:
      return "Z^" + std::to_string(rank_);
    case GroupKind::Heisenberg:
      return "Heisenberg";
    case GroupKind::SemidirectZ:
      return "Z^" + std::to_string(rank_) + " x| Z (A=" + a_.to_string() + ")";
    case GroupKind::FiniteQuotient:
      return "(" + base_->describe() + ") mod " + to_string(moduli_);
  }
  return "?";
}

bool GroupSpec::operator==(const GroupSpec& o) const {
  if (kind_ != o.kind_ || rank_ != o.rank_ || a_ != o.a_ || moduli_ != o.moduli_) return false;
  if (!base_ || !o.base_) return !base_ && !o.base_;
  return *base_ == *o.base_;
}

bool same_group(const GroupSpecPtr& a, const GroupSpecPtr& b) { return a == b || (a && b && *a == *b); }

GroupElement::GroupElement(GroupSpecPtr spec, IntVector exponents) : spec_(std::move(spec)), exps_(std::move(exponents)) {
  if (!spec_) throw DomainError("group element without a group");
  if (exps_.size() != spec_->exponent_length())
    throw DomainError("element " + gammadyn::to_string(exps_) + " has wrong length for " + spec_->describe());
  if (spec_->kind() == GroupKind::FiniteQuotient) exps_ = reduce_exponents(*spec_, std::move(exps_));
}

GroupElement GroupElement::identity(GroupSpecPtr spec) {
  const std::size_t n = spec->exponent_length();
  return GroupElement(std::move(spec), IntVector(n));
}

bool GroupElement::is_identity() const {
  for (const auto& e : exps_)
    if (e != 0) return false;
  return true;
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  require_same(g, h);
  return GroupElement(g.spec(), base_multiply(g.spec()->law(), g.exponents(), h.exponents()));
}

GroupElement inverse(const GroupElement& g) {
  return GroupElement(g.spec(), base_inverse(g.spec()->law(), g.exponents()));
}

GroupElement power(const GroupElement& g, long e) {
  GroupElement base = e >= 0 ? g : inverse(g);
  unsigned long k = e >= 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-(e + 1)) + 1;
  GroupElement result = GroupElement::identity(g.spec());
  while (k) {
    if (k & 1) result = multiply(result, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return result;
}

std::vector<GroupElement> ball(const GroupSpecPtr& spec, const std::vector<GroupElement>& generators,
                               std::size_t radius) {
  std::vector<GroupElement> steps;
  for (const auto& g : generators) {
    if (!same_group(spec, g.spec())) throw DomainError("ball: generator from a different group");
    steps.push_back(g);
    steps.push_back(inverse(g));
  }
  std::set<GroupElement> seen{GroupElement::identity(spec)};
  std::vector<GroupElement> frontier{GroupElement::identity(spec)};
  for (std::size_t r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<GroupElement> next;
    for (const auto& f : frontier)
      for (const auto& s : steps) {
        GroupElement p = multiply(f, s);
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

IntMatrix matrix_representation(const GroupElement& g) {
  const GroupSpec& s = *g.spec();
  const IntVector& e = g.exponents();
  switch (s.kind()) {
    case GroupKind::Heisenberg: {
      IntMatrix m = IntMatrix::identity(3);
      m(0, 1) = e[0];
      m(1, 2) = e[1];
      m(0, 2) = e[0] * e[1] + e[2];
      return m;
    }
    case GroupKind::SemidirectZ: {
      const std::size_t k = s.rank();
      IntMatrix p = signed_power(s, e[0]);
      IntMatrix m = IntMatrix::identity(k + 1);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m(i, j) = p(i, j);
        m(i, k) = e[i + 1];
      }
      return m;
    }
    default:
      throw DomainError("matrix_representation: unsupported group " + s.describe());
  }
}

std::vector<GroupElement> enumerate_elements(const GroupSpecPtr& spec) {
  if (!spec->is_finite()) throw DomainError("enumerate_elements: group is infinite");
  std::vector<GroupElement> out;
  if (spec->kind() != GroupKind::FiniteQuotient) {
    out.push_back(GroupElement::identity(spec));
    return out;
  }
  const auto& mod = spec->moduli();
  IntVector cur(mod.size());
  for (;;) {
    out.emplace_back(spec, cur);
    std::size_t i = mod.size();
    bool carry = true;
    while (i > 0 && carry) {
      --i;
      if (++cur[i] < mod[i])
        carry = false;
      else
        cur[i] = 0;
    }
    if (carry) return out;
  }
}

GroupElement reduce_into(const GroupSpecPtr& quotient, const GroupElement& g) {
  if (same_group(quotient, g.spec())) return g;
  if (quotient->kind() != GroupKind::FiniteQuotient || !same_group(quotient->base(), g.spec()))
    throw DomainError("reduce_into: " + quotient->describe() + " is not a quotient of " + g.spec()->describe());
  return GroupElement(quotient, g.exponents());
}

std::vector<GroupElement> standard_generators(const GroupSpecPtr& spec) {
  std::vector<GroupElement> gens;
  const std::size_t len = spec->exponent_length();
  if (spec->kind() == GroupKind::Heisenberg) {
    gens.emplace_back(spec, IntVector{1, 0, 0});
    gens.emplace_back(spec, IntVector{0, 1, 0});
    return gens;
  }
  for (std::size_t i = 0; i < len; ++i) {
    IntVector e(len);
    e[i] = 1;
    GroupElement g(spec, e);
    if (!g.is_identity()) gens.push_back(std::move(g));
  }
  return gens;
}

}  // namespace gammadyn

namespace gammadyn {

GroupLaw::GroupLaw(GroupSpecPtr spec) : spec_(std::move(spec)) {}

const IntMatrix& GroupLaw::power(const Int& n) {
  auto it = powers_.find(n);
  if (it == powers_.end()) it = powers_.emplace(n, signed_power(spec_->law(), n)).first;
  return it->second;
}

IntVector GroupLaw::multiply(const IntVector& g, const IntVector& h) {
  const GroupSpec& law = spec_->law();
  IntVector r;
  if (law.kind() == GroupKind::SemidirectZ) {
    const std::size_t k = law.rank();
    IntVector b(h.begin() + 1, h.end());
    IntVector moved = power(g[0]) * b;
    r.resize(k + 1);
    r[0] = g[0] + h[0];
    for (std::size_t i = 0; i < k; ++i) r[i + 1] = g[i + 1] + moved[i];
  } else {
    r = base_multiply(law, g, h);
  }
  if (spec_->kind() == GroupKind::FiniteQuotient) r = reduce_exponents(*spec_, std::move(r));
  return r;
}

IntVector GroupLaw::inverse(const IntVector& g) {
  IntVector r = base_inverse(spec_->law(), g);
  if (spec_->kind() == GroupKind::FiniteQuotient) r = reduce_exponents(*spec_, std::move(r));
  return r;
}

}  // namespace gammadyn
