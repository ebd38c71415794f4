#include "group_ring.hpp"

#include "parallel.hpp"

namespace gammadyn {

namespace {

template <class Coeff>
void prune_zeros(std::map<IntVector, Coeff>& terms) {
  for (auto it = terms.begin(); it != terms.end();)
    it = it->second == 0 ? terms.erase(it) : std::next(it);
}

// Convolution of two finite-support maps under the group law of `spec`.
// The left support is split into chunks; partial sums are merged in chunk
// order, and since the arithmetic is exact the result is independent of the
// thread count.
template <class Coeff, class LeftMap, class RightMap>
std::map<IntVector, Coeff> convolve(const GroupSpecPtr& spec, const LeftMap& left, const RightMap& right) {
  std::vector<typename LeftMap::const_iterator> items;
  items.reserve(left.size());
  for (auto it = left.begin(); it != left.end(); ++it) items.push_back(it);

  std::vector<std::map<IntVector, Coeff>> partial(max_threads());
  parallel_chunks(items.size(), 64, [&](std::size_t chunk, std::size_t b, std::size_t e) {
    GroupLaw law(spec);
    auto& acc = partial[chunk];
    for (std::size_t i = b; i < e; ++i) {
      const auto& [ga, ca] = *items[i];
      for (const auto& [gb, cb] : right) acc[law.multiply(ga, gb)] += Coeff(ca) * Coeff(cb);
    }
  });
  std::map<IntVector, Coeff> out = std::move(partial[0]);
  for (std::size_t i = 1; i < partial.size(); ++i)
    for (auto& [g, c] : partial[i]) out[g] += c;
  prune_zeros(out);
  return out;
}

void require_same(const GroupSpecPtr& a, const GroupSpecPtr& b) {
  if (!same_group(a, b)) throw DomainError("group ring elements over different groups");
}

}  // namespace

GroupRingElement::GroupRingElement(GroupSpecPtr spec, Terms terms) : spec_(std::move(spec)) {
  for (auto& [g, c] : terms) add_term(g, c);
}

GroupRingElement GroupRingElement::delta(const GroupElement& g, const Int& c) {
  GroupRingElement f(g.spec());
  f.add_term(g.exponents(), c);
  return f;
}

void GroupRingElement::add_term(const IntVector& g, const Int& c) {
  if (c == 0) return;
  IntVector key = GroupElement(spec_, g).exponents();
  auto [it, inserted] = terms_.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Int GroupRingElement::coefficient(const GroupElement& g) const {
  auto it = terms_.find(g.exponents());
  return it == terms_.end() ? Int(0) : it->second;
}

Int GroupRingElement::l1_norm() const {
  Int n = 0;
  for (const auto& [g, c] : terms_) n += abs(c);
  return n;
}

Int GroupRingElement::coefficient_sum() const {
  Int n = 0;
  for (const auto& [g, c] : terms_) n += c;
  return n;
}

std::string GroupRingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [g, c] : terms_) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    Int a = abs(c);
    if (a != 1) s += a.get_str() + "*";
    s += "d" + gammadyn::to_string(g);
  }
  return s;
}

GroupRingElement ring_add(const GroupRingElement& f, const GroupRingElement& g) {
  require_same(f.spec(), g.spec());
  GroupRingElement r = f;
  for (const auto& [e, c] : g.terms()) r.add_term(e, c);
  return r;
}

GroupRingElement ring_sub(const GroupRingElement& f, const GroupRingElement& g) {
  require_same(f.spec(), g.spec());
  GroupRingElement r = f;
  for (const auto& [e, c] : g.terms()) r.add_term(e, -c);
  return r;
}

GroupRingElement ring_mul(const GroupRingElement& f, const GroupRingElement& g) {
  require_same(f.spec(), g.spec());
  return GroupRingElement(f.spec(), convolve<Int>(f.spec(), f.terms(), g.terms()));
}

GroupRingElement ring_scale(const GroupRingElement& f, const Int& s) {
  GroupRingElement r(f.spec());
  for (const auto& [e, c] : f.terms()) r.add_term(e, c * s);
  return r;
}

std::optional<GroupElement> is_lopsided(const GroupRingElement& f) {
  if (f.is_zero()) throw DomainError("is_lopsided: zero element");
  const Int total = f.l1_norm();
  // |c0| > total - |c0|  <=>  2|c0| > total; at most one term can satisfy it.
  for (const auto& [g, c] : f.terms())
    if (2 * abs(c) > total) return GroupElement(f.spec(), g);
  return std::nullopt;
}

L1Element::L1Element(GroupSpecPtr spec, Terms terms, Rat tail_bound)
    : spec_(std::move(spec)), terms_(std::move(terms)), tail_bound_(std::move(tail_bound)) {
  if (tail_bound_ < 0) throw DomainError("negative tail bound");
  for (auto& [g, c] : terms_) c.canonicalize();
  prune_zeros(terms_);
}

L1Element L1Element::from_ring(const GroupRingElement& f) {
  Terms t;
  for (const auto& [g, c] : f.terms()) t.emplace(g, Rat(c));
  return L1Element(f.spec(), std::move(t), 0);
}

Rat L1Element::coefficient(const GroupElement& g) const {
  auto it = terms_.find(g.exponents());
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat L1Element::l1_norm() const {
  Rat n = 0;
  for (const auto& [g, c] : terms_) n += abs(c);
  return n;
}

L1Element l1_mul(const L1Element& a, const L1Element& b) {
  require_same(a.spec(), b.spec());
  Rat tail = a.l1_norm() * b.tail_bound() + b.l1_norm() * a.tail_bound() + a.tail_bound() * b.tail_bound();
  return L1Element(a.spec(), convolve<Rat>(a.spec(), a.terms(), b.terms()), tail);
}

L1Element l1_sub(const L1Element& a, const L1Element& b) {
  require_same(a.spec(), b.spec());
  L1Element::Terms t = a.terms();
  for (const auto& [g, c] : b.terms()) t[g] -= c;
  return L1Element(a.spec(), std::move(t), a.tail_bound() + b.tail_bound());
}

LopsidedInverse invert_lopsided(const GroupRingElement& f, const Rat& epsilon, std::size_t max_support) {
  if (epsilon <= 0) throw DomainError("invert_lopsided: epsilon must be positive");
  auto pivot = is_lopsided(f);
  if (!pivot) throw DomainError("invert_lopsided: element is not lopsided");
  const GroupSpecPtr& spec = f.spec();
  const Int c0 = f.coefficient(*pivot);
  const GroupElement pivot_inv = inverse(*pivot);

  // f = c0 delta_g0 (delta_e - h),  h = g / c0,  g = -delta_{g0^-1} (f - c0 delta_g0).
  GroupRingElement rest = ring_sub(f, GroupRingElement::delta(*pivot, c0));
  GroupRingElement g = ring_scale(ring_mul(GroupRingElement::delta(pivot_inv), rest), -1);
  const Int abs_c0 = abs(c0);
  const Rat rho(g.l1_norm(), abs_c0);

  std::size_t order = 0;
  Rat tail = 0;
  if (rho != 0) {
    tail = rho / ((1 - rho) * abs_c0);
    while (tail > epsilon) {
      tail *= rho;
      ++order;
    }
  }

  // r = (sum_{k<=K} g^k / c0^k) delta_{g0^-1} / c0
  //   = (sum_k c0^{K-k} g^k) delta_{g0^-1} / c0^{K+1}.
  GroupRingElement term = GroupRingElement::delta(GroupElement::identity(spec));
  GroupRingElement scaled_sum(spec);
  Int c0_pow = 1;
  std::vector<GroupRingElement> powers;
  for (std::size_t k = 0; k <= order; ++k) {
    powers.push_back(term);
    if (k < order) {
      term = ring_mul(term, g);
      if (term.support_size() > max_support)
        throw DomainError("invert_lopsided: support of h^" + std::to_string(k + 1) + " exceeds " +
                          std::to_string(max_support));
    }
  }
  for (std::size_t k = powers.size(); k-- > 0;) {
    for (const auto& [e, c] : powers[k].terms()) scaled_sum.add_term(e, c * c0_pow);
    c0_pow *= c0;
  }
  // c0_pow == c0^{K+1}
  GroupLaw law(spec);
  L1Element::Terms out;
  for (const auto& [e, c] : scaled_sum.terms()) out.emplace(law.multiply(e, pivot_inv.exponents()), Rat(c, c0_pow));
  return {L1Element(spec, std::move(out), tail), *pivot, c0, rho, order};
}

namespace {

Rat residual_norm(const GroupSpecPtr& spec, const L1Element::Terms& product) {
  const IntVector e = GroupElement::identity(spec).exponents();
  Rat n = 0;
  bool saw_identity = false;
  for (const auto& [g, c] : product) {
    if (g == e) {
      n += abs(Rat(c - 1));
      saw_identity = true;
    } else {
      n += abs(c);
    }
  }
  if (!saw_identity) n += 1;
  return n;
}

}  // namespace

Rat right_residual(const GroupRingElement& f, const L1Element& r) {
  require_same(f.spec(), r.spec());
  return residual_norm(f.spec(), convolve<Rat>(f.spec(), f.terms(), r.terms()));
}

Rat left_residual(const GroupRingElement& f, const L1Element& r) {
  require_same(f.spec(), r.spec());
  return residual_norm(f.spec(), convolve<Rat>(f.spec(), r.terms(), f.terms()));
}

}  // namespace gammadyn
