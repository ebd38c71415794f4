#include "polynomial.hpp"

#include <map>
#include <mutex>

namespace gammadyn {

Polynomial::Polynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

Polynomial Polynomial::from_ints(std::initializer_list<long> low_to_high) {
  std::vector<Rat> c;
  for (long v : low_to_high) c.emplace_back(v);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::monomial(const Rat& c, std::size_t degree) {
  std::vector<Rat> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rat> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Rat& s) const {
  std::vector<Rat> r = c_;
  for (auto& x : r) x *= s;
  return Polynomial(std::move(r));
}

Polynomial::DivMod Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rat> rem = c_;
  const long dd = d.degree();
  std::vector<Rat> quo(std::max<long>(degree() - dd + 1, 0));
  for (long i = degree(); i >= dd; --i) {
    if (rem[i] == 0) continue;
    Rat f = rem[i] / d.leading();
    quo[i - dd] = f;
    for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::operator%(const Polynomial& d) const { return divmod(d).remainder; }
Polynomial Polynomial::operator/(const Polynomial& d) const { return divmod(d).quotient; }

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return *this * Rat(1 / leading());
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return Polynomial(std::move(r));
}

Polynomial Polynomial::reversed() const { return Polynomial(std::vector<Rat>(c_.rbegin(), c_.rend())); }

Rat Polynomial::evaluate(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int Polynomial::sign_at(const Rat& x) const { return sgn(evaluate(x)); }

bool Polynomial::is_integral() const {
  for (const auto& c : c_)
    if (c.get_den() != 1) return false;
  return true;
}

IntMatrix Polynomial::evaluate(const IntMatrix& m) const {
  if (!is_integral()) throw DomainError("matrix evaluation needs integral coefficients");
  IntMatrix acc(m.rows(), m.cols());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * m;
    for (std::size_t i = 0; i < m.rows(); ++i) acc(i, i) += it->get_num();
  }
  return acc;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (long i = degree(); i >= 0; --i) {
    const Rat& c = c_[i];
    if (c == 0) continue;
    Rat a = abs(c);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (i == 0 || a != 1) s += gammadyn::to_string(a);
    if (i >= 1) s += var;
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Polynomial characteristic_polynomial(const IntMatrix& m) {
  if (!m.square()) throw DomainError("characteristic polynomial of a non-square matrix");
  // Faddeev-LeVerrier; every division is exact over Z.
  const std::size_t n = m.rows();
  std::vector<Int> c(n + 1);
  c[n] = 1;
  IntMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    IntMatrix amk = m * mk;
    Int tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    Int kk = static_cast<long>(k);
    if (tr % kk != 0) throw InvariantError("Faddeev-LeVerrier: inexact division");
    c[n - k] = -tr / kk;
  }
  std::vector<Rat> r;
  for (const auto& x : c) r.emplace_back(x);
  return Polynomial(std::move(r));
}

unsigned long euler_phi(unsigned long k) {
  unsigned long result = k;
  for (unsigned long p = 2; p * p <= k; ++p) {
    if (k % p) continue;
    while (k % p == 0) k /= p;
    result -= result / p;
  }
  if (k > 1) result -= result / k;
  return result;
}

const Polynomial& cyclotomic(std::size_t k) {
  static std::mutex mu;
  static std::map<std::size_t, Polynomial> cache;
  if (k == 0) throw DomainError("cyclotomic(0)");
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  // x^k - 1 = prod_{d | k} Phi_d
  Polynomial p = Polynomial::monomial(1, k) - Polynomial::from_ints({1});
  for (std::size_t d = 1; d < k; ++d)
    if (k % d == 0) p = p / cyclotomic(d);
  std::lock_guard lock(mu);
  return cache.emplace(k, std::move(p)).first->second;
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.monic();
  return (p / gcd(p, p.derivative())).monic();
}

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Polynomial r = -(chain[chain.size() - 2] % chain.back());
    if (r.is_zero()) break;
    chain.push_back(std::move(r));
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

namespace {

std::size_t sign_variations(const std::vector<Polynomial>& chain, const Rat& x) {
  std::size_t v = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Distinct roots of the squarefree polynomial in (a, b].
std::size_t count_half_open(const std::vector<Polynomial>& chain, const Rat& a, const Rat& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

void isolate(const Polynomial& s, const std::vector<Polynomial>& chain, const Rat& a, const Rat& b,
             const Rat& width, std::vector<RootInterval>& out) {
  std::size_t n = count_half_open(chain, a, b);
  if (n == 0) return;
  if (s.sign_at(b) == 0) {
    if (n > 1) {
      Rat mid = (a + b) / 2;
      isolate(s, chain, a, mid, width, out);
      isolate(s, chain, mid, b, width, out);
      return;
    }
    out.push_back({b, b});
    return;
  }
  if (n == 1 && b - a <= width) {
    out.push_back({a, b});
    return;
  }
  Rat mid = (a + b) / 2;
  isolate(s, chain, a, mid, width, out);
  isolate(s, chain, mid, b, width, out);
}

}  // namespace

std::size_t count_real_roots(const Polynomial& p, const Rat& lo, const Rat& hi) {
  if (p.is_zero()) throw DomainError("root count of the zero polynomial");
  if (lo > hi) return 0;
  Polynomial s = squarefree_part(p);
  std::size_t at_lo = s.sign_at(lo) == 0 ? 1 : 0;
  if (lo == hi) return at_lo;
  return count_half_open(sturm_chain(s), lo, hi) + at_lo;
}

std::vector<RootInterval> isolate_real_roots(const Polynomial& p, const Rat& lo, const Rat& hi, const Rat& width) {
  if (p.is_zero()) throw DomainError("root isolation of the zero polynomial");
  std::vector<RootInterval> out;
  if (lo > hi) return out;
  Polynomial s = squarefree_part(p);
  if (s.sign_at(lo) == 0) out.push_back({lo, lo});
  if (lo == hi) return out;
  isolate(s, sturm_chain(s), lo, hi, width, out);
  return out;
}

Polynomial trace_polynomial(const Polynomial& p) {
  const long d = p.degree();
  if (d < 0 || d % 2 != 0) throw DomainError("trace_polynomial: degree must be even");
  for (long i = 0; i <= d; ++i)
    if (p.coeff(i) != p.coeff(d - i)) throw DomainError("trace_polynomial: polynomial is not palindromic");
  const long m = d / 2;
  // x^j + x^-j = P_j(x + 1/x): P_0 = 2, P_1 = y, P_{j+1} = y P_j - P_{j-1}.
  const Polynomial y = Polynomial::from_ints({0, 1});
  Polynomial prev = Polynomial::from_ints({2}), cur = y;
  Polynomial q = Polynomial(std::vector<Rat>{p.coeff(m)});
  for (long j = 1; j <= m; ++j) {
    q = q + cur * p.coeff(m + j);
    Polynomial next = y * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return q;
}

}  // namespace gammadyn
