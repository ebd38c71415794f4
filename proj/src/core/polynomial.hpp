#pragma once

// Univariate polynomials over Q, with the pieces needed to certify
// unit-circle roots exactly: characteristic polynomials, cyclotomic
// polynomials and Sturm sequences.

#include <string>
#include <vector>

#include "exact_linalg.hpp"

namespace gammadyn {

class Polynomial {
 public:
  Polynomial() = default;
  /// Coefficients from the constant term upward.
  explicit Polynomial(std::vector<Rat> coeffs);
  static Polynomial from_ints(std::initializer_list<long> low_to_high);
  static Polynomial monomial(const Rat& c, std::size_t degree);

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const Rat& leading() const { return c_.back(); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rat& s) const;
  Polynomial operator-() const { return *this * Rat(-1); }
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  struct DivMod;
  DivMod divmod(const Polynomial& d) const;
  Polynomial operator%(const Polynomial& d) const;
  Polynomial operator/(const Polynomial& d) const;

  Polynomial monic() const;
  Polynomial derivative() const;
  /// x^n p(1/x) with n = degree.
  Polynomial reversed() const;
  Rat evaluate(const Rat& x) const;
  int sign_at(const Rat& x) const;
  bool is_integral() const;
  /// Evaluate at an integer matrix; requires integral coefficients.
  IntMatrix evaluate(const IntMatrix& m) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

struct Polynomial::DivMod {
  Polynomial quotient, remainder;
};

/// Monic gcd (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// det(xI - M), monic with integer coefficients.
Polynomial characteristic_polynomial(const IntMatrix& m);

/// k-th cyclotomic polynomial.
const Polynomial& cyclotomic(std::size_t k);

unsigned long euler_phi(unsigned long k);

/// Squarefree part p / gcd(p, p'), monic.
Polynomial squarefree_part(const Polynomial& p);

/// Standard Sturm chain of p (p, p', -rem, ...).
std::vector<Polynomial> sturm_chain(const Polynomial& p);

/// Number of distinct real roots of p in the closed interval [lo, hi].
std::size_t count_real_roots(const Polynomial& p, const Rat& lo, const Rat& hi);

struct RootInterval {
  Rat lo, hi;
};
/// Disjoint intervals, each containing exactly one distinct real root of p in
/// [lo, hi], refined to width <= width. Endpoints are never roots unless lo == hi.
std::vector<RootInterval> isolate_real_roots(const Polynomial& p, const Rat& lo, const Rat& hi, const Rat& width);

/// For a palindromic p of even degree 2m, the q of degree m with
/// p(x) = x^m q(x + 1/x). Throws DomainError otherwise.
Polynomial trace_polynomial(const Polynomial& palindromic);

}  // namespace gammadyn
