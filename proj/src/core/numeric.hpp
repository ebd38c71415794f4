#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gammadyn {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;

/// Raised when an operation's precondition on its mathematical input fails
/// (mismatched groups, non-lopsided element, non-invariant submodule, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internally computed certificate fails to re-verify.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

Int parse_int(std::string_view text);

/// Exact parse of "p/q", "0.000001", "1e-6", "-3" into a canonical rational.
Rat parse_rational(std::string_view text);

inline std::string to_string(const Int& v) { return v.get_str(); }
std::string to_string(const Rat& v);
std::string to_string(const IntVector& v);

/// Non-negative remainder, for modulus > 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// g = s*a + t*b with g = gcd(a, b) >= 0.
struct ExtendedGcd {
  Int g, s, t;
};
ExtendedGcd extended_gcd(const Int& a, const Int& b);

/// Fractional part in [0, 1).
Rat frac(const Rat& v);

Rat abs(const Rat& v);

}  // namespace gammadyn
