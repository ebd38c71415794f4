#include "numeric.hpp"

#include <cctype>

namespace gammadyn {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Int pow10(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Int parse_int(std::string_view text) {
  text = strip(text);
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw DomainError("not an integer: '" + std::string(text) + "'");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  return Int(s, 10);
}

Rat parse_rational(std::string_view text) {
  text = strip(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  std::string_view rest = text;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    Int ex = parse_int(rest.substr(e + 1));
    if (!ex.fits_slong_p() || abs(ex) > 100000) throw DomainError("exponent out of range");
    exponent = ex.get_si();
    rest = rest.substr(0, e);
  }
  std::string_view int_part = rest, frac_part;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    int_part = rest.substr(0, dot);
    frac_part = rest.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part)))
    throw DomainError("not a rational number: '" + std::string(text) + "'");

  std::string mantissa = std::string(int_part) + std::string(frac_part);
  Int m(mantissa, 10);
  exponent -= static_cast<long>(frac_part.size());
  Rat r(m);
  if (exponent >= 0)
    r *= Rat(pow10(static_cast<unsigned long>(exponent)));
  else
    r /= Rat(pow10(static_cast<unsigned long>(-exponent)));
  r.canonicalize();
  return negative ? Rat(-r) : r;
}

std::string to_string(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

ExtendedGcd extended_gcd(const Int& a, const Int& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rat frac(const Rat& v) {
  Int fl = floor_div(v.get_num(), v.get_den());
  Rat r = v - Rat(fl);
  r.canonicalize();
  return r;
}

Rat abs(const Rat& v) { return v < 0 ? Rat(-v) : v; }

}  // namespace gammadyn
