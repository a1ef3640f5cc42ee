#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lcp/errors.hpp"

namespace lcp {

/// Exact scalar. GMP keeps every result in lowest terms with a positive
/// denominator, which is the invariant the rest of the library relies on.
using Rational = mpq_class;
using Vector = std::vector<Rational>;

inline std::string to_string(const Rational& value) { return value.get_str(); }

/// Accepts `[-]digits` or `[-]digits/digits` and returns the canonical value.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&](const char* why) -> Rational {
    throw Error(ErrorKind::malformed_input,
                "malformed rational \"" + std::string(text) + "\": " + why);
  };
  std::size_t pos = 0;
  if (pos < text.size() && text[pos] == '-') ++pos;
  const std::size_t num_begin = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == num_begin) return fail("expected digits");
  std::string numerator(text.substr(0, pos));
  std::string denominator = "1";
  if (pos < text.size()) {
    if (text[pos] != '/') return fail("unexpected character");
    ++pos;
    const std::size_t den_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == den_begin || pos != text.size()) return fail("expected digits after '/'");
    denominator = std::string(text.substr(den_begin));
  }
  mpz_class den(denominator);
  if (den == 0) return fail("zero denominator");
  Rational value(mpz_class(numerator), den);
  value.canonicalize();
  return value;
}

inline Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

inline Rational dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0) s += a[i] * b[i];
  return s;
}

inline Vector operator+(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector operator*(const Rational& s, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

}  // namespace lcp
