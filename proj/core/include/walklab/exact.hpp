#pragma once

// Exact integer and rational scalars shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace walklab {

using QInt = mpz_class;
using Rational = mpq_class;

inline QInt ipow(const QInt& base, unsigned long exponent) {
  QInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

inline QInt ipow(std::uint64_t base, unsigned long exponent) {
  QInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

inline Rational make_rational(const QInt& num, const QInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const QInt& v) { return v.get_str(); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline double to_double(const Rational& v) { return v.get_d(); }

inline int sign(const Rational& v) { return sgn(v); }

}  // namespace walklab
