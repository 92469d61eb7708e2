#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qforms {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

inline BigInt ipow(unsigned long base, unsigned long exponent) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

// "a/b" or "a" when the denominator is one.
inline std::string to_decimal(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str(10);
  return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

}  // namespace qforms
