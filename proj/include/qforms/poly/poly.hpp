#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qforms/common/bigint.hpp"
#include "qforms/gfq/field.hpp"
#include "qforms/gfq/matrix.hpp"

namespace qforms::poly {

using gfq::Elem;
using gfq::FieldRef;

// Univariate polynomial over GF(q), coefficients low degree first, no
// trailing zeros. The zero polynomial has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  Poly(FieldRef field, std::vector<Elem> coeffs);

  static Poly zero(FieldRef field) { return Poly(std::move(field), {}); }
  static Poly constant(FieldRef field, Elem c);
  static Poly x(FieldRef field);  // the indeterminate X
  // Coefficients as integers mapped into the field, low degree first.
  static Poly from_ints(FieldRef field, std::initializer_list<long long> coeffs);

  const FieldRef& field_ref() const { return field_; }
  const gfq::Field& field() const { return *field_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == gfq::kOne; }
  Elem lead() const { return coeffs_.empty() ? gfq::kZero : coeffs_.back(); }
  Elem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : gfq::kZero; }

  Elem eval(Elem x) const;
  Poly monic() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator%(const Poly& a, const Poly& b);
  friend Poly operator/(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);

  // Canonical order: degree, then coefficient codes compared low degree first.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  // "X^2+X+1"; extension-field coefficients are printed as element codes.
  std::string to_string() const;

 private:
  void trim();
  FieldRef field_;
  std::vector<Elem> coeffs_;
};

struct DivMod {
  Poly quot;
  Poly rem;
};
DivMod divmod(const Poly& a, const Poly& b);  // throws DivisionByZero

Poly gcd(Poly a, Poly b);  // monic, or zero when both are zero
Poly pow(const Poly& a, unsigned k);
Poly pow_mod(const Poly& a, const BigInt& k, const Poly& modulus);

// Ben-Or style test: f is irreducible iff gcd(X^{q^i} - X, f) = 1 for
// 1 <= i <= deg f / 2. Requires monic f of degree >= 1.
bool is_irreducible(const Poly& f);
// Reference implementation by trial division over every monic divisor
// candidate of degree <= deg f / 2.
bool is_irreducible_trial(const Poly& f);

// Monic irreducibles of degree exactly d, in canonical order.
std::vector<Poly> monic_irreducibles_of_degree(const FieldRef& field, int d, bool exclude_x);
// All degrees 1..dmax, degree-major then canonical order.
std::vector<Poly> monic_irreducibles(const FieldRef& field, int dmax, bool exclude_x);

// Number of monic irreducibles of degree d over GF(q) by the necklace formula.
BigInt necklace_count(std::uint64_t q, unsigned d);

// Characteristic polynomial det(X I - A) via Hessenberg reduction.
Poly charpoly(const gfq::Matrix& a);

// f(A) by Horner's rule.
gfq::Matrix evaluate(const Poly& f, const gfq::Matrix& a);

}  // namespace qforms::poly
