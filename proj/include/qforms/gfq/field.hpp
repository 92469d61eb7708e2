#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qforms::gfq {

// A field element is its code c = a_0 + a_1 p + ... + a_{e-1} p^{e-1}, where
// a_i are the coefficients in the polynomial basis 1, x, ..., x^{e-1}.
// Code 0 is zero and code 1 is one in every field.
enum class Elem : std::uint8_t {};

inline constexpr Elem kZero{0};
inline constexpr Elem kOne{1};

constexpr std::uint8_t code(Elem a) { return static_cast<std::uint8_t>(a); }

// Largest supported order; element codes must fit in a byte.
inline constexpr std::uint32_t kMaxOrder = 256;

class Field;
using FieldRef = std::shared_ptr<const Field>;

bool is_prime(std::uint64_t n);

// GF(p^e) with full addition/multiplication tables. Instances are immutable
// and interned: make() returns the same object for the same (p, e).
class Field {
 public:
  // The canonical field of order p^e. For e > 1 the modulus is the
  // lexicographically least monic irreducible of degree e over Z_p, comparing
  // coefficient sequences low degree first.
  static FieldRef make(std::uint32_t p, std::uint32_t e = 1);

  // Accepts a prime power q and factors it.
  static FieldRef of_order(std::uint32_t q);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  bool is_prime_field() const { return e_ == 1; }

  // e+1 coefficients in Z_p, low degree first; empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const { return Elem{add_[code(a) * q_ + code(b)]}; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const { return Elem{neg_[code(a)]}; }
  Elem mul(Elem a, Elem b) const { return Elem{mul_[code(a) * q_ + code(b)]}; }
  Elem inv(Elem a) const;  // throws DivisionByZero on zero
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;

  // Image of an integer under Z -> Z_p -> GF(q).
  Elem from_int(long long v) const;
  Elem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;

  // Multiplicative generator (smallest code of order q-1).
  Elem primitive() const { return primitive_; }

  // Row c of the multiplication table: mul_row(c)[x] = c*x, q entries.
  const std::uint8_t* mul_row(Elem c) const { return mul_.data() + code(c) * q_; }
  const std::uint8_t* add_table() const { return add_.data(); }

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_ && a.e_ == b.e_; }

  Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus);

 private:
  std::uint32_t p_;
  std::uint32_t e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint8_t> add_;
  std::vector<std::uint8_t> mul_;
  std::vector<std::uint8_t> neg_;
  std::vector<std::uint8_t> inv_;
  Elem primitive_{1};
};

// Lexicographically least monic irreducible of degree e over Z_p (e+1
// coefficients, low degree first). Exhaustive trial division; e >= 2.
std::vector<std::uint32_t> least_irreducible_modulus(std::uint32_t p, std::uint32_t e);

}  // namespace qforms::gfq
