#include "qforms/gfq/field.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "qforms/common/errors.hpp"

namespace qforms::gfq {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

using Coeffs = std::vector<std::uint32_t>;

// Remainder of a modulo monic b over Z_p; both low degree first.
Coeffs zp_mod(Coeffs a, const Coeffs& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

bool is_zero(const Coeffs& a) {
  for (auto c : a) {
    if (c != 0) return false;
  }
  return true;
}

// Exhaustive trial division by every monic polynomial of degree 1..deg/2.
bool zp_irreducible(const Coeffs& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    Coeffs g(d + 1, 0);
    g[d] = 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      if (is_zero(zp_mod(f, g, p))) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::uint32_t> least_irreducible_modulus(std::uint32_t p, std::uint32_t e) {
  if (e < 2) throw DomainError("least_irreducible_modulus requires degree >= 2");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  Coeffs f(e + 1, 0);
  f[e] = 1;
  // idx enumerates coefficient tuples so that c_0 varies slowest, which is
  // lexicographic order with the low-degree coefficient compared first.
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t t = idx;
    for (std::uint32_t i = e; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    if (f[0] == 0) continue;  // divisible by X
    if (zp_irreducible(f, p)) return f;
  }
  throw ConsistencyError("no irreducible polynomial found");
}

Field::Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < e; ++i) q_ *= p;
  add_.resize(std::size_t{q_} * q_);
  mul_.resize(std::size_t{q_} * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);

  std::vector<Coeffs> digits(q_, Coeffs(e, 0));
  for (std::uint32_t c = 0; c < q_; ++c) {
    std::uint32_t t = c;
    for (std::uint32_t i = 0; i < e; ++i) {
      digits[c][i] = t % p;
      t /= p;
    }
  }
  auto encode = [&](const Coeffs& a) {
    std::uint32_t c = 0;
    for (std::uint32_t i = e; i-- > 0;) c = c * p + a[i];
    return static_cast<std::uint8_t>(c);
  };

  for (std::uint32_t a = 0; a < q_; ++a) {
    Coeffs n(e);
    for (std::uint32_t i = 0; i < e; ++i) n[i] = (p - digits[a][i]) % p;
    neg_[a] = encode(n);
    for (std::uint32_t b = 0; b < q_; ++b) {
      Coeffs s(e);
      for (std::uint32_t i = 0; i < e; ++i) s[i] = (digits[a][i] + digits[b][i]) % p;
      add_[a * q_ + b] = encode(s);

      Coeffs prod(2 * e - 1, 0);
      for (std::uint32_t i = 0; i < e; ++i) {
        for (std::uint32_t j = 0; j < e; ++j) {
          prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p;
        }
      }
      if (e > 1) prod = zp_mod(prod, modulus_, p);
      prod.resize(e, 0);
      mul_[a * q_ + b] = encode(prod);
    }
  }
  for (std::uint32_t a = 1; a < q_; ++a) {
    for (std::uint32_t b = 1; b < q_; ++b) {
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = static_cast<std::uint8_t>(b);
        break;
      }
    }
    if (inv_[a] == 0) throw ConsistencyError("modulus is not irreducible: zero divisor found");
  }
  for (std::uint32_t g = 1; g < q_; ++g) {
    std::uint32_t x = g;
    std::uint32_t order = 1;
    while (x != 1) {
      x = mul_[x * q_ + g];
      ++order;
    }
    if (order == q_ - 1) {
      primitive_ = Elem{static_cast<std::uint8_t>(g)};
      break;
    }
  }
}

FieldRef Field::make(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw DomainError("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw LimitExceeded("field order " + std::to_string(p) + "^" + std::to_string(e) +
                          " exceeds the supported maximum " + std::to_string(kMaxOrder));
    }
  }
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldRef> interned;
  std::lock_guard lock(mu);
  auto it = interned.find({p, e});
  if (it != interned.end()) return it->second;
  std::vector<std::uint32_t> modulus;
  if (e > 1) modulus = least_irreducible_modulus(p, e);
  auto f = std::make_shared<const Field>(p, e, std::move(modulus));
  interned.emplace(std::make_pair(p, e), f);
  return f;
}

FieldRef Field::of_order(std::uint32_t q) {
  if (q < 2) throw DomainError("field order must be a prime power >= 2");
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t e = 0;
  std::uint32_t t = q;
  while (t % p == 0) {
    t /= p;
    ++e;
  }
  if (t != 1) throw DomainError(std::to_string(q) + " is not a prime power");
  return make(p, e);
}

Elem Field::inv(Elem a) const {
  if (a == kZero) throw DivisionByZero();
  return Elem{inv_[code(a)]};
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  Elem result = kOne;
  Elem base = a;
  while (k > 0) {
    if (k & 1u) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Elem Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint8_t>(r)};
}

Elem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > e_) throw DomainError("too many coefficients for field element");
  std::uint32_t c = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) c = c * p_ + coeffs[i] % p_;
  return Elem{static_cast<std::uint8_t>(c)};
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
  std::vector<std::uint32_t> out(e_);
  std::uint32_t t = code(a);
  for (std::uint32_t i = 0; i < e_; ++i) {
    out[i] = t % p_;
    t /= p_;
  }
  return out;
}

std::string Field::name() const {
  if (e_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(e_) + ")";
}

}  // namespace qforms::gfq
