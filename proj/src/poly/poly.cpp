#include "qforms/poly/poly.hpp"

#include <algorithm>
#include <sstream>

#include "qforms/common/errors.hpp"

namespace qforms::poly {

using gfq::kOne;
using gfq::kZero;

namespace {

void require_same_field(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field())) throw DomainError("polynomials over different fields");
}

}  // namespace

Poly::Poly(FieldRef field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == kZero) coeffs_.pop_back();
}

Poly Poly::constant(FieldRef field, Elem c) { return Poly(std::move(field), {c}); }

Poly Poly::x(FieldRef field) { return Poly(std::move(field), {kZero, kOne}); }

Poly Poly::from_ints(FieldRef field, std::initializer_list<long long> coeffs) {
  std::vector<Elem> c;
  c.reserve(coeffs.size());
  for (long long v : coeffs) c.push_back(field->from_int(v));
  return Poly(std::move(field), std::move(c));
}

Elem Poly::eval(Elem x) const {
  Elem acc = kZero;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), coeffs_[i]);
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  const Elem inv = field_->inv(lead());
  std::vector<Elem> c = coeffs_;
  for (auto& e : c) e = field_->mul(e, inv);
  return Poly(field_, std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  std::vector<Elem> c(std::max(a.coeffs_.size(), b.coeffs_.size()), kZero);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.field().add(a.coeff(i), b.coeff(i));
  return Poly(a.field_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  std::vector<Elem> c(std::max(a.coeffs_.size(), b.coeffs_.size()), kZero);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.field().sub(a.coeff(i), b.coeff(i));
  return Poly(a.field_, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field_);
  const gfq::Field& f = a.field();
  std::vector<Elem> c(a.coeffs_.size() + b.coeffs_.size() - 1, kZero);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == kZero) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      c[i + j] = f.add(c[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
    }
  }
  return Poly(a.field_, std::move(c));
}

DivMod divmod(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw DivisionByZero();
  const gfq::Field& f = a.field();
  std::vector<Elem> r = a.coeffs();
  const std::size_t db = b.coeffs().size() - 1;
  if (r.size() <= db) return {Poly::zero(a.field_ref()), a};
  std::vector<Elem> q(r.size() - db, kZero);
  const Elem inv_lead = f.inv(b.lead());
  for (std::size_t k = r.size(); k-- > db;) {
    const Elem t = f.mul(r[k], inv_lead);
    if (t == kZero) continue;
    q[k - db] = t;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = f.sub(r[k - db + i], f.mul(t, b.coeffs()[i]));
  }
  r.resize(db);
  return {Poly(a.field_ref(), std::move(q)), Poly(a.field_ref(), std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).rem; }
Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quot; }

bool operator==(const Poly& a, const Poly& b) {
  if (a.field_ && b.field_ && !(a.field() == b.field())) return false;
  return a.coeffs_ == b.coeffs_;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (auto c = gfq::code(a.coeffs_[i]) <=> gfq::code(b.coeffs_[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const int c = gfq::code(coeffs_[i]);
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    os << 'X';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly pow(const Poly& a, unsigned k) {
  Poly result = Poly::constant(a.field_ref(), kOne);
  Poly base = a;
  while (k > 0) {
    if (k & 1u) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

Poly pow_mod(const Poly& a, const BigInt& k, const Poly& modulus) {
  Poly result = Poly::constant(a.field_ref(), kOne) % modulus;
  Poly base = a % modulus;
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % modulus;
    if (mpz_tstbit(k.get_mpz_t(), i)) result = (result * base) % modulus;
  }
  return result;
}

namespace {

void require_monic_positive(const Poly& f) {
  if (!f.is_monic()) throw DomainError("irreducibility test requires a monic polynomial");
  if (f.degree() < 1) throw DomainError("irreducibility test requires degree >= 1");
}

// Monic polynomial of degree d whose lower coefficients are the base-q digits
// of idx, with the constant term as the most significant digit.
Poly monic_from_index(const FieldRef& field, int d, std::uint64_t idx) {
  std::vector<Elem> c(d + 1, kZero);
  c[d] = kOne;
  const std::uint64_t q = field->q();
  for (int i = d; i-- > 0;) {
    c[i] = Elem{static_cast<std::uint8_t>(idx % q)};
    idx /= q;
  }
  return Poly(field, std::move(c));
}

std::uint64_t monic_count(std::uint64_t q, int d) {
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) {
    count *= q;
    if (count > (std::uint64_t{1} << 40)) throw LimitExceeded("too many monic polynomials to enumerate");
  }
  return count;
}

}  // namespace

bool is_irreducible(const Poly& f) {
  require_monic_positive(f);
  const FieldRef& field = f.field_ref();
  const Poly x = Poly::x(field);
  Poly power = x % f;
  const BigInt q = field->q();
  for (int i = 1; 2 * i <= f.degree(); ++i) {
    power = pow_mod(power, q, f);
    if (gcd(power - x, f).degree() > 0) return false;
  }
  return true;
}

bool is_irreducible_trial(const Poly& f) {
  require_monic_positive(f);
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    const std::uint64_t count = monic_count(f.field().q(), d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if ((f % monic_from_index(f.field_ref(), d, idx)).is_zero()) return false;
    }
  }
  return true;
}

std::vector<Poly> monic_irreducibles_of_degree(const FieldRef& field, int d, bool exclude_x) {
  if (d < 1) throw DomainError("degree must be at least 1");
  std::vector<Poly> out;
  const std::uint64_t count = monic_count(field->q(), d);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly f = monic_from_index(field, d, idx);
    if (exclude_x && d == 1 && f.coeff(0) == kZero) continue;
    if (d > 1 && f.coeff(0) == kZero) continue;
    if (is_irreducible(f)) out.push_back(std::move(f));
  }
  return out;
}

std::vector<Poly> monic_irreducibles(const FieldRef& field, int dmax, bool exclude_x) {
  if (dmax < 1) throw DomainError("dmax must be at least 1");
  std::vector<Poly> out;
  for (int d = 1; d <= dmax; ++d) {
    auto part = monic_irreducibles_of_degree(field, d, exclude_x);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

namespace {

int moebius(unsigned n) {
  int result = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

BigInt necklace_count(std::uint64_t q, unsigned d) {
  if (d == 0) throw DomainError("necklace_count requires d >= 1");
  BigInt sum = 0;
  for (unsigned t = 1; t <= d; ++t) {
    if (d % t) continue;
    const int mu = moebius(t);
    if (mu == 0) continue;
    const BigInt term = ipow(static_cast<unsigned long>(q), d / t);
    if (mu > 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return BigInt(sum / d);
}

Poly charpoly(const gfq::Matrix& a) {
  if (!a.is_square()) throw DomainError("charpoly of a non-square matrix");
  const gfq::Field& f = a.field();
  const FieldRef& field = a.field_ref();
  const std::size_t n = a.rows();
  gfq::Matrix h = a;

  // Similarity reduction to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h(piv, j) == kZero) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    const Elem inv = f.inv(h(j + 1, j));
    for (std::size_t i = j + 2; i < n; ++i) {
      const Elem u = f.mul(h(i, j), inv);
      if (u == kZero) continue;
      for (std::size_t c = 0; c < n; ++c) h(i, c) = f.sub(h(i, c), f.mul(u, h(j + 1, c)));
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) = f.add(h(r, j + 1), f.mul(u, h(r, i)));
    }
  }

  std::vector<Poly> p;
  p.reserve(n + 1);
  p.push_back(Poly::constant(field, kOne));
  const Poly x = Poly::x(field);
  for (std::size_t k = 1; k <= n; ++k) {
    Poly next = (x - Poly::constant(field, h(k - 1, k - 1))) * p[k - 1];
    Elem prod = kOne;
    for (std::size_t i = k - 1; i >= 1; --i) {
      prod = f.mul(prod, h(i, i - 1));
      if (prod == kZero) break;
      const Elem coef = f.mul(h(i - 1, k - 1), prod);
      if (coef != kZero) next = next - Poly::constant(field, coef) * p[i - 1];
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

gfq::Matrix evaluate(const Poly& f, const gfq::Matrix& a) {
  if (!a.is_square()) throw DomainError("polynomial evaluation needs a square matrix");
  gfq::Matrix acc(a.field_ref(), a.rows(), a.cols());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = acc * a;
    for (std::size_t d = 0; d < a.rows(); ++d) acc(d, d) = a.field().add(acc(d, d), f.coeffs()[i]);
  }
  return acc;
}

}  // namespace qforms::poly
