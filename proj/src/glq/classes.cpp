#include "qforms/glq/classes.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "qforms/common/errors.hpp"

namespace qforms::glq {

using gfq::Elem;
using gfq::kOne;
using gfq::kZero;

unsigned Partition::size() const {
  unsigned s = 0;
  for (unsigned p : parts) s += p;
  return s;
}

unsigned Partition::multiplicity(unsigned part) const {
  return static_cast<unsigned>(std::count(parts.begin(), parts.end(), part));
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

Partition dual_partition(const Partition& p) {
  Partition d;
  for (unsigned i = 1; i <= p.largest(); ++i) {
    unsigned count = 0;
    for (unsigned part : p.parts) count += part >= i ? 1 : 0;
    d.parts.push_back(count);
  }
  return d;
}

std::vector<Partition> partitions(unsigned s) {
  std::vector<Partition> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned max_part) {
    if (remaining == 0) {
      out.push_back(Partition{cur});
      return;
    }
    for (unsigned p = 1; p <= std::min(remaining, max_part); ++p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(s, s);
  std::sort(out.begin(), out.end());
  return out;
}

std::string ConjLabel::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) s += ',';
    s += "(" + pairs[i].f.to_string() + "," + pairs[i].lambda.to_string() + ")";
  }
  return s + "}";
}

bool operator==(const ConjLabel& a, const ConjLabel& b) {
  if (a.n != b.n || a.pairs.size() != b.pairs.size()) return false;
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    if (!(a.pairs[i].f == b.pairs[i].f) || a.pairs[i].lambda != b.pairs[i].lambda) return false;
  }
  return true;
}

std::vector<ElementaryDivisor> elementary_divisors(const ConjLabel& label) {
  std::vector<ElementaryDivisor> out;
  for (const auto& pr : label.pairs) {
    for (unsigned e : pr.lambda.parts) out.push_back({pr.f, e});
  }
  return out;
}

void validate(const ConjLabel& label) {
  if (!label.field) throw DomainError("label has no field");
  unsigned total = 0;
  for (std::size_t i = 0; i < label.pairs.size(); ++i) {
    const auto& pr = label.pairs[i];
    if (!(pr.f.field() == *label.field)) throw DomainError("label polynomial over the wrong field");
    if (!pr.f.is_monic() || pr.f.degree() < 1) throw DomainError("label polynomial must be monic of degree >= 1");
    if (pr.f.degree() == 1 && pr.f.coeff(0) == kZero) throw DomainError("X cannot be an elementary divisor");
    if (!poly::is_irreducible(pr.f)) throw DomainError("label polynomial " + pr.f.to_string() + " is reducible");
    if (pr.lambda.parts.empty()) throw DomainError("empty partition in label");
    for (std::size_t j = 0; j < pr.lambda.parts.size(); ++j) {
      if (pr.lambda.parts[j] == 0) throw DomainError("zero part in partition");
      if (j && pr.lambda.parts[j] > pr.lambda.parts[j - 1]) throw DomainError("partition not decreasing");
    }
    if (i && !(label.pairs[i - 1].f < pr.f)) throw DomainError("label pairs not in canonical order or repeated");
    total += static_cast<unsigned>(pr.f.degree()) * pr.lambda.size();
  }
  if (total != label.n) throw DomainError("label dimensions sum to " + std::to_string(total) + ", expected " +
                                          std::to_string(label.n));
}

unsigned ClassProfile::max_eigenspace_dim() const {
  unsigned best = 0;
  for (const auto& [alpha, dim] : eigenspace_dims) best = std::max(best, dim);
  return best;
}

ClassProfile class_profile(const ConjLabel& label) {
  ClassProfile prof;
  const gfq::Field& f = *label.field;
  for (const auto& pr : label.pairs) {
    const unsigned d = static_cast<unsigned>(pr.f.degree());
    prof.largest_block = std::max(prof.largest_block, d * pr.lambda.largest());
    for (unsigned e : pr.lambda.parts) {
      if (d * e >= 2) ++prof.blocks_ge2;
    }
    if (d == 1) {
      const std::uint8_t alpha = gfq::code(f.neg(pr.f.coeff(0)));
      prof.eigen_in_field[alpha] = pr.lambda.size();
      prof.eigenspace_dims[alpha] = pr.lambda.length();
      prof.diag_dim += pr.lambda.multiplicity(1);
    }
  }
  return prof;
}

BigInt gl_order(unsigned n, std::uint64_t q) {
  BigInt order = 1;
  const BigInt qn = ipow(static_cast<unsigned long>(q), n);
  for (unsigned i = 0; i < n; ++i) order *= qn - ipow(static_cast<unsigned long>(q), i);
  return order;
}

BigInt centralizer_order(const ConjLabel& label) {
  validate(label);
  const unsigned long q = label.field->q();
  BigInt num = 1;
  BigInt den = 1;
  for (const auto& pr : label.pairs) {
    const unsigned long d = static_cast<unsigned long>(pr.f.degree());
    unsigned long sq = 0;
    for (unsigned e : dual_partition(pr.lambda).parts) sq += static_cast<unsigned long>(e) * e;
    num *= ipow(q, d * sq);
    const BigInt big_q = ipow(q, d);
    std::set<unsigned> sizes(pr.lambda.parts.begin(), pr.lambda.parts.end());
    for (unsigned e : sizes) {
      // (1; Q^{-1})_k = prod_{i=1}^{k} (Q^i - 1) / Q^i
      const unsigned k = pr.lambda.multiplicity(e);
      for (unsigned i = 1; i <= k; ++i) {
        const BigInt qi = ipow(big_q, i);
        num *= qi - 1;
        den *= qi;
      }
    }
  }
  if (num % den != 0) throw ConsistencyError("centralizer order of " + label.to_string() + " is not integral");
  return BigInt(num / den);
}

BigInt class_size(const ConjLabel& label) {
  const BigInt g = gl_order(label.n, label.field->q());
  const BigInt c = centralizer_order(label);
  if (g % c != 0) {
    throw ConsistencyError("centralizer order of " + label.to_string() + " does not divide |GL|");
  }
  return BigInt(g / c);
}

std::vector<ConjLabel> enumerate_classes(unsigned n, const FieldRef& field) {
  if (n == 0) return {ConjLabel{field, 0, {}}};
  const auto irr = poly::monic_irreducibles(field, static_cast<int>(n), true);
  std::vector<std::vector<Partition>> parts_of(n + 1);
  for (unsigned s = 0; s <= n; ++s) parts_of[s] = partitions(s);

  std::vector<ConjLabel> out;
  std::vector<LabelPair> cur;
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t idx, unsigned remaining) {
    if (remaining == 0) {
      out.push_back(ConjLabel{field, n, cur});
      return;
    }
    for (std::size_t i = idx; i < irr.size(); ++i) {
      const unsigned d = static_cast<unsigned>(irr[i].degree());
      if (d > remaining) break;  // degrees are nondecreasing
      for (unsigned s = remaining / d; s >= 1; --s) {
        for (const auto& lambda : parts_of[s]) {
          cur.push_back({irr[i], lambda});
          rec(i + 1, remaining - d * s);
          cur.pop_back();
        }
      }
    }
  };
  rec(0, n);
  return out;
}

namespace {

using Series = std::vector<BigInt>;

Series mul_trunc(const Series& a, const Series& b, std::size_t len) {
  Series c(len, 0);
  for (std::size_t i = 0; i < len && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Series pow_trunc(Series base, BigInt e, std::size_t len) {
  Series result(len, 0);
  result[0] = 1;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mul_trunc(result, base, len);
    e /= 2;
    if (e > 0) base = mul_trunc(base, base, len);
  }
  return result;
}

}  // namespace

BigInt class_count(unsigned n, std::uint64_t q) {
  const std::size_t len = n + 1;
  Series part(len, 0);
  for (unsigned s = 0; s <= n; ++s) part[s] = static_cast<unsigned long>(partitions(s).size());
  Series total(len, 0);
  total[0] = 1;
  for (unsigned d = 1; d <= n; ++d) {
    BigInt nd = poly::necklace_count(q, d);
    if (d == 1) nd -= 1;  // X is not an elementary divisor of an invertible matrix
    Series sub(len, 0);
    for (unsigned s = 0; s * d <= n; ++s) sub[s * d] = part[s];
    total = mul_trunc(total, pow_trunc(sub, nd, len), len);
  }
  return total[n];
}

std::vector<Rational> interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys) {
  const std::size_t k = xs.size();
  if (ys.size() != k || k == 0) throw DomainError("interpolate: need equally many x and y values");
  std::vector<Rational> coeffs(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    // Basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j), built up coefficientwise.
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, 0);
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= basis[t] * Rational(xs[j]);
      }
      basis = std::move(next);
      denom *= Rational(xs[i] - xs[j]);
    }
    if (denom == 0) throw DomainError("interpolate: repeated x value");
    for (std::size_t t = 0; t < k; ++t) {
      coeffs[t] += Rational(ys[i]) * basis[t] / denom;
      coeffs[t].canonicalize();
    }
  }
  return coeffs;
}

gfq::Matrix companion(const Poly& f) {
  if (!f.is_monic() || f.degree() < 1) throw DomainError("companion matrix needs a monic polynomial of degree >= 1");
  const std::size_t d = static_cast<std::size_t>(f.degree());
  gfq::Matrix c(f.field_ref(), d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) c(i + 1, i) = kOne;
  for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = f.field().neg(f.coeff(i));
  return c;
}

gfq::Matrix rnf_matrix(const ConjLabel& label) {
  validate(label);
  gfq::Matrix m(label.field, label.n, label.n);
  std::size_t offset = 0;
  for (const auto& ed : elementary_divisors(label)) {
    const gfq::Matrix block = companion(poly::pow(ed.f, ed.e));
    m.set_block(offset, offset, block);
    offset += block.rows();
  }
  return m;
}

bool log_bound_check(const ConjLabel& label) {
  const unsigned long q = label.field->q();
  const unsigned long n = label.n;
  unsigned long weight = 0;
  for (const auto& pr : label.pairs) {
    unsigned long sq = 0;
    for (unsigned e : dual_partition(pr.lambda).parts) sq += static_cast<unsigned long>(e) * e;
    weight += static_cast<unsigned long>(pr.f.degree()) * sq;
  }
  const BigInt lhs = class_size(label) * ipow(q - 1, n) * ipow(q, weight);
  return lhs <= ipow(q, n * n + n);
}

AlmostScalarCheck almost_scalar_check(const ConjLabel& label, unsigned k) {
  AlmostScalarCheck r;
  const ClassProfile prof = class_profile(label);
  if (prof.max_eigenspace_dim() + k < label.n) return r;
  r.applies = true;
  const unsigned long q = label.field->q();
  const unsigned long n = label.n;
  const BigInt size = class_size(label);
  const BigInt cap = ipow(q, (2 * k + 1) * n);
  r.tight = size * ipow(q - 1, n) * ipow(q, static_cast<unsigned long>(k) * k) <= cap;
  r.envelope = size <= cap;
  return r;
}

}  // namespace qforms::glq
