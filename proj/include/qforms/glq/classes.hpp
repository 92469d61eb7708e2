#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qforms/common/bigint.hpp"
#include "qforms/gfq/field.hpp"
#include "qforms/gfq/matrix.hpp"
#include "qforms/poly/poly.hpp"

namespace qforms::glq {

using gfq::FieldRef;
using poly::Poly;

struct Partition {
  std::vector<unsigned> parts;  // weakly decreasing, positive

  unsigned size() const;
  unsigned length() const { return static_cast<unsigned>(parts.size()); }
  unsigned largest() const { return parts.empty() ? 0 : parts.front(); }
  unsigned multiplicity(unsigned part) const;
  std::string to_string() const;  // "(2,1,1)"

  friend auto operator<=>(const Partition&, const Partition&) = default;
};

Partition dual_partition(const Partition& p);

// Partitions of s ordered lexicographically on their parts, so (1^s) comes
// first and (s) last.
std::vector<Partition> partitions(unsigned s);

struct LabelPair {
  Poly f;  // monic irreducible, not X
  Partition lambda;
};

// Elementary-divisor data of a conjugacy class of GL(n, q).
struct ConjLabel {
  FieldRef field;
  unsigned n = 0;
  std::vector<LabelPair> pairs;  // sorted by f in canonical polynomial order

  std::string to_string() const;  // "{(X+1,(2,1)),(X^2+X+1,(1))}"
  friend bool operator==(const ConjLabel& a, const ConjLabel& b);
};

// Elementary divisor f^e with its multiplicity, larger exponents first
// within each f.
struct ElementaryDivisor {
  Poly f;
  unsigned e;
};
std::vector<ElementaryDivisor> elementary_divisors(const ConjLabel& label);

// Throws DomainError unless the label is well formed.
void validate(const ConjLabel& label);

struct ClassProfile {
  unsigned largest_block = 0;
  unsigned blocks_ge2 = 0;
  // In-field eigenvalue code -> algebraic multiplicity |lambda|.
  std::map<std::uint8_t, unsigned> eigen_in_field;
  unsigned diag_dim = 0;
  // In-field eigenvalue code -> dimension of its eigenspace (number of parts).
  std::map<std::uint8_t, unsigned> eigenspace_dims;
  unsigned max_eigenspace_dim() const;
};

ClassProfile class_profile(const ConjLabel& label);

BigInt gl_order(unsigned n, std::uint64_t q);
BigInt centralizer_order(const ConjLabel& label);
BigInt class_size(const ConjLabel& label);  // ConsistencyError on a remainder

// Every label of GL(n, q) exactly once: irreducibles in canonical order, the
// earliest irreducible taking the largest share first, partitions in the
// order of partitions().
std::vector<ConjLabel> enumerate_classes(unsigned n, const FieldRef& field);

// Number of classes from the generating function prod_d P(t^d)^{N_d}, where
// P is the partition series and N_d counts monic irreducibles of degree d
// other than X.
BigInt class_count(unsigned n, std::uint64_t q);

// Coefficients (low degree first) of the unique polynomial of degree < xs.size()
// through the points (xs[i], ys[i]).
std::vector<Rational> interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys);

// Companion matrix: ones on the subdiagonal, last column -c_0, ..., -c_{d-1}.
gfq::Matrix companion(const Poly& f);

// Block diagonal of companion matrices of f^e, pairs in label order, larger
// blocks first within a pair.
gfq::Matrix rnf_matrix(const ConjLabel& label);

// class_size * (q-1)^n * q^{sum_i deg f_i * sum_j lambda'_ij^2} <= q^{n^2+n}
bool log_bound_check(const ConjLabel& label);

struct AlmostScalarCheck {
  bool applies = false;     // some eigenspace has dimension >= n - k
  bool tight = false;       // class_size * (q-1)^n * q^{k^2} <= q^{(2k+1)n}
  bool envelope = false;    // class_size <= q^{(2k+1)n}
};
AlmostScalarCheck almost_scalar_check(const ConjLabel& label, unsigned k);

}  // namespace qforms::glq
