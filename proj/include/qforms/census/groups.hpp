#pragma once

// p-groups of class 2 with exponent p, p-groups of Frattini class 2, and
// cube-zero commutative algebras, counted as subspace orbits of the matching
// GL(n)-module: a group of order p^ell with Frattini quotient of rank n comes
// from an (ell - n)-dimensional subspace.

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "qforms/common/bigint.hpp"
#include "qforms/gfq/field.hpp"

namespace qforms::census {

enum class Family { ClassTwoExponentP, FrattiniClassTwo, CubeZero };

std::string family_code(Family f);  // "B", "H", "cube-zero"

struct GroupCensusRecord {
  std::uint32_t p = 0;
  unsigned ell = 0;
  Family family{};
  std::map<std::pair<unsigned, unsigned>, BigInt> strata;  // (n, m) -> count
  BigInt total;
};

// Largest p^ell accepted by the totals.
inline constexpr std::uint64_t kMaxGroupOrder = 6561;

// Class 2 and exponent p: m-subspaces of the alternating square. p = 2 is
// rejected because exponent 2 forces the group to be abelian.
BigInt f_b_stratum(unsigned n, unsigned m, std::uint32_t p, unsigned threads = 0);

// Frattini class 2: the alternating square plus V for odd p, the dual of the
// squares-and-commutators module for p = 2.
BigInt f_h_stratum(unsigned n, unsigned m, std::uint32_t p, unsigned threads = 0);

// Sums over 1 <= n <= ell of the (n, ell - n) strata, including the abelian
// stratum m = 0.
GroupCensusRecord f_b_total(std::uint32_t p, unsigned ell, unsigned threads = 0);
GroupCensusRecord f_h_total(std::uint32_t p, unsigned ell, unsigned threads = 0);

// Cube-zero commutative algebras with A/A^2 of dimension n and A^2 of
// dimension m: m-subspaces of the symmetric square.
BigInt cube_zero_stratum(unsigned n, unsigned m, const gfq::FieldRef& field, unsigned threads = 0);

}  // namespace qforms::census
