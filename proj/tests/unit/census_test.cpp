#include "doctest.h"
#include "qforms/census/groups.hpp"
#include "qforms/common/errors.hpp"
#include "qforms/oracle/brute_force.hpp"

using namespace qforms;
using namespace qforms::census;
using gfq::Field;

namespace {

BigInt oracle_stratum(unsigned n, unsigned m, std::uint32_t p, ProductKind kind) {
  const std::size_t d = module_dim(kind, n);
  if (m > d) return 0;
  if (m == 0) return 1;
  return oracle::bf_subspace_orbits(oracle::module_generators(n, Field::make(p), kind), m);
}

}  // namespace

TEST_CASE("f_b_stratum examples") {
  CHECK(f_b_stratum(2, 1, 3) == 1);
  CHECK(f_b_stratum(4, 0, 3) == 1);
  CHECK(f_b_stratum(2, 2, 3) == 0);
  CHECK_THROWS_AS(f_b_stratum(2, 1, 2), DomainError);
  CHECK_THROWS_AS(f_b_stratum(2, 1, 4), DomainError);
}

TEST_CASE("f_h_stratum examples") {
  CHECK(f_h_stratum(1, 1, 2) == 1);
  CHECK(f_h_stratum(2, 1, 2) == 3);
  CHECK(f_h_stratum(2, 1, 3) == oracle_stratum(2, 1, 3, ProductKind::FrattiniOdd));
}

TEST_CASE("classical totals") {
  auto h22 = f_h_total(2, 2);
  CHECK(h22.total == 2);
  CHECK(h22.strata.at({1, 1}) == 1);
  CHECK(h22.strata.at({2, 0}) == 1);
  auto h23 = f_h_total(2, 3);
  CHECK(h23.total == 4);
  CHECK(f_b_total(3, 2).total == 1);
  CHECK(f_b_total(3, 3).total == 2);
  CHECK_THROWS_AS(f_b_total(3, 9), LimitExceeded);
  CHECK_THROWS_AS(f_b_total(2, 3), DomainError);
}

TEST_CASE("totals are sums of oracle-checked strata") {
  auto b34 = f_b_total(3, 4);
  BigInt sum = 0;
  for (const auto& [nm, c] : b34.strata) {
    CHECK(c == oracle_stratum(nm.first, nm.second, 3, ProductKind::Alternating));
    sum += c;
  }
  CHECK(sum == b34.total);

  auto h33 = f_h_total(3, 3);
  sum = 0;
  for (const auto& [nm, c] : h33.strata) {
    CHECK(c == oracle_stratum(nm.first, nm.second, 3, ProductKind::FrattiniOdd));
    sum += c;
  }
  CHECK(sum == h33.total);

  for (unsigned ell = 1; ell <= 5; ++ell) {
    auto h2 = f_h_total(2, ell);
    for (const auto& [nm, c] : h2.strata) {
      if (module_dim(ProductKind::Frattini2Dual, nm.first) > 6 && nm.second > 1) continue;
      CHECK(c == oracle_stratum(nm.first, nm.second, 2, ProductKind::Frattini2Dual));
    }
  }
}

TEST_CASE("class-2 exponent-p strata lie in the p^{m(C(n,2)-m)} envelope") {
  for (unsigned n = 2; n <= 5; ++n) {
    const unsigned long c2 = n * (n - 1) / 2;
    for (unsigned m = 1; m <= c2; ++m) {
      const BigInt f = f_b_stratum(n, m, 3);
      // 3^{m(c2-m) - n^2} <= f, cleared of the denominator.
      CHECK(ipow(3ul, m * (c2 - m)) <= f * ipow(3ul, static_cast<unsigned long>(n) * n));
      CHECK(f <= ipow(3ul, m * (c2 - m + 1)));
    }
  }
}

TEST_CASE("Frattini-odd strata dominate class-2 exponent-p strata") {
  for (std::uint32_t p : {3u, 5u}) {
    for (unsigned n = 1; n <= 4; ++n) {
      CHECK(f_h_stratum(n, 0, p) == 1);
      for (unsigned m = 1; m <= 3; ++m) CHECK(f_h_stratum(n, m, p) >= f_b_stratum(n, m, p));
    }
  }
}

TEST_CASE("cube_zero_stratum") {
  auto z2 = Field::make(2);
  CHECK(cube_zero_stratum(2, 0, z2) == 1);
  CHECK(cube_zero_stratum(2, 1, z2) == oracle::bf_subspace_orbits(oracle::module_generators(2, z2, ProductKind::Symmetric), 1));
  CHECK(cube_zero_stratum(2, 4, z2) == 0);
  CHECK(cube_zero_stratum(2, 7, z2) == 0);
}
