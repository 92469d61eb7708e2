#include "qforms/census/groups.hpp"

#include "qforms/burnside/engine.hpp"
#include "qforms/common/errors.hpp"

namespace qforms::census {

namespace {

void require_prime(std::uint32_t p) {
  if (!gfq::is_prime(p)) throw DomainError("p must be prime, got " + std::to_string(p));
}

ProductKind frattini_kind(std::uint32_t p) {
  return p == 2 ? ProductKind::Frattini2Dual : ProductKind::FrattiniOdd;
}

void require_desk_scale(std::uint32_t p, unsigned ell) {
  if (ell == 0) throw DomainError("ell must be at least 1");
  if (ipow(static_cast<unsigned long>(p), ell) > kMaxGroupOrder)
    throw LimitExceeded("p^ell = " + to_decimal(ipow(static_cast<unsigned long>(p), ell)) + " exceeds " +
                        std::to_string(kMaxGroupOrder));
}

GroupCensusRecord total(Family family, std::uint32_t p, unsigned ell, ProductKind kind, unsigned threads) {
  GroupCensusRecord r;
  r.p = p;
  r.ell = ell;
  r.family = family;
  auto field = gfq::Field::make(p);
  for (unsigned n = 1; n <= ell; ++n) {
    const unsigned m = ell - n;
    BigInt c = m > module_dim(kind, n) ? BigInt(0) : burnside::subspace_orbits(n, m, field, kind, threads);
    r.total += c;
    r.strata.emplace(std::pair{n, m}, std::move(c));
  }
  return r;
}

}  // namespace

std::string family_code(Family f) {
  switch (f) {
    case Family::ClassTwoExponentP: return "B";
    case Family::FrattiniClassTwo: return "H";
    case Family::CubeZero: return "cube-zero";
  }
  return "?";
}

BigInt f_b_stratum(unsigned n, unsigned m, std::uint32_t p, unsigned threads) {
  require_prime(p);
  if (p == 2) throw DomainError("groups of exponent 2 are abelian; class 2 with exponent p needs p > 2");
  return burnside::subspace_orbits(n, m, gfq::Field::make(p), ProductKind::Alternating, threads);
}

BigInt f_h_stratum(unsigned n, unsigned m, std::uint32_t p, unsigned threads) {
  require_prime(p);
  return burnside::subspace_orbits(n, m, gfq::Field::make(p), frattini_kind(p), threads);
}

GroupCensusRecord f_b_total(std::uint32_t p, unsigned ell, unsigned threads) {
  require_prime(p);
  if (p == 2) throw DomainError("groups of exponent 2 are abelian; class 2 with exponent p needs p > 2");
  require_desk_scale(p, ell);
  return total(Family::ClassTwoExponentP, p, ell, ProductKind::Alternating, threads);
}

GroupCensusRecord f_h_total(std::uint32_t p, unsigned ell, unsigned threads) {
  require_prime(p);
  require_desk_scale(p, ell);
  return total(Family::FrattiniClassTwo, p, ell, frattini_kind(p), threads);
}

BigInt cube_zero_stratum(unsigned n, unsigned m, const gfq::FieldRef& field, unsigned threads) {
  return burnside::subspace_orbits(n, m, field, ProductKind::Symmetric, threads);
}

}  // namespace qforms::census
