#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "qforms/common/errors.hpp"

namespace qforms {

// GL(V)-module that the bilinear maps live in.
//   Full          V (x) V realized as all n x n matrices, d = n^2
//   Symmetric     symmetric matrices, d = n(n+1)/2
//   Alternating   skew matrices with zero diagonal, d = n(n-1)/2
//   FrattiniOdd   alternating part plus a copy of V, d = n(n-1)/2 + n
//   Frattini2Dual dual of the squares-and-commutators module over GF(2)
enum class ProductKind { Full, Symmetric, Alternating, FrattiniOdd, Frattini2Dual };

inline constexpr std::array<ProductKind, 5> kAllKinds{ProductKind::Full, ProductKind::Symmetric,
                                                      ProductKind::Alternating, ProductKind::FrattiniOdd,
                                                      ProductKind::Frattini2Dual};

inline std::size_t module_dim(ProductKind kind, std::size_t n) {
  switch (kind) {
    case ProductKind::Full: return n * n;
    case ProductKind::Symmetric: return n * (n + 1) / 2;
    case ProductKind::Alternating: return n * (n - 1) / 2;
    case ProductKind::FrattiniOdd:
    case ProductKind::Frattini2Dual: return n * (n - 1) / 2 + n;
  }
  return 0;
}

inline std::string_view kind_name(ProductKind kind) {
  switch (kind) {
    case ProductKind::Full: return "full";
    case ProductKind::Symmetric: return "sym";
    case ProductKind::Alternating: return "alt";
    case ProductKind::FrattiniOdd: return "frattini-odd";
    case ProductKind::Frattini2Dual: return "frattini2";
  }
  return "?";
}

inline ProductKind parse_kind(std::string_view s) {
  if (s == "full" || s == "tensor") return ProductKind::Full;
  if (s == "sym" || s == "symmetric") return ProductKind::Symmetric;
  if (s == "alt" || s == "alternating" || s == "wedge") return ProductKind::Alternating;
  if (s == "frattini-odd") return ProductKind::FrattiniOdd;
  if (s == "frattini2" || s == "frattini2-dual") return ProductKind::Frattini2Dual;
  throw DomainError("unknown product kind '" + std::string(s) + "'");
}

}  // namespace qforms
