#pragma once

// Explicit coordinate sets S with span(S) meeting Fix(P, Q) only in zero,
// built from the block structure of P and Q in a regime m = Cn + R.
//
// The sets are stated for the natural action v -> (P [] P (x) Q) v, which is
// full_action(square_action(P^T), Q^{-1}): the counting action at the pair
// (P^T, Q^{-1}).

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qforms/common/bigint.hpp"
#include "qforms/common/product_kind.hpp"
#include "qforms/glq/classes.hpp"
#include "qforms/gfq/matrix.hpp"

namespace qforms::tensor {

using gfq::Matrix;

enum class Construction {
  LargeBlockP,       // P has a block longer than 1 + C + 1/C
  LargeBlockQ,       // Q has a block longer than 2C^2 + 3
  ManyBlocksP,       // P has more than C + 1/C blocks of size >= 2, all short
  ManyBlocksQ,       // Q has more than 2C^2 + 2 blocks of size >= 2
  ManyEigenvaluesP,  // P and Q nearly diagonal, P has many distinct eigenvalues
};

inline constexpr Construction kAllConstructions[] = {Construction::LargeBlockP, Construction::LargeBlockQ,
                                                     Construction::ManyBlocksP, Construction::ManyBlocksQ,
                                                     Construction::ManyEigenvaluesP};

std::string_view construction_name(Construction c);
Construction parse_construction(std::string_view s);

// Enforce checks the hypotheses and m = Cn + R. Structural drops both and
// clamps each constant to what the block structure offers, so the set is
// built whenever the relevant structure exists at all.
enum class HypothesisMode { Enforce, Structural };

struct ProofConstructionSpec {
  Construction construction{};
  HypothesisMode mode{};
  Rational c, r;

  // Regime constants from C.
  long block_cut = 0;        // ceil(1 + C + 1/C)
  long q_block_cut = 0;      // ceil(2C^2 + 3)
  long p_block_count = 0;    // least integer > C + 1/C
  long q_block_count = 0;    // least integer > 2C^2 + 2
  long eigen_count = 0;      // least integer > 1 + C + 1/C
  long used = 0;             // the constant the set was built with

  ProductKind kind{};
  std::size_t n = 0, m = 0, d = 0;
  // Representatives written in the block order the construction assumes.
  Matrix p, q;
  std::vector<std::size_t> index_set;  // strictly increasing, < d*m
};

// Throws DomainError with a diagnostic when the hypothesis fails (Enforce)
// or the needed structure is absent (Structural).
ProofConstructionSpec build_proof_index_set(const glq::ConjLabel& p, const glq::ConjLabel& q, ProductKind kind,
                                            Construction construction, const Rational& c, const Rational& r,
                                            HypothesisMode mode = HypothesisMode::Enforce);

// Matrix of v -> (P [] P (x) Q) v in module-major coordinates.
Matrix natural_action(const Matrix& p, const Matrix& q, ProductKind kind);

// True iff no nonzero vector fixed by the natural action of (P, Q) is
// supported inside spec.index_set.
bool support_avoidance(const Matrix& p, const Matrix& q, ProductKind kind, const ProofConstructionSpec& spec);
inline bool support_avoidance(const ProofConstructionSpec& spec) {
  return support_avoidance(spec.p, spec.q, spec.kind, spec);
}

}  // namespace qforms::tensor
