#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qforms/common/bigint.hpp"
#include "qforms/common/product_kind.hpp"
#include "qforms/gfq/matrix.hpp"

namespace qforms::randspace {

// Counter-based stream: state advances by a fixed odd constant and each
// output is a bijective mix of the state, so stream i of a master seed is
// reproducible on its own.
class SplitMix64 {
 public:
  static constexpr const char* kName = "splitmix64/1";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Exactly uniform on [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

  // Seed of the index-th independent stream.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t index);

 private:
  std::uint64_t state_;
};

// Uniform m-dimensional subspace of F^D as its reduced echelon basis
// (m x D): rejection-sample m x D matrices until the rank is m.
gfq::Matrix sample_subspace(std::size_t dim, std::size_t m, const gfq::FieldRef& field, std::uint64_t seed);

struct AutSurveyReport {
  unsigned n = 0, m = 0;
  std::uint32_t q = 0;
  ProductKind kind{};
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string generator = SplitMix64::kName;

  Rational threshold;       // K (q - 1)
  Rational fraction_small;  // share of samples with |Aut| <= threshold
  std::map<BigInt, std::uint64_t> histogram;
  bool asymptotic_regime_reached = false;  // never claimed at sampled sizes
  std::vector<std::string> warnings;
};

// Samples m-dimensional subspaces of the kind's matrix space and counts
// {P : P^T A P = A} exactly for each. Full, sym and alt only.
AutSurveyReport aut_survey(unsigned n, unsigned m, const gfq::FieldRef& field, ProductKind kind,
                           std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

// Warnings for grid points where fraction_small drops as q grows; reports
// are taken in the given order and assumed to increase in q.
std::vector<std::string> trend_warnings(const std::vector<AutSurveyReport>& by_q);

}  // namespace qforms::randspace
