#pragma once

// Small generators for property tests.
#include <cstdint>
#include <random>

#include "qforms/gfq/linalg.hpp"
#include "qforms/gfq/matrix.hpp"

namespace qforms::testgen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

  gfq::Elem elem(const gfq::Field& f) { return gfq::Elem{static_cast<std::uint8_t>(below(f.q()))}; }

  gfq::Elem nonzero(const gfq::Field& f) { return gfq::Elem{static_cast<std::uint8_t>(1 + below(f.q() - 1))}; }

  gfq::Matrix matrix(const gfq::FieldRef& f, std::size_t rows, std::size_t cols) {
    gfq::Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = elem(*f);
    }
    return m;
  }

  gfq::Matrix invertible(const gfq::FieldRef& f, std::size_t n) {
    for (;;) {
      gfq::Matrix m = matrix(f, n, n);
      if (gfq::is_invertible(m)) return m;
    }
  }

  // Product of a random invertible matrix and a random rank-r projection.
  gfq::Matrix of_rank(const gfq::FieldRef& f, std::size_t rows, std::size_t cols, std::size_t r) {
    gfq::Matrix d(f, rows, cols);
    for (std::size_t i = 0; i < r; ++i) d(i, i) = gfq::kOne;
    return invertible(f, rows) * d * invertible(f, cols);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qforms::testgen
