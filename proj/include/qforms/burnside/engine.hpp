#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qforms/common/bigint.hpp"
#include "qforms/common/product_kind.hpp"
#include "qforms/glq/classes.hpp"
#include "qforms/gfq/matrix.hpp"
#include "qforms/poly/poly.hpp"

namespace qforms::burnside {

using gfq::FieldRef;

struct BurnsideSum {
  BigInt numerator;  // sum over class pairs of |C_P| |C_Q| q^mu
  std::size_t class_pairs = 0;
};

// Orbit counts for GL(n) x GL(m) acting on module (x) F^m, for one n and
// every m on demand.
//
// With A the module matrix of P, the fixed points of (P, Q) are the X with
// A X = X Q^T, so mu = sum over elementary divisors g of Q of dim ker g(A).
// Those kernel dimensions depend only on P and g, and are cached per P.
class BurnsideEngine {
 public:
  // threads == 0 picks QFORMS_THREADS or the hardware concurrency.
  BurnsideEngine(unsigned n, FieldRef field, ProductKind kind, unsigned threads = 0);
  ~BurnsideEngine();
  BurnsideEngine(const BurnsideEngine&) = delete;
  BurnsideEngine& operator=(const BurnsideEngine&) = delete;

  unsigned n() const { return n_; }
  std::size_t module_dim() const { return d_; }
  const FieldRef& field() const { return field_; }
  ProductKind kind() const { return kind_; }
  unsigned threads() const { return threads_; }

  // Throws ConsistencyError when the sum is not divisible by |GL(n)||GL(m)|.
  BurnsideSum burnside_sum(unsigned m);

  BigInt tensor_orbits(unsigned m);
  // Orbits of m-dimensional subspaces of the module; 0 when m > d.
  BigInt subspace_orbits(unsigned m);
  // Average stabilizer order over all tensors; two evaluations must agree.
  Rational avg_aut(unsigned m);

 private:
  struct PClass;
  struct QClass {
    BigInt size;
    std::vector<std::pair<std::size_t, unsigned>> divisors;  // (irreducible index, exponent)
  };

  void ensure_degree(unsigned deg);
  std::size_t irreducible_index(const poly::Poly& f) const;
  const std::vector<QClass>& q_classes(unsigned m);
  std::string describe(unsigned m) const;

  unsigned n_;
  FieldRef field_;
  ProductKind kind_;
  std::size_t d_;
  unsigned threads_;
  BigInt gl_n_;

  std::vector<PClass> p_;
  std::vector<poly::Poly> irreducibles_;  // degree-major, canonical order
  std::map<poly::Poly, std::size_t> irr_index_;
  unsigned degree_done_ = 0;
  std::map<unsigned, std::vector<QClass>> q_cache_;
  std::map<unsigned, BurnsideSum> sum_cache_;
  std::mutex mutex_;
};

BigInt tensor_orbits(unsigned n, unsigned m, const FieldRef& field, ProductKind kind, unsigned threads = 0);
BigInt subspace_orbits(unsigned n, unsigned m, const FieldRef& field, ProductKind kind, unsigned threads = 0);
Rational avg_aut(unsigned n, unsigned m, const FieldRef& field, ProductKind kind, unsigned threads = 0);

// q^{m^2} / |GL(m, q)|.
Rational k_constant(unsigned m, std::uint64_t q);

// Worker count from QFORMS_THREADS, else the hardware concurrency, at least 1.
unsigned default_threads();

}  // namespace qforms::burnside
