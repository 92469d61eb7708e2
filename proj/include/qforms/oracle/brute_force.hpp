#pragma once

// Slow exhaustive ground truth for tiny instances. Shares nothing with the
// counting engine except field arithmetic and elimination.

#include <cstdint>
#include <vector>

#include "qforms/common/bigint.hpp"
#include "qforms/common/product_kind.hpp"
#include "qforms/gfq/matrix.hpp"

namespace qforms::oracle {

using gfq::FieldRef;
using gfq::Matrix;

struct Caps {
  std::uint64_t conj_group = 100000;     // |GL(n,q)| for conjugacy classes
  std::uint64_t group_product = 1000000; // |GL(n,q)| * |GL(m,q)| for tensor orbits
  std::uint64_t objects = 65536;         // q^{dm} tensors
  std::uint64_t subspaces = 1000000;     // Gaussian binomial
  std::uint64_t aut_group = 1000000;     // |GL(n,q)| for automorphism counts
};

struct OrbitPartition {
  std::vector<Matrix> representatives;
  std::vector<BigInt> sizes;
};

// Transvections I + c E_ij and diag(c, 1, ..., 1) for every nonzero c.
std::vector<Matrix> gl_generators(std::size_t n, const FieldRef& field);

// Every invertible n x n matrix, row by row. Throws LimitExceeded past cap.
std::vector<Matrix> all_invertible(std::size_t n, const FieldRef& field, std::uint64_t cap);

OrbitPartition bf_conj_classes(std::size_t n, const FieldRef& field, const Caps& caps = {});

// Orbits of (A_1..A_m) in the kind's matrix space under
// A'_k = sum_l (Q^{-1})_{kl} P^T A_l P. Full, Symmetric, Alternating only.
BigInt bf_tensor_orbits(std::size_t n, std::size_t m, const FieldRef& field, ProductKind kind,
                        const Caps& caps = {});

// Matrices (D x D, acting on column vectors) of the module action of each
// GL(n, q) generator, built independently of the tensor module.
std::vector<Matrix> module_generators(std::size_t n, const FieldRef& field, ProductKind kind);

// Orbits of D x m coordinate arrays X under X -> M X and X -> X Q^T, with M
// from module_generators and Q from GL(m) generators.
BigInt bf_module_tensor_orbits(const std::vector<Matrix>& module_gens, std::size_t m, const Caps& caps = {});

// m-dimensional subspaces of F^D, as reduced echelon bases, partitioned into
// orbits of the group generated by gens.
BigInt bf_subspace_orbits(const std::vector<Matrix>& gens, std::size_t m, const Caps& caps = {});

struct SubspaceOrbits {
  std::vector<Matrix> representatives;  // RREF bases, rows are vectors
  std::vector<std::uint64_t> sizes;
};
SubspaceOrbits bf_subspace_orbit_partition(const std::vector<Matrix>& gens, std::size_t m, const Caps& caps = {});

// |{P in GL(n,q) : P^T A P in span(basis) for every A in basis}|.
BigInt bf_aut_order(const std::vector<Matrix>& basis, std::size_t n, const FieldRef& field, const Caps& caps = {});

// Primal action on span(s_i, c_jk) over GF(2) induced by x_i -> prod_j x_j^{P_ji},
// computed by collection in the free group of Frattini class 2.
Matrix frattini2_primal(const Matrix& p);

// Number of m-subspaces of F_q^D.
BigInt gaussian_binomial(std::uint64_t q, std::size_t d, std::size_t m);

}  // namespace qforms::oracle
