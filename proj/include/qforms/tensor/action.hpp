#pragma once

#include <cstddef>

#include "qforms/common/product_kind.hpp"
#include "qforms/gfq/matrix.hpp"

namespace qforms::tensor {

using gfq::Matrix;

struct ActionReport {
  std::size_t d = 0;   // module dimension
  std::size_t m = 0;   // dim W
  std::size_t mu = 0;  // dim of the fixed space
  std::size_t nu = 0;  // d*m - mu
};

// Matrix of A -> P^T A P on the kind's matrix space in its canonical basis:
//   Full        E_ij, (i,j) lex
//   Symmetric   E_ii for all i, then E_ij + E_ji for i < j lex
//   Alternating E_ij - E_ji for i < j lex
// Throws SingularMatrix for singular P.
Matrix square_action(const Matrix& p, ProductKind kind);

// Primal action on span(s_1..s_n, c_12, ..., c_{n-1,n}) over GF(2) induced by
// x_i -> prod_j x_j^{P_ji}:
//   s_i  -> sum_j P_ji s_j + sum_{j<k} P_ji P_ki c_jk
//   c_ij -> sum_{k<l} (P_ki P_lj + P_li P_kj) c_kl
Matrix frattini2_primal(const Matrix& p);

// FrattiniOdd: block diagonal of square_action(P, Alternating) and P^T.
// Frattini2Dual: inverse transpose of frattini2_primal(P); needs q = 2.
// Also accepts Full/Symmetric/Alternating and forwards to square_action.
Matrix module_action(const Matrix& p, ProductKind kind);

// Joint action M (x) Q^{-1} on module (x) W, module index major.
Matrix full_action(const Matrix& msq, const Matrix& q);

// mu = dim ker(full_action(module_action(P), Q) - I).
ActionReport fixed_dim(const Matrix& p, const Matrix& q, ProductKind kind);

// Index of coordinate (module index, W index) in module (x) W.
inline std::size_t tensor_index(std::size_t module_idx, std::size_t w_idx, std::size_t m) {
  return module_idx * m + w_idx;
}

// Module coordinate carrying e_i [] e_j (up to sign for Alternating).
// Returns false when e_i [] e_j is zero, i.e. Alternating with i == j.
bool square_coordinate(std::size_t i, std::size_t j, std::size_t n, ProductKind kind, std::size_t& idx);

}  // namespace qforms::tensor
