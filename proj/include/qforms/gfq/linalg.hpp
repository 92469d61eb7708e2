#pragma once

#include <cstddef>
#include <vector>

#include "qforms/gfq/matrix.hpp"

namespace qforms::gfq {

// Elimination back end. Auto picks the bit-packed path for GF(2).
enum class Path { Auto, Generic, PackedGF2 };

struct Echelon {
  Matrix rref;                      // same shape as the input
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

// Reduced row echelon form: pivots are the leftmost nonzero entry of each
// row, scaled to one, and cleared above and below.
Echelon rref(Matrix m, Path path = Path::Auto);

std::size_t rank(const Matrix& m, Path path = Path::Auto);

// Basis of {v : Mv = 0} as the rows of a matrix in reduced echelon form;
// cols() == m.cols() and rows() == m.cols() - rank(m).
Matrix kernel_basis(const Matrix& m, Path path = Path::Auto);

std::size_t nullity(const Matrix& m, Path path = Path::Auto);

// Nonzero rows of the RREF: the canonical basis of the row space.
Matrix row_space(const Matrix& m, Path path = Path::Auto);

bool is_invertible(const Matrix& m);
Matrix inverse(const Matrix& m);  // throws SingularMatrix
Elem determinant(const Matrix& m);

// M - I for square M.
Matrix minus_identity(const Matrix& m);

}  // namespace qforms::gfq
