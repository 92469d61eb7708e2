#include "qforms/gfq/linalg.hpp"

#include <utility>

#include "qforms/common/errors.hpp"
#include "qforms/gfq/kernels.hpp"

namespace qforms::gfq {

namespace {

Echelon rref_generic(Matrix m) {
  const Field& f = m.field();
  const auto& ops = kernels::active();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == kZero) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    }
    const Elem lead = m(r, c);
    if (lead != kOne) ops.scale(f, m.row_bytes(r) + c, code(f.inv(lead)), m.cols() - c);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Elem v = m(i, c);
      if (v == kZero) continue;
      ops.axpy(f, m.row_bytes(i) + c, m.row_bytes(r) + c, code(f.neg(v)), m.cols() - c);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

// Rows as 64-bit word arrays; column j is bit (j % 64) of word j / 64.
Echelon rref_packed(Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(rows * words, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (m(i, j) != kZero) bits[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
  auto row = [&](std::size_t i) { return bits.data() + i * words; };
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t sel = r;
    while (sel < rows && !(row(sel)[w] & mask)) ++sel;
    if (sel == rows) continue;
    if (sel != r) {
      for (std::size_t k = 0; k < words; ++k) std::swap(row(sel)[k], row(r)[k]);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || !(row(i)[w] & mask)) continue;
      for (std::size_t k = w; k < words; ++k) row(i)[k] ^= row(r)[k];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = (row(i)[j / 64] >> (j % 64)) & 1u ? kOne : kZero;
    }
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace

Echelon rref(Matrix m, Path path) {
  const bool gf2 = m.field().q() == 2;
  if (path == Path::PackedGF2 && !gf2) throw DomainError("packed elimination requires GF(2)");
  if (path == Path::PackedGF2 || (path == Path::Auto && gf2)) return rref_packed(std::move(m));
  return rref_generic(std::move(m));
}

std::size_t rank(const Matrix& m, Path path) { return rref(m, path).rank(); }

Matrix kernel_basis(const Matrix& m, Path path) {
  const Field& f = m.field();
  Echelon e = rref(m, path);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  Matrix basis(m.field_ref(), cols - e.rank(), cols);
  std::size_t k = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(k, free) = kOne;
    for (std::size_t i = 0; i < e.rank(); ++i) basis(k, e.pivots[i]) = f.neg(e.rref(i, free));
    ++k;
  }
  return rref(std::move(basis), path).rref;
}

std::size_t nullity(const Matrix& m, Path path) { return m.cols() - rank(m, path); }

Matrix row_space(const Matrix& m, Path path) {
  Echelon e = rref(m, path);
  return e.rref.block(0, 0, e.rank(), m.cols());
}

bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw SingularMatrix("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field_ref(), n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix::identity(m.field_ref(), n));
  Echelon e = rref(std::move(aug));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
  return e.rref.block(0, n, n, n);
}

Elem determinant(const Matrix& m) {
  if (!m.is_square()) throw DomainError("determinant of a non-square matrix");
  const Field& f = m.field();
  Matrix a = m;
  const std::size_t n = a.rows();
  Elem det = kOne;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && a(sel, c) == kZero) ++sel;
    if (sel == n) return kZero;
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(c, j));
      det = f.neg(det);
    }
    const Elem piv = a(c, c);
    det = f.mul(det, piv);
    const Elem inv = f.inv(piv);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Elem factor = f.mul(a(i, c), inv);
      if (factor == kZero) continue;
      for (std::size_t j = c; j < n; ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(c, j)));
    }
  }
  return det;
}

Matrix minus_identity(const Matrix& m) {
  if (!m.is_square()) throw DomainError("minus_identity of a non-square matrix");
  Matrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i) r(i, i) = m.field().sub(r(i, i), kOne);
  return r;
}

}  // namespace qforms::gfq
