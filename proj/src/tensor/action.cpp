#include "qforms/tensor/action.hpp"

#include "qforms/common/errors.hpp"
#include "qforms/gfq/linalg.hpp"

namespace qforms::tensor {

using gfq::Elem;
using gfq::kOne;
using gfq::kZero;

namespace {

// Position of the pair (i, j), i < j, in the lex order of such pairs.
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

void require_invertible_square(const Matrix& p, const char* what) {
  if (!p.is_square()) throw DomainError(std::string(what) + " must be square");
  if (!gfq::is_invertible(p)) throw SingularMatrix(std::string(what) + " is singular");
}

Matrix symmetric_action(const Matrix& p) {
  const auto& f = p.field();
  const std::size_t n = p.rows();
  const std::size_t d = n * (n + 1) / 2;
  Matrix out(p.field_ref(), d, d);
  // Column for basis element E with endpoints (k, l): coordinates of P^T E P.
  auto fill = [&](std::size_t col, std::size_t k, std::size_t l) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        Elem v = f.mul(p(k, a), p(l, b));
        if (k != l) v = f.add(v, f.mul(p(l, a), p(k, b)));
        const std::size_t row = a == b ? a : n + pair_index(a, b, n);
        out(row, col) = v;
      }
    }
  };
  for (std::size_t k = 0; k < n; ++k) fill(k, k, k);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) fill(n + pair_index(k, l, n), k, l);
  return out;
}

Matrix alternating_action(const Matrix& p) {
  const auto& f = p.field();
  const std::size_t n = p.rows();
  const std::size_t d = n * (n - 1) / 2;
  Matrix out(p.field_ref(), d, d);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      const std::size_t col = pair_index(k, l, n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          out(pair_index(a, b, n), col) = f.sub(f.mul(p(k, a), p(l, b)), f.mul(p(l, a), p(k, b)));
    }
  }
  return out;
}

}  // namespace

bool square_coordinate(std::size_t i, std::size_t j, std::size_t n, ProductKind kind, std::size_t& idx) {
  if (i >= n || j >= n) throw DomainError("square coordinate out of range");
  switch (kind) {
    case ProductKind::Full: idx = i * n + j; return true;
    case ProductKind::Symmetric:
      idx = i == j ? i : n + pair_index(std::min(i, j), std::max(i, j), n);
      return true;
    case ProductKind::Alternating:
      if (i == j) return false;
      idx = pair_index(std::min(i, j), std::max(i, j), n);
      return true;
    default: throw DomainError("square coordinates exist only for full, sym and alt");
  }
}

Matrix square_action(const Matrix& p, ProductKind kind) {
  require_invertible_square(p, "P");
  switch (kind) {
    case ProductKind::Full: {
      const Matrix pt = p.transpose();
      return gfq::kronecker(pt, pt);
    }
    case ProductKind::Symmetric: return symmetric_action(p);
    case ProductKind::Alternating: return alternating_action(p);
    default: throw DomainError("square_action takes full, sym or alt");
  }
}

Matrix frattini2_primal(const Matrix& p) {
  if (p.field().q() != 2) throw DomainError("the Frattini class 2 module is defined over GF(2) only");
  require_invertible_square(p, "P");
  const auto& f = p.field();
  const std::size_t n = p.rows();
  const std::size_t d = module_dim(ProductKind::Frattini2Dual, n);
  Matrix a(p.field_ref(), d, d);
  // Column i is the image of s_i, column n + pair(i, j) the image of c_ij.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(j, i) = p(j, i);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) a(n + pair_index(j, k, n), i) = f.mul(p(j, i), p(k, i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t col = n + pair_index(i, j, n);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
          a(n + pair_index(k, l, n), col) = f.add(f.mul(p(k, i), p(l, j)), f.mul(p(l, i), p(k, j)));
    }
  }
  return a;
}

Matrix module_action(const Matrix& p, ProductKind kind) {
  switch (kind) {
    case ProductKind::Full:
    case ProductKind::Symmetric:
    case ProductKind::Alternating: return square_action(p, kind);
    case ProductKind::FrattiniOdd:
      // P^T on the V summand keeps both summands right actions of GL(V),
      // matching A -> P^T A P on the alternating part.
      return gfq::direct_sum(square_action(p, ProductKind::Alternating), p.transpose());
    case ProductKind::Frattini2Dual: return gfq::inverse(frattini2_primal(p)).transpose();
  }
  throw DomainError("unknown product kind");
}

Matrix full_action(const Matrix& msq, const Matrix& q) {
  if (!msq.is_square()) throw DomainError("module action must be square");
  require_invertible_square(q, "Q");
  return gfq::kronecker(msq, gfq::inverse(q));
}

ActionReport fixed_dim(const Matrix& p, const Matrix& q, ProductKind kind) {
  if (p.field() != q.field()) throw DomainError("P and Q live over different fields");
  ActionReport r;
  r.d = module_dim(kind, p.rows());
  r.m = q.rows();
  const std::size_t dm = r.d * r.m;
  if (dm == 0) return r;
  const Matrix act = full_action(module_action(p, kind), q);
  r.mu = gfq::nullity(gfq::minus_identity(act));
  r.nu = dm - r.mu;
  return r;
}

}  // namespace qforms::tensor
