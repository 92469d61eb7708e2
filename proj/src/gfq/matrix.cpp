#include "qforms/gfq/matrix.hpp"

#include <sstream>

#include "qforms/common/errors.hpp"
#include "qforms/gfq/kernels.hpp"

namespace qforms::gfq {

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw DomainError("matrices over different fields");
}

}  // namespace

Matrix::Matrix(FieldRef field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, kZero) {}

Matrix Matrix::identity(FieldRef field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = kOne;
  return m;
}

Matrix Matrix::from_ints(FieldRef field, std::size_t rows, std::size_t cols,
                         std::initializer_list<long long> values) {
  if (values.size() != rows * cols) throw DomainError("from_ints: wrong number of entries");
  Matrix m(field, rows, cols);
  std::size_t k = 0;
  for (long long v : values) {
    if (field->is_prime_field()) {
      m.data_[k++] = field->from_int(v);
    } else {
      if (v < 0 || v >= static_cast<long long>(field->q())) throw DomainError("from_ints: code out of range");
      m.data_[k++] = Elem{static_cast<std::uint8_t>(v)};
    }
  }
  return m;
}

Matrix Matrix::from_codes(FieldRef field, std::size_t rows, std::size_t cols,
                          std::span<const std::uint8_t> codes) {
  if (codes.size() != rows * cols) throw DomainError("from_codes: wrong number of entries");
  Matrix m(field, rows, cols);
  for (std::size_t k = 0; k < codes.size(); ++k) {
    if (codes[k] >= field->q()) throw DomainError("from_codes: code out of range");
    m.data_[k] = Elem{codes[k]};
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool Matrix::is_zero() const {
  for (Elem e : data_) {
    if (e != kZero) return false;
  }
  return true;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(i, j) != (i == j ? kOne : kZero)) return false;
    }
  }
  return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DomainError("block out of range");
  Matrix b(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DomainError("set_block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols_ != b.rows_) throw DomainError("matrix product: dimension mismatch");
  const Field& f = a.field();
  const auto& ops = kernels::active();
  Matrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::uint8_t* dst = c.row_bytes(i);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Elem s = a(i, k);
      if (s == kZero) continue;
      ops.axpy(f, dst, b.row_bytes(k), code(s), b.cols_);
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum: dimension mismatch");
  Matrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.field().add(a.data_[k], b.data_[k]);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix difference: dimension mismatch");
  Matrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.field().sub(a.data_[k], b.data_[k]);
  return c;
}

Matrix Matrix::scaled(Elem c) const {
  Matrix r = *this;
  for (auto& e : r.data_) e = field_->mul(c, e);
  return r;
}

std::vector<Elem> Matrix::apply(std::span<const Elem> v) const {
  if (v.size() != cols_) throw DomainError("matrix-vector product: dimension mismatch");
  std::vector<Elem> out(rows_, kZero);
  for (std::size_t i = 0; i < rows_; ++i) {
    Elem acc = kZero;
    for (std::size_t j = 0; j < cols_; ++j) acc = field_->add(acc, field_->mul((*this)(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.field_ && b.field_ && !(a.field() == b.field())) return false;
  return a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << static_cast<int>(code((*this)(i, j)));
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  const Field& f = a.field();
  Matrix k(a.field_ref(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Elem s = a(i, j);
      if (s == kZero) continue;
      for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
          k(i * b.rows() + r, j * b.cols() + c) = f.mul(s, b(r, c));
        }
      }
    }
  }
  return k;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  Matrix s(a.field_ref(), a.rows() + b.rows(), a.cols() + b.cols());
  s.set_block(0, 0, a);
  s.set_block(a.rows(), a.cols(), b);
  return s;
}

std::vector<int> to_codes(const Matrix& m) {
  std::vector<int> out;
  out.reserve(m.data().size());
  for (Elem e : m.data()) out.push_back(code(e));
  return out;
}

}  // namespace qforms::gfq
