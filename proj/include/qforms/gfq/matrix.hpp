#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qforms/gfq/field.hpp"

namespace qforms::gfq {

// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldRef field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldRef field, std::size_t n);
  // Entries given as integers and mapped through Z -> Z_p (prime fields) or
  // taken as element codes (extension fields).
  static Matrix from_ints(FieldRef field, std::size_t rows, std::size_t cols,
                          std::initializer_list<long long> values);
  static Matrix from_codes(FieldRef field, std::size_t rows, std::size_t cols,
                           std::span<const std::uint8_t> codes);

  const FieldRef& field_ref() const { return field_; }
  const Field& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  // Byte view of a row for the SIMD kernels.
  std::uint8_t* row_bytes(std::size_t i) { return reinterpret_cast<std::uint8_t*>(data_.data() + i * cols_); }
  const std::uint8_t* row_bytes(std::size_t i) const {
    return reinterpret_cast<const std::uint8_t*>(data_.data() + i * cols_);
  }

  const std::vector<Elem>& data() const { return data_; }

  Matrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  // Rows [r0, r0+nr) and columns [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  Matrix scaled(Elem c) const;

  std::vector<Elem> apply(std::span<const Elem> v) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  FieldRef field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);

// Integer codes of all entries, row-major; handy for hashing and JSON.
std::vector<int> to_codes(const Matrix& m);

}  // namespace qforms::gfq
