#pragma once

#include "dofkit/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dofkit {

using RatVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix diagonal(std::span<const Rational> diag);
  static RatMatrix from_columns(std::span<const RatVector> columns, std::size_t rows);
  static RatMatrix column(const RatVector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<Rational>& entries() const noexcept { return entries_; }

  RatVector col(std::size_t c) const;
  RatVector row(std::size_t r) const;
  RatMatrix transpose() const;
  RatMatrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;

  bool is_zero() const;
  bool is_diagonal() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rational& s, const RatMatrix& a);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatVector operator*(const RatMatrix& a, const RatVector& v);

/// Column concatenation [a b]; row counts must agree. Zero-column operands are allowed.
RatMatrix hconcat(const RatMatrix& a, const RatMatrix& b);
RatMatrix hconcat(std::span<const RatMatrix> parts, std::size_t rows);

RatMatrix block_diagonal(std::span<const RatMatrix> blocks);

}  // namespace dofkit
