#include "dofkit/matrix.hpp"

#include "dofkit/error.hpp"

#include <string>

namespace dofkit {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw Error(Errc::DimMismatch, "matrix needs " + std::to_string(rows * cols) + " entries, got " +
                                       std::to_string(entries_.size()));
  }
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(Errc::DimMismatch, "ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::diagonal(std::span<const Rational> diag) {
  RatMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

RatMatrix RatMatrix::from_columns(std::span<const RatVector> columns, std::size_t rows) {
  RatMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw Error(Errc::DimMismatch, "column " + std::to_string(c) + " has length " +
                                         std::to_string(columns[c].size()) + ", expected " +
                                         std::to_string(rows));
    }
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RatMatrix RatMatrix::column(const RatVector& v) { return RatMatrix(v.size(), 1, v); }

RatVector RatMatrix::col(std::size_t c) const {
  RatVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RatVector RatMatrix::row(std::size_t r) const {
  return RatVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RatMatrix RatMatrix::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) throw Error(Errc::DimMismatch, "block out of range");
  RatMatrix b(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t c = 0; c < ncols; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

bool RatMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

bool RatMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(Errc::DimMismatch, "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                       " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  RatMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) p(i, j) += aik * b(k, j);
    }
  }
  return p;
}

RatMatrix operator*(const Rational& s, const RatMatrix& a) {
  std::vector<Rational> e = a.entries();
  for (auto& x : e) x *= s;
  return RatMatrix(a.rows(), a.cols(), std::move(e));
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimMismatch, "matrix sum shape mismatch");
  std::vector<Rational> e = a.entries();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
  return RatMatrix(a.rows(), a.cols(), std::move(e));
}

RatVector operator*(const RatMatrix& a, const RatVector& v) {
  if (a.cols() != v.size()) throw Error(Errc::DimMismatch, "matrix-vector shape mismatch");
  RatVector out(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k) != 0 && v[k] != 0) out[i] += a(i, k) * v[k];
  return out;
}

RatMatrix hconcat(const RatMatrix& a, const RatMatrix& b) {
  const RatMatrix parts[] = {a, b};
  return hconcat(parts, a.rows());
}

RatMatrix hconcat(std::span<const RatMatrix> parts, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows && p.cols() != 0) throw Error(Errc::DimMismatch, "hconcat row count mismatch");
    cols += p.cols();
  }
  RatMatrix m(rows, cols);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows() && p.cols() != 0; ++r)
      for (std::size_t c = 0; c < p.cols(); ++c) m(r, offset + c) = p(r, c);
    offset += p.cols();
  }
  return m;
}

RatMatrix block_diagonal(std::span<const RatMatrix> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  RatMatrix m(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) m(r0 + r, c0 + c) = b(r, c);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

}  // namespace dofkit
