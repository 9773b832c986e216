#include "dofkit/linalg.hpp"

#include "dofkit/error.hpp"

#include <utility>

namespace dofkit {

namespace {

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> e;
  Integer& at(std::size_t r, std::size_t c) { return e[r * cols + c]; }
};

// Scales each row by the lcm of its denominators. Returns the integer matrix
// and the product of the row multipliers.
std::pair<IntMatrix, Integer> clear_row_denominators(const RatMatrix& a) {
  IntMatrix m{a.rows(), a.cols(), std::vector<Integer>(a.rows() * a.cols())};
  Integer scale = 1;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < a.cols(); ++c) l = boost::multiprecision::lcm(l, denominator(a(r, c)));
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const Rational& x = a(r, c);
      m.at(r, c) = numerator(x) * (l / denominator(x));
    }
    scale *= l;
  }
  return {std::move(m), scale};
}

struct BareissResult {
  std::size_t rank = 0;
  Integer last_pivot = 1;
  int sign = 1;
};

// In-place Bareiss elimination with row pivoting. Columns without a pivot are
// skipped, so the number of pivots is the rank. For a square nonsingular
// matrix the final pivot equals sign * det.
BareissResult bareiss(IntMatrix& m) {
  BareissResult out;
  Integer prev = 1;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols && pivot_row < m.rows; ++c) {
    std::size_t p = pivot_row;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != pivot_row) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(pivot_row, j));
      out.sign = -out.sign;
    }
    const Integer pivot = m.at(pivot_row, c);
    for (std::size_t r = pivot_row + 1; r < m.rows; ++r) {
      const Integer factor = m.at(r, c);
      for (std::size_t j = c + 1; j < m.cols; ++j) {
        m.at(r, j) = (pivot * m.at(r, j) - factor * m.at(pivot_row, j)) / prev;
      }
      m.at(r, c) = 0;
    }
    prev = pivot;
    out.last_pivot = pivot;
    ++pivot_row;
  }
  out.rank = pivot_row;
  return out;
}

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const Rational inv = 1 / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c) == 0) continue;
      const Rational f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t mat_rank(const RatMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  auto [m, scale] = clear_row_denominators(a);
  return bareiss(m).rank;
}

Rational mat_det(const RatMatrix& a) {
  if (!a.is_square()) {
    throw Error(Errc::NonSquare, "determinant of a " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                     " matrix");
  }
  if (a.rows() == 0) return 1;
  auto [m, scale] = clear_row_denominators(a);
  const BareissResult res = bareiss(m);
  if (res.rank < a.rows()) return 0;
  Integer num = res.last_pivot;
  if (res.sign < 0) num = -num;
  return Rational(num, scale);
}

std::vector<std::size_t> independent_columns(const RatMatrix& a) {
  RatMatrix m = a;
  return rref(m);
}

RatMatrix null_space(const RatMatrix& a) {
  RatMatrix m = a;
  const std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(a.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return RatMatrix::from_columns(basis, a.cols());
}

Subspace::Subspace(RatMatrix basis) : basis_(std::move(basis)) {
  if (mat_rank(basis_) != basis_.cols()) {
    throw Error(Errc::RankDeficientDirections, "subspace basis with " + std::to_string(basis_.cols()) +
                                                   " columns has rank " + std::to_string(mat_rank(basis_)));
  }
}

Subspace Subspace::span(const RatMatrix& columns) {
  std::vector<RatVector> keep;
  for (auto c : independent_columns(columns)) keep.push_back(columns.col(c));
  return Subspace(RatMatrix::from_columns(keep, columns.rows()));
}

Subspace Subspace::zero(std::size_t ambient_dim) { return Subspace(RatMatrix(ambient_dim, 0)); }

Subspace Subspace::whole(std::size_t ambient_dim) { return Subspace(RatMatrix::identity(ambient_dim)); }

Subspace Subspace::orthogonal_complement() const {
  if (dim() == 0) return whole(ambient_dim());
  return Subspace(null_space(basis_.transpose()));
}

bool Subspace::contains(const RatVector& v) const {
  return mat_rank(hconcat(basis_, RatMatrix::column(v))) == dim();
}

std::size_t projected_dim(const Subspace& target, const Subspace& source) {
  if (target.ambient_dim() != source.ambient_dim()) {
    throw Error(Errc::DimMismatch, "projection between R^" + std::to_string(source.ambient_dim()) + " and R^" +
                                       std::to_string(target.ambient_dim()));
  }
  if (target.dim() == 0 || source.dim() == 0) return 0;
  return mat_rank(target.basis().transpose() * source.basis());
}

}  // namespace dofkit
