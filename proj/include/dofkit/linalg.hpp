#pragma once

#include "dofkit/matrix.hpp"

#include <cstddef>
#include <vector>

namespace dofkit {

// Exact rank and determinant via fraction-free (Bareiss) elimination. Rows are
// first scaled to integers by their denominator lcm, so every intermediate is
// an integer bounded by a minor of the scaled matrix.
std::size_t mat_rank(const RatMatrix& a);
Rational mat_det(const RatMatrix& a);

/// Indices of a maximal set of linearly independent columns, chosen greedily
/// left to right.
std::vector<std::size_t> independent_columns(const RatMatrix& a);

/// Basis (as columns) of {x : a x = 0}, from the reduced row echelon form.
RatMatrix null_space(const RatMatrix& a);

/// A linear subspace of Q^n held through a full-column-rank basis. The
/// zero subspace is a basis with n rows and no columns.
class Subspace {
 public:
  /// Throws Error{RankDeficientDirections} unless `basis` has full column rank.
  explicit Subspace(RatMatrix basis);

  /// Span of arbitrary columns; dependent columns are dropped.
  static Subspace span(const RatMatrix& columns);
  static Subspace zero(std::size_t ambient_dim);
  static Subspace whole(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t dim() const noexcept { return basis_.cols(); }
  const RatMatrix& basis() const noexcept { return basis_; }

  /// Euclidean orthogonal complement.
  Subspace orthogonal_complement() const;
  bool contains(const RatVector& v) const;

 private:
  RatMatrix basis_;
};

/// dim of the orthogonal projection of `source` onto `target`. For a target
/// basis B this is rank(B^T S): the projector B (B^T B)^{-1} B^T is injective
/// after B^T.
std::size_t projected_dim(const Subspace& target, const Subspace& source);

}  // namespace dofkit
