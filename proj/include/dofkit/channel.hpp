#pragma once

#include "dofkit/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dofkit {

/// K-user vector interference channel: a K x K grid of M x M blocks where
/// block(i, j) maps transmitter j to receiver i (0-based).
class ChannelMatrix {
 public:
  /// `blocks` is row-major over (receiver, transmitter). Requires K >= 2 and
  /// every block M x M.
  ChannelMatrix(std::size_t users, std::size_t dim, std::vector<RatMatrix> blocks);

  /// Splits a KM x KM matrix into M x M blocks.
  static ChannelMatrix from_stacked(const RatMatrix& stacked, std::size_t users);

  /// Scalar (M = 1) channel from a K x K coefficient matrix.
  static ChannelMatrix scalar(const RatMatrix& coefficients);

  std::size_t users() const noexcept { return users_; }
  std::size_t dim() const noexcept { return dim_; }

  const RatMatrix& block(std::size_t rx, std::size_t tx) const { return blocks_[rx * users_ + tx]; }
  const std::vector<RatMatrix>& blocks() const noexcept { return blocks_; }

  RatMatrix stacked() const;

  /// Largest absolute entry.
  Rational max_abs_entry() const;

  friend bool operator==(const ChannelMatrix&, const ChannelMatrix&) = default;

 private:
  std::size_t users_;
  std::size_t dim_;
  std::vector<RatMatrix> blocks_;
};

/// Fixed-point-free permutation whose cross links all carry nonsingular
/// blocks. `sigma[i]` is the 0-based transmitter paired with receiver i.
struct DerangementCert {
  std::vector<std::size_t> sigma;
  bool verified = false;
};

/// Lexicographically smallest derangement sigma with det H_{i,sigma(i)} != 0
/// for every i, or nullopt when the bipartite graph of nonsingular cross
/// blocks has no perfect matching.
std::optional<DerangementCert> find_derangement(const ChannelMatrix& h);

}  // namespace dofkit
