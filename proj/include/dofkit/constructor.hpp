#pragma once

#include "dofkit/dof_engine.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace dofkit {

/// Resolution k (r = 2^-k), grid coarsening p, blocklength N and the largest
/// absolute channel entry.
struct ConstructionParams {
  unsigned k = 1;
  unsigned p = 0;
  unsigned N = 1;
  Rational h_max;

  friend bool operator==(const ConstructionParams&, const ConstructionParams&) = default;

  Rational r() const { return pow2(-static_cast<int>(k)); }
  /// Ratio of the lifted self-similar inputs, r^N = 2^{-Nk}.
  Rational lifted_ratio() const { return pow2(-static_cast<int>(N * k)); }

  /// Smallest positive p with 2^-p <= 1 / (8 K M h_max). Throws
  /// Error{ResolutionTooCoarse} if k <= p.
  static ConstructionParams derive(std::size_t users, std::size_t dim, const Rational& h_max, unsigned k, unsigned N);
  /// Caller-chosen p; only k > p is enforced. Open-set conditions are then
  /// checked on the constructed sumsets rather than implied by p.
  static ConstructionParams with_p(unsigned k, unsigned p, unsigned N, const Rational& h_max);
};

/// 2^-(k-p) * {0, 1, ..., 2^(k-p)}.
std::vector<Rational> grid_values(const ConstructionParams& params);

struct GridBuild {
  ConstructionParams params;
  std::vector<Rational> grid;
};

/// Requires integer entries (Error{NonIntegerChannel}); see clear_denominators.
GridBuild grid_build(const ChannelMatrix& h, unsigned k, unsigned N = 1);

struct ClearedChannel {
  ChannelMatrix channel;
  std::vector<RatMatrix> col_scaling;  // channel = h * diag(col_scaling)
};

/// Scales each transmitter's block column by the lcm of its denominators.
ClearedChannel clear_denominators(const ChannelMatrix& h);

/// I.i.d. uniform letters from `grid` over an M x N codeword, laid out
/// letter by letter (entries n*M .. n*M+M-1 hold letter n).
FiniteDist uniform_codewords(std::span<const Rational> grid, std::size_t dim, unsigned N,
                             std::size_t cap = kDefaultSupportCap);

/// Pushes each codeword distribution through x -> sum_n r^(n-1) x^(n).
/// Throws Error{OpenSetUnverified} if r exceeds m/(m+M) of the grid or two
/// codewords fold to the same point.
std::vector<FiniteDist> fold_codewords(std::span<const FiniteDist> codewords, std::span<const Rational> grid,
                                       std::size_t dim, const ConstructionParams& params);

/// Self-similar scheme with ratio r^N and the folded supports.
SelfSimilarScheme lift_selfsimilar(std::vector<FiniteDist> folded, const ConstructionParams& params);

/// dof_eval for a lifted scheme with log2(1/r^N) taken as the integer Nk.
DofReport constructed_dof(const ChannelMatrix& h, const SelfSimilarScheme& scheme, const ConstructionParams& params,
                          std::size_t cap = kDefaultSupportCap);

/// Minimum gap and size of V + rV + ... + r^(ell-1) V. Throws
/// Error{ConditionViolated} unless r <= m(V)/(m(V)+M(V)).
std::pair<Rational, std::size_t> minkowski_check(std::span<const Rational> values, const Rational& r,
                                                 std::size_t ell);

struct Construction {
  ClearedChannel cleared;
  GridBuild grid;
  SelfSimilarScheme scheme;
  DofReport report;
};

/// Clear denominators, build the grid, fold uniform codewords, lift and evaluate.
Construction construct(const ChannelMatrix& h, unsigned k, unsigned N, std::size_t cap = kDefaultSupportCap);

}  // namespace dofkit
