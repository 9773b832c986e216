#pragma once

#include "dofkit/channel.hpp"
#include "dofkit/schemes.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace dofkit {

/// Scalar subchannels of a channel whose blocks are all diagonal.
struct ParallelDecomposition {
  std::vector<RatMatrix> subchannels;  // M matrices, each K x K
  bool fully_connected = false;        // every scalar coefficient nonzero
  bool dets_verified = false;          // det H_{i,j} = prod_m h_{i,j}[m] for all i, j

  friend bool operator==(const ParallelDecomposition&, const ParallelDecomposition&) = default;
};

/// Throws Error{NotParallel} if any block is not diagonal.
ParallelDecomposition parallel_extract(const ChannelMatrix& h);

/// Inverse of parallel_extract: block(i, j) = diag(h_{i,j}[1..M]).
ChannelMatrix parallel_assemble(std::span<const RatMatrix> subchannels);

/// Stacks per-subchannel scalar schemes into one scheme on R^M: V_j is the
/// block-diagonal of the 1 x d_j[m] directions. Throws
/// Error{UserCountMismatch} when the schemes disagree on K, and
/// Error{AmbientDimMismatch} when a scheme is not scalar.
SubspaceScheme compose_independent(std::span<const SubspaceScheme> per_subchannel);

/// Result of normalising a fully connected 3 x 3 matrix to
///   [[a, 1, 1], [1, b, 1], [1, d, c]]
/// via diag(row_scaling) * A * diag(col_scaling).
struct StandardForm {
  RatMatrix matrix;
  std::array<Rational, 3> row_scaling;
  std::array<Rational, 3> col_scaling;
  Rational a, b, c, d;

  friend bool operator==(const StandardForm&, const StandardForm&) = default;
};

/// Throws Error{NotFullyConnected} if some entry is zero, Error{DimMismatch}
/// if `a` is not 3 x 3.
StandardForm standardize_3user(const RatMatrix& a);

enum class StrictnessKind { DofStrictlyBelowThreeHalves, NoClaim };

struct StrictnessClaim {
  bool hypothesis_holds = false;
  StrictnessKind claim = StrictnessKind::NoClaim;
  /// 'a', 'b' or 'c': the first diagonal family found constant across m.
  std::optional<char> constant_family;
  /// True when only b or c is constant. The statement is proved for a and
  /// carried over to b and c by relabelling users.
  bool symmetry_based = false;

  friend bool operator==(const StrictnessClaim&, const StrictnessClaim&) = default;
};

/// Each input must be in standard form with all entries nonzero, otherwise
/// Error{NotStandardForm}.
StrictnessClaim rational_strictness(std::span<const RatMatrix> subchannels);

}  // namespace dofkit
