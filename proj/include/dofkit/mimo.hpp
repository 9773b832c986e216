#pragma once

#include "dofkit/channel.hpp"
#include "dofkit/linalg.hpp"
#include "dofkit/schemes.hpp"

#include <cstddef>
#include <vector>

namespace dofkit {

/// Transmit subspace U_i and receive subspace V_i per user.
struct MimoPair {
  Subspace u;
  Subspace v;
};

struct MimoConfig {
  std::vector<MimoPair> pairs;
};

enum class MimoCondition {
  ZeroForcing,      // H_{i,j} U_j must lie in V_i^perp for i != j
  NoDimensionLoss,  // projecting H_{i,i} U_i onto V_i keeps dim U_i
  ReceiveBasis,     // [basis(V_i) | basis((H_{i,i} U_i)^perp)] nonsingular
  DimensionMismatch // dim U_i != dim V_i
};

struct MimoFailure {
  MimoCondition condition;
  std::size_t rx;
  std::size_t tx;

  friend bool operator==(const MimoFailure&, const MimoFailure&) = default;
};

struct FeasibilityCert {
  bool ok = false;
  std::size_t ell = 0;
  std::vector<MimoFailure> failures;
  std::vector<bool> detV_nonzero;

  friend bool operator==(const FeasibilityCert&, const FeasibilityCert&) = default;
};

/// Throws Error{DimMismatch} when the pair count or ambient dimensions do
/// not match the channel.
FeasibilityCert mimo_check(const ChannelMatrix& h, const MimoConfig& cfg);

/// The subspace scheme transmitting along the U_i bases.
SubspaceScheme mimo_scheme(const MimoConfig& cfg);

const char* mimo_condition_name(MimoCondition c);

}  // namespace dofkit
