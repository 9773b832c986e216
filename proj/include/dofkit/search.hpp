#pragma once

#include "dofkit/dof_engine.hpp"

#include <cstddef>
#include <vector>

namespace dofkit {

inline constexpr std::size_t kDefaultSearchBudget = 1'000'000;

struct SearchResult {
  SubspaceScheme scheme;
  DofReport report;
  /// Pool indices chosen per user, each sorted ascending.
  std::vector<std::vector<std::size_t>> choice;
  std::size_t evaluated = 0;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// Exhaustive search over d_j-subsets of each user's pool of direction
/// vectors. Rank-deficient subsets are skipped. Assignments are visited in
/// lexicographic order of the index lists (user 1 most significant) and the
/// first maximiser wins. A single pool is shared by all users. Throws
/// Error{BudgetExceeded} when the number of assignments exceeds `budget`.
SearchResult search_best_subspace(const ChannelMatrix& h, const std::vector<std::vector<RatVector>>& pools,
                                  const std::vector<std::size_t>& dims, std::size_t budget = kDefaultSearchBudget);

/// Best scheme that codes each scalar subchannel of a parallel channel
/// independently: every user either sends a scalar stream on subchannel m or
/// stays silent, and the per-subchannel optima are composed.
struct SeparableOptimum {
  std::vector<Rational> per_subchannel;
  Rational total;
  SubspaceScheme composed;

  friend bool operator==(const SeparableOptimum&, const SeparableOptimum&) = default;
};

SeparableOptimum best_separable(const ChannelMatrix& h, std::size_t budget = kDefaultSearchBudget);

}  // namespace dofkit
