#include "dofkit/search.hpp"

#include "dofkit/error.hpp"
#include "dofkit/linalg.hpp"
#include "dofkit/parallel.hpp"

#include <limits>
#include <string>

namespace dofkit {

namespace {

// All d-subsets of {0..n-1} whose columns are independent, in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(const std::vector<RatVector>& pool, std::size_t d, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = pool.size();
  if (d > n) return out;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    std::vector<RatVector> cols;
    for (auto i : idx) cols.push_back(pool[i]);
    if (d == 0 || mat_rank(RatMatrix::from_columns(cols, m)) == d) out.push_back(idx);
    std::size_t pos = d;
    while (pos > 0 && idx[pos - 1] == n - d + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < d; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Integer r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

SearchResult search_best_subspace(const ChannelMatrix& h, const std::vector<std::vector<RatVector>>& pools,
                                  const std::vector<std::size_t>& dims, std::size_t budget) {
  const std::size_t k = h.users();
  const std::size_t m = h.dim();
  if (dims.size() != k) {
    throw Error(Errc::UserCountMismatch, std::to_string(dims.size()) + " dimensions for " + std::to_string(k) + " users");
  }
  if (pools.size() != 1 && pools.size() != k) {
    throw Error(Errc::UserCountMismatch, std::to_string(pools.size()) + " pools for " + std::to_string(k) + " users");
  }
  const auto pool = [&](std::size_t j) -> const std::vector<RatVector>& { return pools[pools.size() == 1 ? 0 : j]; };
  for (std::size_t j = 0; j < k; ++j) {
    if (dims[j] > m) throw Error(Errc::RankDeficientDirections, "user " + std::to_string(j + 1) + " asks d > M");
    for (const auto& v : pool(j)) {
      if (v.size() != m) throw Error(Errc::AmbientDimMismatch, "pool vector not in R^" + std::to_string(m));
    }
  }

  Integer total = 1;
  for (std::size_t j = 0; j < k; ++j) total *= binomial(pool(j).size(), dims[j]);
  if (total > budget) {
    throw Error(Errc::BudgetExceeded, "search space of " + total.str() + " assignments exceeds budget " +
                                          std::to_string(budget));
  }

  std::vector<std::vector<std::vector<std::size_t>>> options(k);
  std::vector<std::vector<RatMatrix>> mats(k);
  for (std::size_t j = 0; j < k; ++j) {
    options[j] = subsets(pool(j), dims[j], m);
    if (options[j].empty()) {
      throw Error(Errc::RankDeficientDirections,
                  "user " + std::to_string(j + 1) + " has no independent " + std::to_string(dims[j]) + "-subset");
    }
    for (const auto& idx : options[j]) {
      std::vector<RatVector> cols;
      for (auto i : idx) cols.push_back(pool(j)[i]);
      mats[j].push_back(RatMatrix::from_columns(cols, m));
    }
  }

  std::optional<SearchResult> best;
  std::size_t evaluated = 0;
  std::vector<std::size_t> at(k, 0);
  while (true) {
    SubspaceScheme s;
    for (std::size_t j = 0; j < k; ++j) s.directions.push_back(mats[j][at[j]]);
    DofReport r = dof_eval(h, s);
    ++evaluated;
    if (!best || r.total.exact() > best->report.total.exact()) {
      best = SearchResult{std::move(s), std::move(r), {}, 0};
      best->choice.clear();
      for (std::size_t j = 0; j < k; ++j) best->choice.push_back(options[j][at[j]]);
    }
    std::size_t pos = k;
    while (pos > 0 && at[pos - 1] + 1 == options[pos - 1].size()) at[--pos] = 0;
    if (pos == 0) break;
    ++at[pos - 1];
  }
  best->evaluated = evaluated;
  return std::move(*best);
}

SeparableOptimum best_separable(const ChannelMatrix& h, std::size_t budget) {
  const ParallelDecomposition parts = parallel_extract(h);
  const std::size_t k = h.users();
  const std::vector<std::vector<RatVector>> scalar_pool{{RatVector{Rational(1)}}};

  SeparableOptimum out;
  out.total = 0;
  std::vector<SubspaceScheme> chosen;
  for (const auto& sub : parts.subchannels) {
    const ChannelMatrix scalar = ChannelMatrix::scalar(sub);
    std::optional<SearchResult> best;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::vector<std::size_t> dims(k);
      for (std::size_t j = 0; j < k; ++j) dims[j] = (mask >> j) & 1U;
      SearchResult r = search_best_subspace(scalar, scalar_pool, dims, budget);
      if (!best || r.report.total.exact() > best->report.total.exact()) best = std::move(r);
    }
    out.per_subchannel.push_back(best->report.total.exact());
    out.total += best->report.total.exact();
    chosen.push_back(best->scheme);
  }
  out.composed = compose_independent(chosen);
  return out;
}

}  // namespace dofkit
