#pragma once

#include "dofkit/channel.hpp"
#include "dofkit/dim_calculus.hpp"
#include "dofkit/schemes.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dofkit {

struct ReceiverTerm {
  DimValue full;
  DimValue interference;
  DimValue term;

  friend bool operator==(const ReceiverTerm&, const ReceiverTerm&) = default;
};

/// Achieved degrees of freedom sum_i [d(signal + interference) - d(interference)]
/// for one scheme on one channel.
struct DofReport {
  std::string method;  // rank | mixture | entropy-ratio | monte-carlo
  std::size_t users = 0;
  std::size_t dim = 0;
  std::vector<ReceiverTerm> per_receiver;
  DimValue total;
  DimValue normalized;  // total / M
  std::optional<Rational> bound;
  std::optional<bool> bound_met;
  std::vector<std::string> notes;

  friend bool operator==(const DofReport&, const DofReport&) = default;
};

/// KM/2 when a derangement certificate exists, nullopt otherwise.
std::optional<Rational> upper_bound(const ChannelMatrix& h);

DofReport dof_eval(const ChannelMatrix& h, const Scheme& scheme);
DofReport dof_eval(const ChannelMatrix& h, const SubspaceScheme& scheme);
DofReport dof_eval(const ChannelMatrix& h, const MixtureScheme& scheme);
DofReport dof_eval(const ChannelMatrix& h, const SelfSimilarScheme& scheme,
                   std::size_t support_cap = kDefaultSupportCap);

/// Self-similar evaluation with an explicitly supplied log2(1/ratio); used
/// when the ratio is 2^{-Nk} so the denominator is the exact integer Nk.
DofReport dof_eval_selfsimilar(const ChannelMatrix& h, const SelfSimilarScheme& scheme, double log2_inv_ratio,
                               std::size_t support_cap = kDefaultSupportCap);

/// Fills total, normalized, bound and bound_met from per_receiver.
void finalize_report(DofReport& report, const ChannelMatrix& h);

/// block(i, j) -> row_scaling[i] * block(i, j) * col_scaling[j]. Every
/// scaling block must be M x M and nonsingular.
ChannelMatrix scale_transform(const ChannelMatrix& h, std::span<const RatMatrix> row_scaling,
                              std::span<const RatMatrix> col_scaling);

/// Same, with the scalings given as KM x KM block-diagonal matrices.
ChannelMatrix scale_transform(const ChannelMatrix& h, const RatMatrix& row_scaling, const RatMatrix& col_scaling);

}  // namespace dofkit
