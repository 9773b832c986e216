#include "dofkit/dof_engine.hpp"

#include "dofkit/error.hpp"
#include "dofkit/linalg.hpp"

#include <cmath>
#include <string>

namespace dofkit {

std::optional<Rational> upper_bound(const ChannelMatrix& h) {
  const auto cert = find_derangement(h);
  if (!cert || !cert->verified) return std::nullopt;
  return Rational(static_cast<unsigned long>(h.users() * h.dim()), 2UL);
}

void finalize_report(DofReport& report, const ChannelMatrix& h) {
  report.users = h.users();
  report.dim = h.dim();
  DimValue total(Rational(0));
  for (const auto& r : report.per_receiver) total = total + r.term;
  report.total = total;
  report.normalized = total.scaled_down(h.dim());
  report.bound = upper_bound(h);
  if (report.bound) {
    report.bound_met = total.is_exact() ? total.exact() <= *report.bound : total.value() <= to_double(*report.bound);
  } else {
    report.bound_met.reset();
  }
}

DofReport dof_eval(const ChannelMatrix& h, const SubspaceScheme& scheme) {
  validate_scheme(scheme, h);
  DofReport report;
  report.method = "rank";
  for (std::size_t i = 0; i < h.users(); ++i) {
    std::vector<RatMatrix> all;
    std::vector<RatMatrix> interference;
    for (std::size_t j = 0; j < h.users(); ++j) {
      RatMatrix image = h.block(i, j) * scheme.directions[j];
      if (j != i) interference.push_back(image);
      all.push_back(std::move(image));
    }
    const std::size_t full = dim_subspace_sum(all);
    const std::size_t intf = dim_subspace_sum(interference);
    report.per_receiver.push_back({DimValue(full), DimValue(intf), DimValue(Rational(static_cast<long>(full) -
                                                                                       static_cast<long>(intf)))});
  }
  finalize_report(report, h);
  return report;
}

DofReport dof_eval(const ChannelMatrix& h, const MixtureScheme& scheme) {
  validate_scheme(scheme, h);
  for (std::size_t i = 0; i < h.users(); ++i) {
    for (std::size_t j = 0; j < h.users(); ++j) {
      if (mat_det(h.block(i, j)) == 0) {
        throw Error(Errc::SingularBlock, "mixture rule needs every block nonsingular; H_{" + std::to_string(i + 1) +
                                             "," + std::to_string(j + 1) + "} is singular");
      }
    }
  }
  DofReport report;
  report.method = "mixture";
  for (std::size_t i = 0; i < h.users(); ++i) {
    std::vector<Rational> others;
    for (std::size_t j = 0; j < h.users(); ++j)
      if (j != i) others.push_back(scheme.alpha[j]);
    const Rational full = dim_mixture_sum(scheme.alpha, h.dim());
    const Rational intf = dim_mixture_sum(others, h.dim());
    report.per_receiver.push_back({DimValue(full), DimValue(intf), DimValue(Rational(full - intf))});
  }
  finalize_report(report, h);
  return report;
}

DofReport dof_eval_selfsimilar(const ChannelMatrix& h, const SelfSimilarScheme& scheme, double log2_inv_ratio,
                               std::size_t support_cap) {
  validate_scheme(scheme, h);
  DofReport report;
  report.method = "entropy-ratio";
  for (std::size_t i = 0; i < h.users(); ++i) {
    std::vector<LinearTerm> all;
    std::vector<LinearTerm> interference;
    for (std::size_t j = 0; j < h.users(); ++j) {
      LinearTerm t{h.block(i, j), scheme.supports[j]};
      if (j != i) interference.push_back(t);
      all.push_back(std::move(t));
    }
    const FiniteDist full_law = convolve_linear(all, support_cap);
    const FiniteDist intf_law = convolve_linear(interference, support_cap);
    DimValue full, intf;
    try {
      full = dim_selfsimilar(scheme.ratio, full_law, log2_inv_ratio);
      intf = dim_selfsimilar(scheme.ratio, intf_law, log2_inv_ratio);
    } catch (const Error& e) {
      if (e.code() != Errc::OpenSetUnverified) throw;
      throw Error(Errc::OpenSetUnverified, "receiver " + std::to_string(i + 1) + ": " + e.detail());
    }
    report.per_receiver.push_back({full, intf, full - intf});
  }
  finalize_report(report, h);
  return report;
}

DofReport dof_eval(const ChannelMatrix& h, const SelfSimilarScheme& scheme, std::size_t support_cap) {
  validate_scheme(scheme, h);
  return dof_eval_selfsimilar(h, scheme, std::log2(to_double(1 / scheme.ratio)), support_cap);
}

DofReport dof_eval(const ChannelMatrix& h, const Scheme& scheme) {
  return std::visit([&](const auto& s) { return dof_eval(h, s); }, scheme);
}

ChannelMatrix scale_transform(const ChannelMatrix& h, std::span<const RatMatrix> row_scaling,
                              std::span<const RatMatrix> col_scaling) {
  const std::size_t k = h.users();
  const std::size_t m = h.dim();
  if (row_scaling.size() != k || col_scaling.size() != k) {
    throw Error(Errc::DimMismatch, "need " + std::to_string(k) + " row and column scaling blocks");
  }
  for (const auto* side : {&row_scaling, &col_scaling}) {
    for (const auto& d : *side) {
      if (d.rows() != m || d.cols() != m) throw Error(Errc::DimMismatch, "scaling block is not M x M");
      if (mat_det(d) == 0) throw Error(Errc::SingularScaling, "scaling block is singular");
    }
  }
  std::vector<RatMatrix> blocks;
  blocks.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) blocks.push_back(row_scaling[i] * h.block(i, j) * col_scaling[j]);
  return ChannelMatrix(k, m, std::move(blocks));
}

namespace {

std::vector<RatMatrix> diagonal_blocks(const RatMatrix& d, std::size_t k, std::size_t m) {
  if (d.rows() != k * m || d.cols() != k * m) throw Error(Errc::DimMismatch, "scaling matrix is not KM x KM");
  std::vector<RatMatrix> out;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && !d.block(i * m, j * m, m, m).is_zero()) {
        throw Error(Errc::DimMismatch, "scaling matrix is not block diagonal");
      }
    }
    out.push_back(d.block(i * m, i * m, m, m));
  }
  return out;
}

}  // namespace

ChannelMatrix scale_transform(const ChannelMatrix& h, const RatMatrix& row_scaling, const RatMatrix& col_scaling) {
  const auto rows = diagonal_blocks(row_scaling, h.users(), h.dim());
  const auto cols = diagonal_blocks(col_scaling, h.users(), h.dim());
  return scale_transform(h, rows, cols);
}

}  // namespace dofkit
