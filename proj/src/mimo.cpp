#include "dofkit/mimo.hpp"

#include "dofkit/error.hpp"

#include <string>

namespace dofkit {

const char* mimo_condition_name(MimoCondition c) {
  switch (c) {
    case MimoCondition::ZeroForcing: return "zero-forcing";
    case MimoCondition::NoDimensionLoss: return "no-dimension-loss";
    case MimoCondition::ReceiveBasis: return "receive-basis";
    case MimoCondition::DimensionMismatch: return "dimension-mismatch";
  }
  return "unknown";
}

FeasibilityCert mimo_check(const ChannelMatrix& h, const MimoConfig& cfg) {
  const std::size_t k = h.users();
  const std::size_t m = h.dim();
  if (cfg.pairs.size() != k) {
    throw Error(Errc::DimMismatch,
                std::to_string(cfg.pairs.size()) + " subspace pairs for " + std::to_string(k) + " users");
  }
  for (const auto& p : cfg.pairs) {
    if (p.u.ambient_dim() != m || p.v.ambient_dim() != m) {
      throw Error(Errc::DimMismatch, "subspace pair does not live in R^" + std::to_string(m));
    }
  }

  FeasibilityCert cert;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& [u, v] = cfg.pairs[i];
    cert.ell += u.dim();
    if (u.dim() != v.dim()) cert.failures.push_back({MimoCondition::DimensionMismatch, i, i});

    for (std::size_t j = 0; j < k; ++j) {
      if (j == i || v.dim() == 0 || cfg.pairs[j].u.dim() == 0) continue;
      if (!(v.basis().transpose() * h.block(i, j) * cfg.pairs[j].u.basis()).is_zero()) {
        cert.failures.push_back({MimoCondition::ZeroForcing, i, j});
      }
    }

    const RatMatrix image = h.block(i, i) * u.basis();
    const std::size_t kept = (u.dim() == 0 || v.dim() == 0) ? 0 : mat_rank(v.basis().transpose() * image);
    if (kept != u.dim()) cert.failures.push_back({MimoCondition::NoDimensionLoss, i, i});

    const Subspace image_perp = Subspace::span(image).orthogonal_complement();
    const RatMatrix vi = hconcat(v.basis(), image_perp.basis());
    const bool nonsingular = vi.is_square() && mat_det(vi) != 0;
    cert.detV_nonzero.push_back(nonsingular);
    if (!nonsingular) cert.failures.push_back({MimoCondition::ReceiveBasis, i, i});
  }
  cert.ok = cert.failures.empty();
  return cert;
}

SubspaceScheme mimo_scheme(const MimoConfig& cfg) {
  SubspaceScheme s;
  for (const auto& p : cfg.pairs) s.directions.push_back(p.u.basis());
  return s;
}

}  // namespace dofkit
