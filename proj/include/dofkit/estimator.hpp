#pragma once

#include "dofkit/dof_engine.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace dofkit {

struct EstimatorConfig {
  std::size_t n_samples = 100'000;
  unsigned k1 = 8;
  unsigned k2 = 12;
  std::uint64_t seed = 0;
  std::optional<unsigned> depth;  // self-similar truncation depth; auto when empty
};

/// Throws Error{Parse} unless k2 > k1 >= 1 and n_samples >= 1.
void validate_config(const EstimatorConfig& cfg);

/// n points of R^dim, row-major.
struct Samples {
  std::size_t dim = 0;
  std::vector<double> data;

  std::size_t size() const noexcept { return dim == 0 ? 0 : data.size() / dim; }
  const double* operator[](std::size_t i) const { return data.data() + i * dim; }
};

struct DimEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
  unsigned k1 = 0;
  unsigned k2 = 0;
};

/// Truncation depth D for a self-similar scheme: the smallest D with
/// r^D * max(M(W), max |w|) / (1 - r) < 2^-(k2 + 2) over all supports.
unsigned auto_depth(const SelfSimilarScheme& scheme, unsigned k2);

/// n i.i.d. draws of user `user`'s input. Each batch of samples uses its own
/// generator seeded from (seed, user, batch), so output does not depend on
/// the thread count.
Samples sample_scheme(const Scheme& scheme, std::size_t dim, std::size_t user, std::size_t n, std::uint64_t seed,
                      std::optional<unsigned> depth = std::nullopt, unsigned k2 = 12);

/// Plug-in entropy in bits of the occupied dyadic cells floor(2^k x).
double quantized_entropy(const Samples& samples, unsigned k);

/// (H_k2 - H_k1) / (k2 - k1). The standard error combines the per-sample
/// spread of log2 p_k2 - log2 p_k1 with the leading plug-in bias term
/// (C2 - C1) / (2 n ln 2 (k2 - k1)), C the occupied cell counts, and, when
/// k2 - k1 >= 2, half the gap between the slopes over [k1, km] and [km, k2].
DimEstimate estimate_dim(const Samples& samples, const EstimatorConfig& cfg);

/// a(x) for every sample.
Samples apply_linear(const RatMatrix& a, const Samples& x);
Samples add(const Samples& a, const Samples& b);
/// Concatenates coordinates sample by sample.
Samples stack(const Samples& a, const Samples& b);

/// Monte Carlo dof report mirroring dof_eval; method "monte-carlo".
DofReport estimate_dof(const ChannelMatrix& h, const Scheme& scheme, const EstimatorConfig& cfg);

/// Entropy ceiling (dim / 2) log2(26 pi e / 3) of the integer part of a
/// unit-power vector.
double integer_part_entropy_bound(std::size_t dim);

}  // namespace dofkit
