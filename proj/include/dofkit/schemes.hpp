#pragma once

#include "dofkit/channel.hpp"
#include "dofkit/matrix.hpp"

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace dofkit {

/// Finitely supported distribution on Q^n. Points are kept sorted
/// lexicographically and pairwise distinct; probabilities are positive and
/// sum to exactly 1.
class FiniteDist {
 public:
  /// Validates and canonicalises. Throws Error{InvalidDistribution}.
  FiniteDist(std::vector<RatVector> points, std::vector<Rational> probs);

  static FiniteDist atom(RatVector point);
  static FiniteDist uniform(std::vector<RatVector> points);
  /// Uniform over scalar values, as points of R^1.
  static FiniteDist uniform_scalar(std::span<const Rational> values);

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return points_.front().size(); }
  const std::vector<RatVector>& points() const noexcept { return points_; }
  const std::vector<Rational>& probs() const noexcept { return probs_; }

  friend bool operator==(const FiniteDist&, const FiniteDist&) = default;

 private:
  std::vector<RatVector> points_;
  std::vector<Rational> probs_;
};

enum class Latent { Uniform01, Gaussian };

/// X_j = V_j * Xtilde_j with Xtilde_j absolutely continuous on R^{d_j}.
struct SubspaceScheme {
  std::vector<RatMatrix> directions;
  Latent latent = Latent::Uniform01;

  friend bool operator==(const SubspaceScheme&, const SubspaceScheme&) = default;
};

/// Per-user mixture alpha_j * (continuous on R^M) + (1 - alpha_j) * (atom at 0).
struct MixtureScheme {
  std::vector<Rational> alpha;

  friend bool operator==(const MixtureScheme&, const MixtureScheme&) = default;
};

/// X_j = sum_{i >= 0} ratio^i W_{j,i} with W_{j,i} i.i.d. from supports[j].
struct SelfSimilarScheme {
  Rational ratio;
  std::vector<FiniteDist> supports;

  friend bool operator==(const SelfSimilarScheme&, const SelfSimilarScheme&) = default;
};

using Scheme = std::variant<SubspaceScheme, MixtureScheme, SelfSimilarScheme>;

/// Checks the scheme against K and M of `h`; returns it unchanged.
const Scheme& validate_scheme(const Scheme& scheme, const ChannelMatrix& h);
const SubspaceScheme& validate_scheme(const SubspaceScheme& scheme, const ChannelMatrix& h);
const MixtureScheme& validate_scheme(const MixtureScheme& scheme, const ChannelMatrix& h);
const SelfSimilarScheme& validate_scheme(const SelfSimilarScheme& scheme, const ChannelMatrix& h);

/// Nearest element of `set`; ties go to the smaller candidate.
Rational quantize_to_set(const Rational& x, std::span<const Rational> set);

/// Entrywise quantize_to_set.
RatMatrix quantize_to_set(const RatMatrix& x, std::span<const Rational> set);

}  // namespace dofkit
