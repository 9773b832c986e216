#pragma once

#include "dofkit/matrix.hpp"
#include "dofkit/schemes.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace dofkit {

inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

/// An information-dimension value. Rank and mixture rules give exact
/// rationals; the self-similar rule gives entropy / log2(1/r); Monte Carlo
/// gives a floating estimate with a standard error.
class DimValue {
 public:
  enum class Kind { Exact, EntropyRatio, Estimate };

  DimValue() : DimValue(Rational(0)) {}
  DimValue(Rational exact) : kind_(Kind::Exact), exact_(std::move(exact)) {}  // NOLINT(implicit)
  DimValue(std::size_t exact) : DimValue(Rational(static_cast<unsigned long>(exact))) {}  // NOLINT(implicit)

  static DimValue entropy_ratio(double entropy_bits, double log2_inv_ratio);
  static DimValue estimate(double value, double stderr_value);

  Kind kind() const noexcept { return kind_; }
  bool is_exact() const noexcept { return kind_ == Kind::Exact; }
  const Rational& exact() const;
  double entropy_bits() const noexcept { return entropy_bits_; }
  double log2_inv_ratio() const noexcept { return log2_inv_ratio_; }
  double stderr_value() const noexcept { return stderr_; }

  double value() const;

  /// Sums and differences stay exact for exact operands, stay entropy ratios
  /// when both share the same log2(1/r), and degrade to estimates otherwise.
  friend DimValue operator+(const DimValue& a, const DimValue& b);
  friend DimValue operator-(const DimValue& a, const DimValue& b);
  DimValue scaled_down(std::size_t divisor) const;

  /// Same kind and identical value (bitwise for the floating kinds).
  friend bool operator==(const DimValue& a, const DimValue& b);

 private:
  Kind kind_;
  Rational exact_;
  double entropy_bits_ = 0.0;
  double log2_inv_ratio_ = 1.0;
  double stderr_ = 0.0;
};

/// Min and max pairwise l-infinity distance. Requires at least two points.
std::pair<Rational, Rational> minmax_dist(std::span<const RatVector> points);

/// Sufficient open-set test r <= m / (m + M). A single point passes.
bool open_set_check(const Rational& ratio, std::span<const RatVector> points);

/// Shannon entropy in bits.
double entropy_finite(const FiniteDist& dist);

struct LinearTerm {
  RatMatrix map;
  FiniteDist dist;
};

/// Exact law of sum_j A_j Z_j for independent Z_j ~ D_j. Throws
/// Error{SupportTooLarge} when an intermediate product support exceeds `cap`.
FiniteDist convolve_linear(std::span<const LinearTerm> terms, std::size_t cap = kDefaultSupportCap);

/// d(sum_j A_j Xtilde_j) for independent absolutely continuous latents:
/// rank of [A_1 ... A_n].
std::size_t dim_subspace_sum(std::span<const RatMatrix> terms);

/// M * (1 - prod_j (1 - alpha_j)).
Rational dim_mixture_sum(std::span<const Rational> alphas, std::size_t dim);

/// H(D) / log2(1/r) once the open-set condition is verified; otherwise
/// Error{OpenSetUnverified}.
DimValue dim_selfsimilar(const Rational& ratio, const FiniteDist& dist);
DimValue dim_selfsimilar(const Rational& ratio, const FiniteDist& dist, double log2_inv_ratio);

}  // namespace dofkit
