#include "dofkit/schemes.hpp"

#include "dofkit/error.hpp"
#include "dofkit/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace dofkit {

FiniteDist::FiniteDist(std::vector<RatVector> points, std::vector<Rational> probs) {
  if (points.empty()) throw Error(Errc::InvalidDistribution, "empty support");
  if (points.size() != probs.size()) {
    throw Error(Errc::InvalidDistribution, std::to_string(points.size()) + " points but " +
                                               std::to_string(probs.size()) + " probabilities");
  }
  const std::size_t n = points.front().size();
  Rational total = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != n) throw Error(Errc::InvalidDistribution, "points of mixed dimension");
    if (probs[i] <= 0) throw Error(Errc::InvalidDistribution, "non-positive probability " + to_string(probs[i]));
    total += probs[i];
  }
  if (total != 1) throw Error(Errc::InvalidDistribution, "probabilities sum to " + to_string(total));

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  points_.reserve(points.size());
  probs_.reserve(points.size());
  for (std::size_t idx : order) {
    if (!points_.empty() && points_.back() == points[idx]) {
      throw Error(Errc::InvalidDistribution, "duplicate support point");
    }
    points_.push_back(std::move(points[idx]));
    probs_.push_back(std::move(probs[idx]));
  }
}

FiniteDist FiniteDist::atom(RatVector point) { return FiniteDist({std::move(point)}, {Rational(1)}); }

FiniteDist FiniteDist::uniform(std::vector<RatVector> points) {
  const Rational p(1, static_cast<long>(points.size()));
  std::vector<Rational> probs(points.size(), p);
  return FiniteDist(std::move(points), std::move(probs));
}

FiniteDist FiniteDist::uniform_scalar(std::span<const Rational> values) {
  std::vector<RatVector> points;
  points.reserve(values.size());
  for (const auto& v : values) points.push_back({v});
  return uniform(std::move(points));
}

namespace {

void check_user_count(std::size_t got, const ChannelMatrix& h) {
  if (got != h.users()) {
    throw Error(Errc::UserCountMismatch,
                "scheme has " + std::to_string(got) + " users, channel has " + std::to_string(h.users()));
  }
}

}  // namespace

const SubspaceScheme& validate_scheme(const SubspaceScheme& scheme, const ChannelMatrix& h) {
  check_user_count(scheme.directions.size(), h);
  for (std::size_t j = 0; j < scheme.directions.size(); ++j) {
    const RatMatrix& v = scheme.directions[j];
    if (v.rows() != h.dim()) {
      throw Error(Errc::AmbientDimMismatch, "directions of user " + std::to_string(j + 1) + " live in R^" +
                                                std::to_string(v.rows()) + ", channel has M = " +
                                                std::to_string(h.dim()));
    }
    if (v.cols() > h.dim() || mat_rank(v) != v.cols()) {
      throw Error(Errc::RankDeficientDirections, "directions of user " + std::to_string(j + 1) + " have rank " +
                                                     std::to_string(mat_rank(v)) + " but claim d = " +
                                                     std::to_string(v.cols()));
    }
  }
  return scheme;
}

const MixtureScheme& validate_scheme(const MixtureScheme& scheme, const ChannelMatrix& h) {
  check_user_count(scheme.alpha.size(), h);
  for (std::size_t j = 0; j < scheme.alpha.size(); ++j) {
    if (scheme.alpha[j] < 0 || scheme.alpha[j] > 1) {
      throw Error(Errc::AlphaOutOfRange, "alpha_" + std::to_string(j + 1) + " = " + to_string(scheme.alpha[j]));
    }
  }
  return scheme;
}

const SelfSimilarScheme& validate_scheme(const SelfSimilarScheme& scheme, const ChannelMatrix& h) {
  if (scheme.ratio <= 0 || scheme.ratio >= 1) {
    throw Error(Errc::RatioOutOfRange, "ratio " + to_string(scheme.ratio) + " not in (0,1)");
  }
  check_user_count(scheme.supports.size(), h);
  for (std::size_t j = 0; j < scheme.supports.size(); ++j) {
    if (scheme.supports[j].dim() != h.dim()) {
      throw Error(Errc::AmbientDimMismatch, "support of user " + std::to_string(j + 1) + " lives in R^" +
                                                std::to_string(scheme.supports[j].dim()));
    }
  }
  return scheme;
}

const Scheme& validate_scheme(const Scheme& scheme, const ChannelMatrix& h) {
  std::visit([&](const auto& s) { validate_scheme(s, h); }, scheme);
  return scheme;
}

Rational quantize_to_set(const Rational& x, std::span<const Rational> set) {
  if (set.empty()) throw Error(Errc::EmptySet, "quantizer alphabet is empty");
  const Rational* best = &set.front();
  Rational best_dist = abs(x - *best);
  for (const auto& a : set.subspan(1)) {
    const Rational d = abs(x - a);
    if (d < best_dist || (d == best_dist && a < *best)) {
      best = &a;
      best_dist = d;
    }
  }
  return *best;
}

RatMatrix quantize_to_set(const RatMatrix& x, std::span<const Rational> set) {
  std::vector<Rational> e;
  e.reserve(x.entries().size());
  for (const auto& v : x.entries()) e.push_back(quantize_to_set(v, set));
  return RatMatrix(x.rows(), x.cols(), std::move(e));
}

}  // namespace dofkit
