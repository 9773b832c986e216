#include "dofkit/constructor.hpp"

#include "dofkit/error.hpp"

#include <map>
#include <set>
#include <string>

namespace dofkit {

ConstructionParams ConstructionParams::derive(std::size_t users, std::size_t dim, const Rational& h_max, unsigned k,
                                              unsigned N) {
  if (N == 0) throw Error(Errc::ConditionViolated, "blocklength N must be positive");
  const Rational need = Rational(static_cast<unsigned long>(8 * users * dim)) * h_max;
  unsigned p = 1;
  while (pow2(static_cast<int>(p)) < need) ++p;
  if (k <= p) {
    throw Error(Errc::ResolutionTooCoarse,
                "k = " + std::to_string(k) + " must exceed p = " + std::to_string(p));
  }
  return {k, p, N, h_max};
}

ConstructionParams ConstructionParams::with_p(unsigned k, unsigned p, unsigned N, const Rational& h_max) {
  if (N == 0) throw Error(Errc::ConditionViolated, "blocklength N must be positive");
  if (k <= p) {
    throw Error(Errc::ResolutionTooCoarse,
                "k = " + std::to_string(k) + " must exceed p = " + std::to_string(p));
  }
  return {k, p, N, h_max};
}

std::vector<Rational> grid_values(const ConstructionParams& params) {
  const unsigned span = params.k - params.p;
  const Rational step = pow2(-static_cast<int>(span));
  const unsigned long count = 1UL << span;
  std::vector<Rational> out;
  out.reserve(count + 1);
  for (unsigned long i = 0; i <= count; ++i) out.push_back(Rational(i) * step);
  return out;
}

GridBuild grid_build(const ChannelMatrix& h, unsigned k, unsigned N) {
  for (const auto& b : h.blocks()) {
    for (const auto& v : b.entries()) {
      if (!is_integer(v)) {
        throw Error(Errc::NonIntegerChannel, "entry " + to_string(v) + " is not an integer; clear denominators first");
      }
    }
  }
  GridBuild out{ConstructionParams::derive(h.users(), h.dim(), h.max_abs_entry(), k, N), {}};
  out.grid = grid_values(out.params);
  return out;
}

ClearedChannel clear_denominators(const ChannelMatrix& h) {
  const std::size_t k = h.users();
  std::vector<RatMatrix> scaling;
  for (std::size_t j = 0; j < k; ++j) {
    Integer l = 1;
    for (std::size_t i = 0; i < k; ++i)
      for (const auto& v : h.block(i, j).entries()) l = boost::multiprecision::lcm(l, denominator(v));
    scaling.push_back(Rational(l) * RatMatrix::identity(h.dim()));
  }
  std::vector<RatMatrix> ones(k, RatMatrix::identity(h.dim()));
  return {scale_transform(h, ones, scaling), std::move(scaling)};
}

FiniteDist uniform_codewords(std::span<const Rational> grid, std::size_t dim, unsigned N, std::size_t cap) {
  if (grid.empty()) throw Error(Errc::EmptySet, "empty grid");
  const std::size_t len = dim * N;
  double count = 1.0;
  for (std::size_t i = 0; i < len; ++i) count *= static_cast<double>(grid.size());
  if (count > static_cast<double>(cap)) {
    throw Error(Errc::SupportTooLarge, "codebook of " + std::to_string(grid.size()) + "^" + std::to_string(len) +
                                           " words exceeds cap " + std::to_string(cap));
  }
  std::vector<RatVector> words;
  std::vector<std::size_t> at(len, 0);
  while (true) {
    RatVector w(len);
    for (std::size_t i = 0; i < len; ++i) w[i] = grid[at[i]];
    words.push_back(std::move(w));
    std::size_t pos = len;
    while (pos > 0 && at[pos - 1] + 1 == grid.size()) at[--pos] = 0;
    if (pos == 0) break;
    ++at[pos - 1];
  }
  return FiniteDist::uniform(std::move(words));
}

std::vector<FiniteDist> fold_codewords(std::span<const FiniteDist> codewords, std::span<const Rational> grid,
                                       std::size_t dim, const ConstructionParams& params) {
  const Rational r = params.r();
  std::vector<RatVector> grid_points;
  for (const auto& g : grid) grid_points.push_back({g});
  if (grid_points.size() > 1 && !open_set_check(r, grid_points)) {
    const auto [m, big_m] = minmax_dist(grid_points);
    throw Error(Errc::OpenSetUnverified,
                "r = " + to_string(r) + " exceeds m/(m+M) = " + to_string(Rational(m / (m + big_m))) + " of the grid");
  }
  const std::set<Rational> allowed(grid.begin(), grid.end());

  std::vector<FiniteDist> out;
  for (std::size_t u = 0; u < codewords.size(); ++u) {
    const FiniteDist& cw = codewords[u];
    if (cw.dim() != dim * params.N) {
      throw Error(Errc::DimMismatch, "codewords of user " + std::to_string(u + 1) + " have length " +
                                         std::to_string(cw.dim()) + ", expected M*N = " +
                                         std::to_string(dim * params.N));
    }
    std::map<RatVector, Rational> image;
    for (std::size_t c = 0; c < cw.size(); ++c) {
      const RatVector& x = cw.points()[c];
      RatVector w(dim, Rational(0));
      Rational scale = 1;
      for (unsigned n = 0; n < params.N; ++n) {
        for (std::size_t i = 0; i < dim; ++i) {
          const Rational& v = x[n * dim + i];
          if (!allowed.contains(v)) {
            throw Error(Errc::ConditionViolated, "codeword entry " + to_string(v) + " is not on the grid");
          }
          w[i] += scale * v;
        }
        scale *= r;
      }
      if (!image.emplace(std::move(w), cw.probs()[c]).second) {
        throw Error(Errc::OpenSetUnverified, "two codewords of user " + std::to_string(u + 1) + " fold to one point");
      }
    }
    std::vector<RatVector> pts;
    std::vector<Rational> probs;
    for (auto& [w, q] : image) {
      pts.push_back(w);
      probs.push_back(q);
    }
    out.emplace_back(std::move(pts), std::move(probs));
  }
  return out;
}

SelfSimilarScheme lift_selfsimilar(std::vector<FiniteDist> folded, const ConstructionParams& params) {
  return {params.lifted_ratio(), std::move(folded)};
}

DofReport constructed_dof(const ChannelMatrix& h, const SelfSimilarScheme& scheme, const ConstructionParams& params,
                          std::size_t cap) {
  if (scheme.ratio != params.lifted_ratio()) {
    throw Error(Errc::ConditionViolated, "scheme ratio " + to_string(scheme.ratio) + " is not 2^-" +
                                             std::to_string(params.N * params.k));
  }
  DofReport report = dof_eval_selfsimilar(h, scheme, static_cast<double>(params.N * params.k), cap);
  report.notes.push_back("k=" + std::to_string(params.k) + " p=" + std::to_string(params.p) +
                         " N=" + std::to_string(params.N));
  return report;
}

std::pair<Rational, std::size_t> minkowski_check(std::span<const Rational> values, const Rational& r,
                                                 std::size_t ell) {
  if (ell == 0) throw Error(Errc::ConditionViolated, "ell must be positive");
  std::vector<RatVector> pts;
  for (const auto& v : values) pts.push_back({v});
  const auto [m, big_m] = minmax_dist(pts);
  if (r <= 0 || r > m / (m + big_m)) {
    throw Error(Errc::ConditionViolated,
                "r = " + to_string(r) + " exceeds m/(m+M) = " + to_string(Rational(m / (m + big_m))));
  }

  std::set<Rational> sums{Rational(0)};
  Rational scale = 1;
  for (std::size_t l = 0; l < ell; ++l) {
    std::set<Rational> next;
    for (const auto& s : sums)
      for (const auto& v : values) next.insert(s + scale * v);
    sums = std::move(next);
    scale *= r;
  }

  Rational gap = -1;
  for (auto it = std::next(sums.begin()); it != sums.end(); ++it) {
    Rational d = *it - *std::prev(it);
    if (gap < 0 || d < gap) gap = std::move(d);
  }

  std::size_t expected = 1;
  for (std::size_t l = 0; l < ell; ++l) expected *= values.size();
  if (sums.size() != expected || gap < pow(r, static_cast<unsigned>(ell - 1)) * m) {
    throw Error(Errc::ConditionViolated, "sumset is not one-to-one despite the ratio condition");
  }
  return {gap, sums.size()};
}

Construction construct(const ChannelMatrix& h, unsigned k, unsigned N, std::size_t cap) {
  ClearedChannel cleared = clear_denominators(h);
  GridBuild grid = grid_build(cleared.channel, k, N);
  const FiniteDist words = uniform_codewords(grid.grid, h.dim(), N, cap);
  const std::vector<FiniteDist> per_user(h.users(), words);
  SelfSimilarScheme scheme = lift_selfsimilar(fold_codewords(per_user, grid.grid, h.dim(), grid.params), grid.params);
  DofReport report = constructed_dof(cleared.channel, scheme, grid.params, cap);
  return {std::move(cleared), std::move(grid), std::move(scheme), std::move(report)};
}

}  // namespace dofkit
