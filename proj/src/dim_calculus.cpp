#include "dofkit/dim_calculus.hpp"

#include "dofkit/error.hpp"
#include "dofkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace dofkit {

DimValue DimValue::entropy_ratio(double entropy_bits, double log2_inv_ratio) {
  DimValue v;
  v.kind_ = Kind::EntropyRatio;
  v.entropy_bits_ = entropy_bits;
  v.log2_inv_ratio_ = log2_inv_ratio;
  return v;
}

DimValue DimValue::estimate(double value, double stderr_value) {
  DimValue v;
  v.kind_ = Kind::Estimate;
  v.entropy_bits_ = value;
  v.log2_inv_ratio_ = 1.0;
  v.stderr_ = stderr_value;
  return v;
}

const Rational& DimValue::exact() const {
  if (kind_ != Kind::Exact) throw Error(Errc::DimMismatch, "dimension value is not exact");
  return exact_;
}

double DimValue::value() const {
  switch (kind_) {
    case Kind::Exact: return to_double(exact_);
    case Kind::EntropyRatio: return entropy_bits_ / log2_inv_ratio_;
    case Kind::Estimate: return entropy_bits_;
  }
  return 0.0;
}

namespace {

DimValue combine(const DimValue& a, const DimValue& b, int sign) {
  using Kind = DimValue::Kind;
  if (a.kind() == Kind::Exact && b.kind() == Kind::Exact) {
    return sign > 0 ? DimValue(a.exact() + b.exact()) : DimValue(a.exact() - b.exact());
  }
  if (a.kind() != Kind::Estimate && b.kind() != Kind::Estimate) {
    // At least one entropy ratio. Exact operands are lifted onto the shared
    // log2(1/r) denominator.
    const double l = a.kind() == Kind::EntropyRatio ? a.log2_inv_ratio() : b.log2_inv_ratio();
    const auto numer = [l](const DimValue& v) {
      return v.kind() == Kind::Exact ? to_double(v.exact()) * l : v.entropy_bits();
    };
    const bool same_base = (a.kind() != Kind::EntropyRatio || a.log2_inv_ratio() == l) &&
                           (b.kind() != Kind::EntropyRatio || b.log2_inv_ratio() == l);
    if (same_base) return DimValue::entropy_ratio(numer(a) + sign * numer(b), l);
  }
  const double se = std::hypot(a.stderr_value(), b.stderr_value());
  return DimValue::estimate(a.value() + sign * b.value(), se);
}

}  // namespace

DimValue operator+(const DimValue& a, const DimValue& b) { return combine(a, b, +1); }
DimValue operator-(const DimValue& a, const DimValue& b) { return combine(a, b, -1); }

DimValue DimValue::scaled_down(std::size_t divisor) const {
  const double d = static_cast<double>(divisor);
  switch (kind_) {
    case Kind::Exact: return DimValue(Rational(exact_ / Rational(static_cast<unsigned long>(divisor))));
    case Kind::EntropyRatio: return entropy_ratio(entropy_bits_, log2_inv_ratio_ * d);
    case Kind::Estimate: return estimate(entropy_bits_ / d, stderr_ / d);
  }
  return *this;
}

bool operator==(const DimValue& a, const DimValue& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case DimValue::Kind::Exact: return a.exact_ == b.exact_;
    case DimValue::Kind::EntropyRatio: return a.value() == b.value();
    case DimValue::Kind::Estimate: return a.entropy_bits_ == b.entropy_bits_ && a.stderr_ == b.stderr_;
  }
  return false;
}

namespace {

Rational linf_distance(const RatVector& a, const RatVector& b) {
  Rational d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational diff = abs(a[i] - b[i]);
    if (diff > d) d = std::move(diff);
  }
  return d;
}

}  // namespace

std::pair<Rational, Rational> minmax_dist(std::span<const RatVector> points) {
  if (points.size() < 2) throw Error(Errc::TooFewPoints, "need at least two points, got " + std::to_string(points.size()));
  const std::size_t n = points.front().size();
  for (const auto& p : points)
    if (p.size() != n) throw Error(Errc::DimMismatch, "points of mixed dimension");

  // Sorted scalar sets only need adjacent gaps for the minimum.
  if (n == 1) {
    std::vector<Rational> xs;
    xs.reserve(points.size());
    for (const auto& p : points) xs.push_back(p[0]);
    std::sort(xs.begin(), xs.end());
    Rational lo = xs[1] - xs[0];
    for (std::size_t i = 2; i < xs.size(); ++i) {
      Rational gap = xs[i] - xs[i - 1];
      if (gap < lo) lo = std::move(gap);
    }
    return {lo, xs.back() - xs.front()};
  }

  Rational lo = linf_distance(points[0], points[1]);
  Rational hi = lo;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      Rational d = linf_distance(points[i], points[j]);
      if (d < lo) lo = d;
      if (d > hi) hi = std::move(d);
    }
  }
  return {lo, hi};
}

bool open_set_check(const Rational& ratio, std::span<const RatVector> points) {
  if (ratio <= 0 || ratio >= 1) throw Error(Errc::RatioOutOfRange, "ratio " + to_string(ratio) + " not in (0,1)");
  if (points.size() == 1) return true;
  const auto [m, big_m] = minmax_dist(points);
  if (m == 0) throw Error(Errc::InvalidDistribution, "repeated points in open-set check");
  return ratio <= m / (m + big_m);
}

double entropy_finite(const FiniteDist& dist) {
  double h = 0.0;
  for (const auto& p : dist.probs()) {
    const double q = to_double(p);
    h -= q * std::log2(q);
  }
  return h;
}

FiniteDist convolve_linear(std::span<const LinearTerm> terms, std::size_t cap) {
  if (terms.empty()) throw Error(Errc::DimMismatch, "convolution of an empty term list");
  const std::size_t out_dim = terms.front().map.rows();

  std::map<RatVector, Rational> acc;
  acc.emplace(RatVector(out_dim, Rational(0)), Rational(1));
  for (const auto& term : terms) {
    if (term.map.rows() != out_dim || term.map.cols() != term.dist.dim()) {
      throw Error(Errc::DimMismatch, "term map is " + std::to_string(term.map.rows()) + "x" +
                                         std::to_string(term.map.cols()) + " for output R^" +
                                         std::to_string(out_dim) + " and input R^" +
                                         std::to_string(term.dist.dim()));
    }
    if (acc.size() * term.dist.size() > cap) {
      throw Error(Errc::SupportTooLarge, "product support " + std::to_string(acc.size()) + " x " +
                                             std::to_string(term.dist.size()) + " exceeds cap " +
                                             std::to_string(cap));
    }
    std::vector<RatVector> images;
    images.reserve(term.dist.size());
    for (const auto& p : term.dist.points()) images.push_back(term.map * p);

    std::map<RatVector, Rational> next;
    for (const auto& [x, px] : acc) {
      for (std::size_t k = 0; k < images.size(); ++k) {
        RatVector y = x;
        for (std::size_t i = 0; i < out_dim; ++i) y[i] += images[k][i];
        Rational p = px * term.dist.probs()[k];
        auto [it, inserted] = next.try_emplace(std::move(y), p);
        if (!inserted) it->second += p;
      }
    }
    acc = std::move(next);
  }

  std::vector<RatVector> points;
  std::vector<Rational> probs;
  points.reserve(acc.size());
  probs.reserve(acc.size());
  for (auto& [x, p] : acc) {
    points.push_back(x);
    probs.push_back(p);
  }
  return FiniteDist(std::move(points), std::move(probs));
}

std::size_t dim_subspace_sum(std::span<const RatMatrix> terms) {
  if (terms.empty()) return 0;
  const std::size_t m = terms.front().rows();
  for (const auto& t : terms)
    if (t.rows() != m) throw Error(Errc::DimMismatch, "terms act into different ambient dimensions");
  return mat_rank(hconcat(terms, m));
}

Rational dim_mixture_sum(std::span<const Rational> alphas, std::size_t dim) {
  Rational atom_mass = 1;
  for (const auto& a : alphas) {
    if (a < 0 || a > 1) throw Error(Errc::AlphaOutOfRange, "alpha = " + to_string(a));
    atom_mass *= 1 - a;
  }
  return Rational(static_cast<unsigned long>(dim)) * (1 - atom_mass);
}

DimValue dim_selfsimilar(const Rational& ratio, const FiniteDist& dist, double log2_inv_ratio) {
  if (!open_set_check(ratio, dist.points())) {
    const auto [m, big_m] = minmax_dist(dist.points());
    throw Error(Errc::OpenSetUnverified, "ratio " + to_string(ratio) + " exceeds m/(m+M) = " +
                                             to_string(Rational(m / (m + big_m))));
  }
  return DimValue::entropy_ratio(entropy_finite(dist), log2_inv_ratio);
}

DimValue dim_selfsimilar(const Rational& ratio, const FiniteDist& dist) {
  return dim_selfsimilar(ratio, dist, std::log2(to_double(1 / ratio)));
}

}  // namespace dofkit
