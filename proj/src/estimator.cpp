#include "dofkit/estimator.hpp"

#include "dofkit/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <thread>

namespace dofkit {

namespace {

constexpr std::size_t kBatch = 8192;

std::vector<double> to_doubles(const RatMatrix& a) {
  std::vector<double> out;
  out.reserve(a.entries().size());
  for (const auto& v : a.entries()) out.push_back(to_double(v));
  return out;
}

std::mt19937_64 batch_rng(std::uint64_t seed, std::size_t user, std::size_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(user), static_cast<std::uint32_t>(batch),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(batch) >> 32)};
  return std::mt19937_64(seq);
}

// Runs fill(batch, first, count) for every batch, spread over the available cores.
template <typename Fill>
void for_each_batch(std::size_t n, Fill fill) {
  const std::size_t batches = (n + kBatch - 1) / kBatch;
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), batches));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [=, &fill] {
      for (std::size_t b = w; b < batches; b += workers) {
        const std::size_t first = b * kBatch;
        fill(b, first, std::min(kBatch, n - first));
      }
    }));
  }
  for (auto& j : jobs) j.get();
}

struct SubspaceSampler {
  std::size_t m, d;
  std::vector<double> v;
  Latent latent;

  void operator()(std::mt19937_64& rng, double* out) const {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> z(d);
    for (auto& x : z) x = latent == Latent::Uniform01 ? uni(rng) : gauss(rng);
    for (std::size_t r = 0; r < m; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) s += v[r * d + c] * z[c];
      out[r] = s;
    }
  }
};

struct MixtureSampler {
  std::size_t m;
  double alpha;

  void operator()(std::mt19937_64& rng, double* out) const {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const bool continuous = uni(rng) < alpha;
    for (std::size_t r = 0; r < m; ++r) out[r] = continuous ? uni(rng) : 0.0;
  }
};

struct SelfSimilarSampler {
  std::size_t m;
  double ratio;
  unsigned depth;
  std::vector<double> points;  // row-major
  std::vector<double> probs;

  void operator()(std::mt19937_64& rng, double* out) const {
    std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
    std::fill(out, out + m, 0.0);
    double scale = 1.0;
    for (unsigned i = 0; i < depth; ++i) {
      const double* w = points.data() + pick(rng) * m;
      for (std::size_t r = 0; r < m; ++r) out[r] += scale * w[r];
      scale *= ratio;
    }
  }
};

template <typename Sampler>
Samples run_sampler(const Sampler& s, std::size_t dim, std::size_t user, std::size_t n, std::uint64_t seed) {
  Samples out{dim, std::vector<double>(n * dim)};
  for_each_batch(n, [&](std::size_t batch, std::size_t first, std::size_t count) {
    auto rng = batch_rng(seed, user, batch);
    for (std::size_t i = 0; i < count; ++i) s(rng, out.data.data() + (first + i) * dim);
  });
  return out;
}

// Cell index of every sample at resolution k, then per-sample log2 of the
// empirical cell probability and the number of occupied cells.
struct CellStats {
  std::vector<double> log2p;
  std::size_t occupied = 0;
};

// Fills log2p from runs of equal keys in `order`.
template <class Same>
CellStats runs_to_stats(const std::vector<std::size_t>& order, Same same) {
  const std::size_t n = order.size();
  CellStats out;
  out.log2p.resize(n);
  const double log2n = std::log2(static_cast<double>(n));
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo + 1;
    while (hi < n && same(order[lo], order[hi])) ++hi;
    const double lp = std::log2(static_cast<double>(hi - lo)) - log2n;
    for (std::size_t t = lo; t < hi; ++t) out.log2p[order[t]] = lp;
    ++out.occupied;
    lo = hi;
  }
  return out;
}

CellStats cell_stats(const Samples& x, unsigned k) {
  const std::size_t n = x.size();
  const std::size_t m = x.dim;
  const double scale = std::ldexp(1.0, static_cast<int>(k));
  std::vector<std::int64_t> cells(n * m);
  for (std::size_t i = 0; i < n * m; ++i) cells[i] = static_cast<std::int64_t>(std::floor(x.data[i] * scale));

  // Pack the offset coordinates into one 64-bit key when the ranges allow it.
  std::vector<std::int64_t> lo(m, 0);
  std::vector<unsigned> width(m, 0);
  unsigned bits = 0;
  for (std::size_t c = 0; c < m && n > 0; ++c) {
    std::int64_t mn = cells[c], mx = cells[c];
    for (std::size_t i = 1; i < n; ++i) {
      mn = std::min(mn, cells[i * m + c]);
      mx = std::max(mx, cells[i * m + c]);
    }
    lo[c] = mn;
    width[c] = static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(mx) - static_cast<std::uint64_t>(mn)));
    bits += width[c];
  }
  if (bits <= 64) {
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t key = 0;
      for (std::size_t c = 0; c < m; ++c) {
        if (width[c] == 0) continue;
        const std::uint64_t v = static_cast<std::uint64_t>(cells[i * m + c]) - static_cast<std::uint64_t>(lo[c]);
        key = width[c] == 64 ? v : (key << width[c]) | v;
      }
      keyed[i] = {key, i};
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> order(n);
    std::vector<std::uint64_t> key_of(n);
    for (std::size_t t = 0; t < n; ++t) {
      order[t] = keyed[t].second;
      key_of[keyed[t].second] = keyed[t].first;
    }
    return runs_to_stats(order, [&](std::size_t a, std::size_t b) { return key_of[a] == key_of[b]; });
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(cells.begin() + a * m, cells.begin() + (a + 1) * m, cells.begin() + b * m,
                                        cells.begin() + (b + 1) * m);
  };
  const auto same = [&](std::size_t a, std::size_t b) {
    return std::equal(cells.begin() + a * m, cells.begin() + (a + 1) * m, cells.begin() + b * m);
  };
  std::sort(order.begin(), order.end(), less);
  return runs_to_stats(order, same);
}

}  // namespace

void validate_config(const EstimatorConfig& cfg) {
  if (cfg.k1 < 1 || cfg.k2 <= cfg.k1) {
    throw Error(Errc::Parse, "need k2 > k1 >= 1, got k1 = " + std::to_string(cfg.k1) + ", k2 = " +
                                 std::to_string(cfg.k2));
  }
  if (cfg.k2 > 50) throw Error(Errc::Parse, "k2 = " + std::to_string(cfg.k2) + " exceeds double resolution");
  if (cfg.n_samples < 1) throw Error(Errc::Parse, "need at least one sample");
  if (cfg.depth && *cfg.depth < 1) throw Error(Errc::Parse, "depth must be positive");
}

unsigned auto_depth(const SelfSimilarScheme& scheme, unsigned k2) {
  Rational reach = 0;
  for (const auto& w : scheme.supports) {
    for (const auto& p : w.points())
      for (const auto& v : p) reach = std::max(reach, Rational(abs(v)));
    if (w.size() > 1) reach = std::max(reach, minmax_dist(w.points()).second);
  }
  const Rational target = pow2(-static_cast<int>(k2 + 2));
  Rational tail = reach / (1 - scheme.ratio);
  unsigned d = 0;
  while (tail >= target) {
    tail *= scheme.ratio;
    ++d;
  }
  return std::max(d, 1U);
}

Samples sample_scheme(const Scheme& scheme, std::size_t dim, std::size_t user, std::size_t n, std::uint64_t seed,
                      std::optional<unsigned> depth, unsigned k2) {
  if (const auto* s = std::get_if<SubspaceScheme>(&scheme)) {
    const RatMatrix& v = s->directions.at(user);
    return run_sampler(SubspaceSampler{dim, v.cols(), to_doubles(v), s->latent}, dim, user, n, seed);
  }
  if (const auto* s = std::get_if<MixtureScheme>(&scheme)) {
    return run_sampler(MixtureSampler{dim, to_double(s->alpha.at(user))}, dim, user, n, seed);
  }
  const auto& s = std::get<SelfSimilarScheme>(scheme);
  const FiniteDist& w = s.supports.at(user);
  SelfSimilarSampler sampler{dim, to_double(s.ratio), depth ? *depth : auto_depth(s, k2), {}, {}};
  for (const auto& p : w.points())
    for (const auto& v : p) sampler.points.push_back(to_double(v));
  for (const auto& q : w.probs()) sampler.probs.push_back(to_double(q));
  return run_sampler(sampler, dim, user, n, seed);
}

double quantized_entropy(const Samples& samples, unsigned k) {
  const std::size_t n = samples.size();
  if (n == 0) return 0.0;
  const CellStats st = cell_stats(samples, k);
  double h = 0.0;
  for (double lp : st.log2p) h -= lp;
  return h / static_cast<double>(n);
}

DimEstimate estimate_dim(const Samples& samples, const EstimatorConfig& cfg) {
  validate_config(cfg);
  const std::size_t n = samples.size();
  if (n == 0) throw Error(Errc::Parse, "no samples");
  const CellStats lo = cell_stats(samples, cfg.k1);
  const CellStats hi = cell_stats(samples, cfg.k2);
  const double dk = static_cast<double>(cfg.k2 - cfg.k1);

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += lo.log2p[i] - hi.log2p[i];
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = lo.log2p[i] - hi.log2p[i] - mean;
    var += d * d;
  }
  var /= static_cast<double>(n > 1 ? n - 1 : 1);

  const double bias = (static_cast<double>(hi.occupied) - static_cast<double>(lo.occupied)) /
                      (2.0 * static_cast<double>(n) * std::log(2.0) * dk);

  // Resolution term: half the gap between the slopes of the two half windows.
  double resolution = 0.0;
  if (cfg.k2 - cfg.k1 >= 2) {
    const unsigned km = (cfg.k1 + cfg.k2) / 2;
    const CellStats mid = cell_stats(samples, km);
    double h_lo = 0.0, h_mid = 0.0, h_hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      h_lo -= lo.log2p[i];
      h_mid -= mid.log2p[i];
      h_hi -= hi.log2p[i];
    }
    const double slope_lo = (h_mid - h_lo) / static_cast<double>(n) / static_cast<double>(km - cfg.k1);
    const double slope_hi = (h_hi - h_mid) / static_cast<double>(n) / static_cast<double>(cfg.k2 - km);
    resolution = 0.5 * std::fabs(slope_hi - slope_lo);
  }

  DimEstimate out;
  out.value = mean / dk;
  out.stderr_value = std::sqrt(var / static_cast<double>(n) / (dk * dk) + bias * bias + resolution * resolution);
  out.k1 = cfg.k1;
  out.k2 = cfg.k2;
  return out;
}

Samples apply_linear(const RatMatrix& a, const Samples& x) {
  if (a.cols() != x.dim) throw Error(Errc::DimMismatch, "map and samples disagree on dimension");
  const std::vector<double> ad = to_doubles(a);
  const std::size_t n = x.size();
  Samples out{a.rows(), std::vector<double>(n * a.rows())};
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = x[i];
    double* yi = out.data.data() + i * a.rows();
    for (std::size_t r = 0; r < a.rows(); ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < a.cols(); ++c) s += ad[r * a.cols() + c] * xi[c];
      yi[r] = s;
    }
  }
  return out;
}

Samples add(const Samples& a, const Samples& b) {
  if (a.dim != b.dim || a.data.size() != b.data.size()) throw Error(Errc::DimMismatch, "sample sets differ in shape");
  Samples out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
  return out;
}

Samples stack(const Samples& a, const Samples& b) {
  if (a.size() != b.size()) throw Error(Errc::DimMismatch, "sample sets differ in size");
  Samples out{a.dim + b.dim, {}};
  out.data.reserve(a.size() * out.dim);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.data.insert(out.data.end(), a[i], a[i] + a.dim);
    out.data.insert(out.data.end(), b[i], b[i] + b.dim);
  }
  return out;
}

DofReport estimate_dof(const ChannelMatrix& h, const Scheme& scheme, const EstimatorConfig& cfg) {
  validate_config(cfg);
  validate_scheme(scheme, h);
  const std::size_t k = h.users();
  const std::size_t m = h.dim();

  std::vector<Samples> x;
  for (std::size_t j = 0; j < k; ++j) x.push_back(sample_scheme(scheme, m, j, cfg.n_samples, cfg.seed, cfg.depth, cfg.k2));

  // Symbolic full dimensions, when available, size the sample-count check.
  std::optional<double> symbolic_full;
  try {
    const DofReport exact = dof_eval(h, scheme);
    double best = 0.0;
    for (const auto& r : exact.per_receiver) best = std::max(best, r.full.value());
    symbolic_full = best;
  } catch (const Error&) {
  }

  DofReport report;
  report.method = "monte-carlo";
  double largest_full = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    Samples full{m, std::vector<double>(cfg.n_samples * m, 0.0)};
    Samples intf = full;
    for (std::size_t j = 0; j < k; ++j) {
      const Samples y = apply_linear(h.block(i, j), x[j]);
      full = add(full, y);
      if (j != i) intf = add(intf, y);
    }
    const DimEstimate df = estimate_dim(full, cfg);
    const DimEstimate di = estimate_dim(intf, cfg);
    largest_full = std::max(largest_full, df.value);
    const DimValue vf = DimValue::estimate(df.value, df.stderr_value);
    const DimValue vi = DimValue::estimate(di.value, di.stderr_value);
    report.per_receiver.push_back({vf, vi, vf - vi});
  }
  finalize_report(report, h);

  const double dim_hat = symbolic_full.value_or(largest_full);
  const double needed = 50.0 * std::exp2(cfg.k2 * dim_hat);
  if (static_cast<double>(cfg.n_samples) < needed) {
    report.notes.push_back("warning: n = " + std::to_string(cfg.n_samples) + " is below 50*2^(k2*d) = " +
                           std::to_string(static_cast<long long>(std::ceil(needed))) +
                           "; the fine-resolution entropy is undersampled");
  }
  report.notes.push_back("k1=" + std::to_string(cfg.k1) + " k2=" + std::to_string(cfg.k2) +
                         " n=" + std::to_string(cfg.n_samples) + " seed=" + std::to_string(cfg.seed));
  return report;
}

double integer_part_entropy_bound(std::size_t dim) {
  return static_cast<double>(dim) / 2.0 * std::log2(26.0 / 3.0 * std::numbers::pi * std::numbers::e);
}

}  // namespace dofkit
