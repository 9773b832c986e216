// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "dofkit/complex.hpp"
#include "dofkit/constructor.hpp"
#include "dofkit/estimator.hpp"
#include "dofkit/fixtures.hpp"
#include "dofkit/mimo.hpp"
#include "dofkit/parallel.hpp"
#include "dofkit/search.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace dofkit;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("%s %d %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Runs a criterion, turning an escaped exception into a FAIL line.
void criterion(int id, const std::string& name, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "threw " << e.what();
  }
  report(id, ok, name + ": " + detail.str());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

EstimatorConfig config(std::size_t n, unsigned k1, unsigned k2, std::uint64_t seed) {
  EstimatorConfig c;
  c.n_samples = n;
  c.k1 = k1;
  c.k2 = k2;
  c.seed = seed;
  return c;
}

// Each suite returns the number of violations over its cases.
struct Suite {
  std::string name;
  int cases = 0;
  int violations = 0;
};

Suite rank_submodularity(std::mt19937_64& rng) {
  Suite s{"submodularity", 0, 0};
  for (; s.cases < 200; ++s.cases) {
    std::uniform_int_distribution<std::size_t> rows(1, 4), cols(0, 3);
    const std::size_t m = rows(rng);
    const RatMatrix a = gen::low_rank(rng, m, cols(rng), 1 + rng() % m);
    const RatMatrix b = gen::low_rank(rng, m, cols(rng), 1 + rng() % m);
    const RatMatrix c = gen::low_rank(rng, m, cols(rng), 1 + rng() % m);
    const std::vector<RatMatrix> ab{a, b}, bb{b}, abc{a, b, c}, bc{b, c};
    const long without = static_cast<long>(dim_subspace_sum(ab)) - static_cast<long>(dim_subspace_sum(bb));
    const long with = static_cast<long>(dim_subspace_sum(abc)) - static_cast<long>(dim_subspace_sum(bc));
    s.violations += with > without;
  }
  return s;
}

Suite scaling_invariance(std::mt19937_64& rng) {
  Suite s{"scaling", 0, 0};
  for (; s.cases < 100; ++s.cases) {
    std::uniform_int_distribution<std::size_t> users(2, 4), dim(1, 3);
    const std::size_t k = users(rng), m = dim(rng);
    const ChannelMatrix h = gen::channel(rng, k, m);
    const SubspaceScheme sch = gen::subspace_scheme(rng, k, m);
    std::vector<RatMatrix> d1, d2;
    SubspaceScheme comp;
    for (std::size_t j = 0; j < k; ++j) {
      d1.push_back(gen::nonsingular(rng, m));
      d2.push_back(gen::nonsingular(rng, m));
      comp.directions.push_back(oracle::inverse(d2.back()) * sch.directions[j]);
    }
    s.violations += dof_eval(h, sch).per_receiver != dof_eval(scale_transform(h, d1, d2), comp).per_receiver;
  }
  return s;
}

Suite composition_additivity(std::mt19937_64& rng) {
  Suite s{"additivity", 0, 0};
  std::bernoulli_distribution active(0.6);
  for (; s.cases < 100; ++s.cases) {
    std::uniform_int_distribution<std::size_t> users(2, 4), dim(1, 3);
    const std::size_t k = users(rng), m = dim(rng);
    std::vector<RatMatrix> subs;
    for (std::size_t t = 0; t < m; ++t) subs.push_back(gen::matrix(rng, k, k, 3, 2));
    const ChannelMatrix h = parallel_assemble(subs);
    std::vector<SubspaceScheme> per;
    Rational sum = 0;
    for (std::size_t t = 0; t < m; ++t) {
      SubspaceScheme one;
      for (std::size_t j = 0; j < k; ++j)
        one.directions.push_back(active(rng) ? RatMatrix{{gen::nonzero(rng)}} : RatMatrix(1, 0));
      sum += dof_eval(ChannelMatrix::scalar(subs[t]), one).total.exact();
      per.push_back(one);
    }
    s.violations += dof_eval(h, compose_independent(per)).total.exact() != sum;
  }
  return s;
}

Suite mimo_pass_gives_ell(std::mt19937_64& rng) {
  Suite s{"mimo", 0, 0};
  for (int t = 0; t < 2000 && s.cases < 100; ++t) {
    std::uniform_int_distribution<std::size_t> users(2, 3), extra(0, 2);
    const std::size_t k = users(rng), m = k + extra(rng);
    const ChannelMatrix h = gen::channel(rng, k, m);
    std::uniform_int_distribution<std::size_t> d(0, std::min<std::size_t>(2, m / 2));
    std::vector<RatMatrix> u;
    for (std::size_t j = 0; j < k; ++j) u.push_back(gen::full_column_rank(rng, m, d(rng)));
    MimoConfig cfg;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<RatMatrix> images;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) images.push_back(h.block(i, j) * u[j]);
      const Subspace free = Subspace::span(hconcat(images, m)).orthogonal_complement();
      const RatMatrix v = free.dim() >= u[i].cols()
                              ? free.basis() * gen::full_column_rank(rng, free.dim(), u[i].cols())
                              : gen::full_column_rank(rng, m, u[i].cols());
      cfg.pairs.push_back({Subspace(u[i]), Subspace(v)});
    }
    const FeasibilityCert cert = mimo_check(h, cfg);
    if (!cert.ok) continue;
    ++s.cases;
    s.violations += dof_eval(h, mimo_scheme(cfg)).total.exact() != static_cast<long>(cert.ell);
  }
  return s;
}

Suite complex_det(std::mt19937_64& rng) {
  Suite s{"complex-det", 0, 0};
  for (; s.cases < 100; ++s.cases) {
    const Rational a = gen::rational(rng, 9, 7), b = gen::rational(rng, 9, 7);
    s.violations += mat_det(complex_stack_block({RatMatrix{{a}}, RatMatrix{{b}}})) != a * a + b * b;
  }
  return s;
}

const SelfSimilarScheme kCantor{Rational(1, 3), {FiniteDist::uniform({{0}, {2}})}};

Samples uniform_scaled(std::mt19937_64& rng, std::size_t n, std::uint64_t seed) {
  return sample_scheme(SubspaceScheme{{RatMatrix{{gen::nonzero(rng, 3, 2)}}}}, 1, 0, n, seed);
}

Suite sum_rule(std::mt19937_64& rng) {
  Suite s{"sum-rule", 0, 0};
  const std::size_t n = 40'000;
  for (; s.cases < 100; ++s.cases) {
    const auto pick = [&](std::uint64_t seed) {
      switch (rng() % 3) {
        case 0: return uniform_scaled(rng, n, seed);
        case 1:
          return sample_scheme(MixtureScheme{{Rational(1 + static_cast<long>(rng() % 3), 4)}}, 1, 0, n, seed);
        default: return sample_scheme(kCantor, 1, 0, n, seed);
      }
    };
    const Samples x = pick(2 * s.cases), y = pick(2 * s.cases + 1);
    const EstimatorConfig c = config(n, 3, 6, 0);
    const DimEstimate dx = estimate_dim(x, c), dy = estimate_dim(y, c), dxy = estimate_dim(stack(x, y), c);
    const double tol = 3.0 * std::hypot(dxy.stderr_value, std::hypot(dx.stderr_value, dy.stderr_value));
    s.violations += std::fabs(dxy.value - dx.value - dy.value) > tol;
  }
  return s;
}

Suite eq_two(std::mt19937_64& rng) {
  Suite s{"eq-two", 0, 0};
  const std::size_t n = 40'000;
  for (; s.cases < 100; ++s.cases) {
    const Samples x = uniform_scaled(rng, n, 3 * s.cases), y = uniform_scaled(rng, n, 3 * s.cases + 1);
    const DimEstimate d = estimate_dim(add(x, y), config(n, 3, 7, 0));
    s.violations += std::fabs(d.value - 1.0) > 3.0 * d.stderr_value;
  }
  return s;
}

Suite bi_lipschitz(std::mt19937_64& rng) {
  Suite s{"bi-lipschitz", 0, 0};
  for (; s.cases < 100; ++s.cases) {
    const std::size_t dim = 1 + s.cases % 2;
    const std::size_t n = dim == 1 ? 60'000 : 200'000;
    const Samples x = dim == 1 ? sample_scheme(kCantor, 1, 0, n, s.cases)
                               : sample_scheme(SubspaceScheme{{RatMatrix::identity(2)}}, 2, 0, n, s.cases);
    const RatMatrix a = gen::nonsingular(rng, dim);
    const EstimatorConfig c = dim == 1 ? config(n, 4, 8, 0) : config(n, 4, 7, 0);
    const DimEstimate before = estimate_dim(x, c), after = estimate_dim(apply_linear(a, x), c);
    s.violations += std::fabs(before.value - after.value) > 3.0 * std::hypot(before.stderr_value, after.stderr_value);
  }
  return s;
}

}  // namespace

int main() {
  criterion(1, "example-1 exactness", [](std::ostringstream& d) {
    const Example ex = example1();
    const auto t0 = std::chrono::steady_clock::now();
    const DofReport r = dof_eval(ex.channel, ex.scheme);
    const double ms = 1e3 * seconds_since(t0);
    d << "total=" << to_string(r.total.exact()) << " expected=3 time=" << ms << "ms limit=10ms";
    return r.total.exact() == 3 && ms < 10.0;
  });

  criterion(2, "stacked-delay", [](std::ostringstream& d) {
    const Example ex = stacked_delay();
    const DofReport r = dof_eval(ex.channel, ex.scheme);
    d << "total=" << to_string(r.total.exact()) << " normalized=" << to_string(r.normalized.exact())
      << " expected=3,3/2";
    return r.total.exact() == 3 && r.normalized.exact() == Rational(3, 2);
  });

  criterion(3, "gain example", [](std::ostringstream& d) {
    const Example ex = prop_gain();
    const DofReport r = dof_eval(ex.channel, ex.scheme);
    const SeparableOptimum sep = best_separable(ex.channel);
    d << "total=" << to_string(r.total.exact()) << " expected=3 separable-optimum=" << to_string(sep.total)
      << " (<3 required)";
    return r.total.exact() == 3 && sep.total < 3;
  });

  criterion(4, "K=3 M=3 example", [](std::ostringstream& d) {
    const Example ex = k3m3(7);
    const DofReport r = dof_eval(ex.channel, ex.scheme);
    d << "total=" << to_string(r.total.exact()) << " expected=4 (" << ex.notes.front() << ")";
    return r.total.exact() == 4;
  });

  criterion(5, "upper bound", [](std::ostringstream& d) {
    bool ok = true;
    const std::vector<std::pair<std::string, Example>> named{
        {"ex1", example1()}, {"stacked", stacked_delay()}, {"gain", prop_gain()}, {"k3m3", k3m3(7)}};
    for (const auto& [name, ex] : named) {
      const DofReport r = dof_eval(ex.channel, ex.scheme);
      const Rational half(static_cast<long>(ex.channel.users() * ex.channel.dim()), 2);
      const bool here = r.bound == half && r.bound_met == true;
      d << name << "=" << (r.bound ? to_string(*r.bound) : std::string("none")) << (here ? "" : "(want " + to_string(half) + ")")
        << " ";
      ok = ok && here;
    }
    std::mt19937_64 rng(2024);
    int violations = 0;
    for (int t = 0; t < 200; ++t) {
      std::uniform_int_distribution<std::size_t> users(2, 4), dim(1, 3);
      const std::size_t k = users(rng), m = dim(rng);
      const ChannelMatrix h = gen::fully_connected(rng, k, m);
      const DofReport r = dof_eval(h, gen::subspace_scheme(rng, k, m));
      violations += !r.bound || r.total.exact() > *r.bound;
    }
    d << "random violations=" << violations << "/200";
    return ok && violations == 0;
  });

  criterion(6, "cyclic delay", [](std::ostringstream& d) {
    bool ok = true;
    for (auto [k, m] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 2}, {3, 4}, {4, 6}}) {
      const Example ex = cyclic_delay_channel(k, m);
      const Rational total = dof_eval(ex.channel, ex.scheme).total.exact();
      d << "(" << k << "," << m << ")=" << to_string(total) << " ";
      ok = ok && total == Rational(static_cast<long>(k * m), 2);
    }
    d << "expected 3,6,12";
    return ok;
  });

  criterion(7, "self-similar vs monte carlo", [](std::ostringstream& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const EstimatorConfig c = config(200'000, 8, 12, 1);
    const DimEstimate e = estimate_dim(sample_scheme(kCantor, 1, 0, c.n_samples, c.seed, std::nullopt, c.k2), c);
    const double s = seconds_since(t0);
    const double exact = 1.0 / std::log2(3.0);
    d << "estimate=" << e.value << " exact=" << exact << " |diff|=" << std::fabs(e.value - exact)
      << " tol=0.05 time=" << s << "s limit=30s";
    return std::fabs(e.value - exact) <= 0.05 && s < 30.0;
  });

  criterion(8, "mixture vs monte carlo", [](std::ostringstream& d) {
    const ChannelMatrix h(2, 2,
                          {RatMatrix{{1, Rational(1, 10)}, {0, 1}}, RatMatrix{{1, 0}, {Rational(1, 5), 1}},
                           RatMatrix{{1, 0}, {Rational(1, 5), 1}}, RatMatrix{{1, Rational(1, 10)}, {0, 1}}});
    const MixtureScheme mix{{Rational(1, 2), Rational(1, 2)}};
    const Rational exact = dof_eval(h, mix).total.exact();
    const DofReport r = estimate_dof(h, mix, config(100'000, 2, 5, 1));
    d << "estimate=" << r.total.value() << " exact=" << to_string(exact) << " tol=0.15 (n=1e5 k1=2 k2=5)";
    return exact == 1 && std::fabs(r.total.value() - 1.0) <= 0.15;
  });

  criterion(9, "constructor exactness", [](std::ostringstream& d) {
    const ChannelMatrix h = ChannelMatrix::scalar(RatMatrix{{1, 1}, {1, -1}});
    const ConstructionParams params = ConstructionParams::with_p(4, 3, 2, Rational(1));
    const std::vector<Rational> grid = grid_values(params);
    const FiniteDist code = uniform_codewords(grid, 1, params.N);
    const std::vector<FiniteDist> codes{code, code};
    const std::vector<FiniteDist> w = fold_codewords(codes, grid, 1, params);
    const SelfSimilarScheme scheme = lift_selfsimilar(w, params);

    int open_set = 0;
    bool bitwise = true;
    const DofReport r = constructed_dof(h, scheme, params);
    for (std::size_t i = 0; i < 2; ++i) {
      for (bool interference : {false, true}) {
        std::vector<RatMatrix> maps;
        std::vector<FiniteDist> dists;
        std::vector<LinearTerm> terms;
        for (std::size_t j = 0; j < 2; ++j) {
          if (interference && j == i) continue;
          maps.push_back(h.block(i, j));
          dists.push_back(w[j]);
          terms.push_back({h.block(i, j), w[j]});
        }
        open_set += open_set_check(scheme.ratio, convolve_linear(terms).points());
        const double oracle = oracle::entropy(oracle::sumset_law(maps, dists)) / 8.0;
        const DimValue& got = interference ? r.per_receiver[i].interference : r.per_receiver[i].full;
        bitwise = bitwise && got.value() == oracle;
      }
    }
    const auto [gap, card] = minkowski_check(grid, params.r(), 2);
    d << "open-set " << open_set << "/4 bitwise=" << (bitwise ? "yes" : "no") << " minkowski=(" << to_string(gap)
      << "," << card << ") total=" << r.total.value();
    return grid == std::vector<Rational>{0, Rational(1, 2), 1} && open_set == 4 && bitwise &&
           gap == Rational(1, 32) && card == 9;
  });

  criterion(10, "property suites", [](std::ostringstream& d) {
    std::mt19937_64 rng(10);
    bool ok = true;
    for (const auto& suite : {rank_submodularity(rng), scaling_invariance(rng), composition_additivity(rng),
                              mimo_pass_gives_ell(rng), sum_rule(rng), bi_lipschitz(rng), eq_two(rng),
                              complex_det(rng)}) {
      d << suite.name << "=" << suite.violations << "/" << suite.cases << " ";
      ok = ok && suite.cases >= 100 && suite.violations == 0;
    }
    return ok;
  });

  return failures == 0 ? 0 : 1;
}
