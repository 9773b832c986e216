#include "dofkit/fixtures.hpp"

#include "dofkit/error.hpp"
#include "dofkit/linalg.hpp"
#include "dofkit/parallel.hpp"

#include <random>

namespace dofkit {

namespace {

RatMatrix col(std::initializer_list<Rational> v) { return RatMatrix::column(RatVector(v)); }

}  // namespace

Example example1() {
  const RatMatrix stacked{{1, 0, 1, 0, 1, 0}, {1, 1, 1, 1, 0, 1}, {1, 0, 1, 0, 1, 0},
                          {2, 2, 0, 1, 1, 1}, {1, 0, 2, 0, 1, 1}, {0, 1, 0, 1, 0, 1}};
  return {"ex1", ChannelMatrix::from_stacked(stacked, 3), {{col({1, 1}), col({1, 2}), col({1, 3})}}, 3, {}};
}

Example stacked_delay() {
  const RatMatrix stacked{{1, 0, 1, 0, -1, 0}, {0, 1, 0, -1, 0, 1}, {-1, 0, 1, 0, 1, 0},
                          {0, 1, 0, 1, 0, -1}, {1, 0, -1, 0, 1, 0}, {0, -1, 0, 1, 0, 1}};
  return {"stacked", ChannelMatrix::from_stacked(stacked, 3), {{col({1, 1}), col({1, 1}), col({1, 1})}}, 3, {}};
}

Example prop_gain(const Rational& lambda1, const Rational& lambda2) {
  if (lambda1 == 0 || lambda2 == 0 || lambda1 == lambda2) {
    throw Error(Errc::Parse, "lambda values must be nonzero and distinct");
  }
  const auto sub = [](const Rational& l) { return RatMatrix{{1, 0, 0}, {1, l, 0}, {1, 1, 1}}; };
  const std::vector<RatMatrix> subs{sub(lambda1), sub(lambda2)};
  return {"propgain", parallel_assemble(subs), {{col({1, 1}), col({1, 1}), col({1, 0})}}, 3, {}};
}

namespace {

Rational draw_nonzero(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 9);
  std::uniform_int_distribution<int> den(1, 9);
  std::bernoulli_distribution neg(0.5);
  const int p = num(rng);
  const int q = den(rng);
  return Rational(neg(rng) ? -p : p, q);
}

bool independent(const RatVector& x, const RatVector& y, const RatVector& z) {
  return mat_det(RatMatrix::from_columns(std::vector<RatVector>{x, y, z}, 3)) != 0;
}

}  // namespace

Example k3m3(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const RatVector ones(3, Rational(1));
  RatVector a(3), b(3), c(3), d(3), ad(3);
  std::size_t draws = 0;
  do {
    ++draws;
    for (std::size_t m = 0; m < 3; ++m) {
      a[m] = draw_nonzero(rng);
      b[m] = draw_nonzero(rng);
      c[m] = draw_nonzero(rng);
      d[m] = draw_nonzero(rng);
      ad[m] = a[m] * d[m];
    }
  } while (!(independent(a, ad, ones) && independent(ones, d, b) && independent(ones, d, c)));

  std::vector<RatMatrix> subs;
  for (std::size_t m = 0; m < 3; ++m) subs.push_back(RatMatrix{{a[m], 1, 1}, {1, b[m], 1}, {1, d[m], c[m]}});

  SubspaceScheme scheme;
  scheme.directions = {RatMatrix::from_columns(std::vector<RatVector>{ones, d}, 3), RatMatrix::column(ones),
                       RatMatrix::column(ones)};
  return {"k3m3", parallel_assemble(subs), std::move(scheme), 4,
          {"seed " + std::to_string(seed) + ", accepted after " + std::to_string(draws) + " draw(s)"}};
}

Example cyclic_delay_channel(std::size_t users, std::size_t dim) {
  if (users < 3) throw Error(Errc::TooFewUsers, "cyclic example needs K >= 3, got " + std::to_string(users));
  if (dim == 0 || dim % 2 != 0) throw Error(Errc::OddM, "cyclic example needs even M, got " + std::to_string(dim));
  RatMatrix shift(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) shift((c + 1) % dim, c) = 1;
  std::vector<RatMatrix> blocks;
  for (std::size_t i = 0; i < users; ++i)
    for (std::size_t j = 0; j < users; ++j) blocks.push_back(i == j ? RatMatrix::identity(dim) : shift);

  std::vector<RatVector> even;
  for (std::size_t m = 1; m < dim; m += 2) {
    RatVector e(dim, Rational(0));
    e[m] = 1;
    even.push_back(std::move(e));
  }
  SubspaceScheme scheme;
  scheme.directions.assign(users, RatMatrix::from_columns(even, dim));
  return {"cyclic", ChannelMatrix(users, dim, std::move(blocks)), std::move(scheme),
          Rational(static_cast<unsigned long>(users * dim), 2UL), {}};
}

Example named_example(const std::string& name, std::uint64_t seed, std::size_t users, std::size_t dim) {
  if (name == "ex1") return example1();
  if (name == "stacked") return stacked_delay();
  if (name == "propgain") return prop_gain();
  if (name == "k3m3") return k3m3(seed);
  if (name == "cyclic") return cyclic_delay_channel(users, dim);
  throw Error(Errc::Parse, "unknown example '" + name + "'");
}

}  // namespace dofkit
