#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dofkit/channel.hpp"
#include "dofkit/error.hpp"
#include "dofkit/linalg.hpp"
#include "support.hpp"

using namespace dofkit;

namespace {

RatMatrix cols(std::initializer_list<RatVector> c, std::size_t rows) {
  std::vector<RatVector> v(c);
  return RatMatrix::from_columns(v, rows);
}

}  // namespace

TEST_CASE("rational text form") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-10/5")) == "-2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK(to_string(parse_rational(" 12 ")) == "12");
  CHECK(errc_of([] { parse_rational("1/0"); }) == Errc::Parse);
  CHECK(errc_of([] { parse_rational("1.5"); }) == Errc::Parse);
  CHECK(errc_of([] { parse_rational(""); }) == Errc::Parse);
  CHECK(errc_of([] { parse_rational("3/-4"); }) == Errc::Parse);
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(pow2(4) == 16);
}

TEST_CASE("mat_rank examples") {
  CHECK(mat_rank(RatMatrix::identity(2)) == 2);
  CHECK(mat_rank(RatMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(mat_rank(cols({{1, 2}, {1, 3}, {1, 3}}, 2)) == 2);
  CHECK(mat_rank(RatMatrix(3, 0)) == 0);
  CHECK(mat_rank(RatMatrix(2, 3)) == 0);
  CHECK(mat_rank(RatMatrix{{Rational(1, 3), Rational(1, 6)}, {Rational(2, 7), Rational(1, 7)}}) == 1);
}

TEST_CASE("mat_det examples") {
  CHECK(mat_det(RatMatrix::identity(3)) == 1);
  CHECK(mat_det(RatMatrix{{1, 1, -1}, {-1, 1, 1}, {1, -1, 1}}) == 4);
  CHECK(mat_det(RatMatrix{{1, 2}, {2, 4}}) == 0);
  CHECK(mat_det(RatMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(mat_det(RatMatrix{{Rational(1, 2), 0}, {0, Rational(2, 3)}}) == Rational(1, 3));
  CHECK(errc_of([] { mat_det(RatMatrix(2, 3)); }) == Errc::NonSquare);
}

TEST_CASE("rank agrees with elimination oracle and respects bounds") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::uniform_int_distribution<std::size_t> size(1, 5);
    const std::size_t r = size(rng), c = size(rng);
    const RatMatrix a = t % 2 ? gen::matrix(rng, r, c) : gen::low_rank(rng, r, c, size(rng) % 3 + 1);
    const std::size_t k = mat_rank(a);
    CHECK(k == oracle::rank(a));
    CHECK(k <= std::min(r, c));
    CHECK(mat_rank(a.transpose()) == k);

    std::vector<std::size_t> rp(r), cp(c);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    RatMatrix p(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) p(i, j) = a(rp[i], cp[j]);
    CHECK(mat_rank(p) == k);
  }
}

TEST_CASE("determinant agrees with Leibniz and is multiplicative") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 150; ++t) {
    std::uniform_int_distribution<std::size_t> size(1, 5);
    const std::size_t n = size(rng);
    const RatMatrix a = t % 3 ? gen::matrix(rng, n, n) : gen::low_rank(rng, n, n, n > 1 ? n - 1 : 1);
    const RatMatrix b = gen::matrix(rng, n, n);
    CHECK(mat_det(a) == oracle::det(a));
    CHECK(mat_det(a * b) == mat_det(a) * mat_det(b));
    CHECK((mat_det(a) != 0) == (mat_rank(a) == n));
  }
}

TEST_CASE("null space and orthogonal complement") {
  const RatMatrix a{{1, 2, 3}, {2, 4, 6}};
  const RatMatrix n = null_space(a);
  CHECK(n.cols() == 2);
  CHECK((a * n).is_zero());

  const Subspace line = Subspace::span(cols({{1, 1, 0}, {2, 2, 0}}, 3));
  CHECK(line.dim() == 1);
  const Subspace perp = line.orthogonal_complement();
  CHECK(perp.dim() == 2);
  CHECK((line.basis().transpose() * perp.basis()).is_zero());
  CHECK(Subspace::zero(3).orthogonal_complement().dim() == 3);
  CHECK(Subspace::whole(3).orthogonal_complement().dim() == 0);
  CHECK(line.contains({3, 3, 0}));
  CHECK_FALSE(line.contains({1, 0, 0}));
  CHECK(errc_of([] { Subspace(RatMatrix{{1, 2}, {2, 4}}); }) == Errc::RankDeficientDirections);
}

TEST_CASE("projected_dim examples") {
  const Subspace e1(cols({{1, 0}}, 2));
  const Subspace e2(cols({{0, 1}}, 2));
  CHECK(projected_dim(e2, e1) == 0);
  CHECK(projected_dim(Subspace::whole(2), e1) == 1);
  CHECK(projected_dim(Subspace(cols({{3, -1}}, 2)), Subspace(cols({{1, 2}}, 2))) == 1);
  CHECK(projected_dim(Subspace::zero(2), e1) == 0);
  CHECK(errc_of([&] { projected_dim(Subspace::whole(3), e1); }) == Errc::DimMismatch);
}

TEST_CASE("projected_dim agrees with the explicit projector") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 150; ++t) {
    std::uniform_int_distribution<std::size_t> size(1, 4);
    const std::size_t n = size(rng);
    std::uniform_int_distribution<std::size_t> d(0, n);
    const RatMatrix tb = gen::full_column_rank(rng, n, d(rng));
    const RatMatrix sb = t % 4 ? gen::full_column_rank(rng, n, d(rng)) : tb.transpose().transpose();
    const Subspace target(tb), source(sb);
    const std::size_t k = projected_dim(target, source);
    CHECK(k == oracle::projected_dim(tb, sb));
    CHECK(k <= std::min(target.dim(), source.dim()));
    CHECK(projected_dim(target, target) == target.dim());
  }
}

TEST_CASE("find_derangement examples") {
  const RatMatrix one{{1}};
  const RatMatrix zero{{0}};
  {
    const ChannelMatrix h(2, 1, {one, one, one, one});
    const auto c = find_derangement(h);
    REQUIRE(c);
    CHECK(c->sigma == std::vector<std::size_t>{1, 0});
    CHECK(c->verified);
  }
  {
    const ChannelMatrix h(2, 1, {one, zero, one, one});
    CHECK_FALSE(find_derangement(h));
  }
  {
    std::vector<RatMatrix> blocks(9, RatMatrix::identity(2));
    const auto c = find_derangement(ChannelMatrix(3, 2, blocks));
    REQUIRE(c);
    CHECK(c->sigma == std::vector<std::size_t>{1, 2, 0});
  }
}

TEST_CASE("find_derangement matches brute force over random sparsity") {
  std::mt19937_64 rng(14);
  std::bernoulli_distribution drop(0.35);
  for (int t = 0; t < 200; ++t) {
    std::uniform_int_distribution<std::size_t> users(2, 5);
    const std::size_t k = users(rng);
    const std::size_t m = t % 2 + 1;
    std::vector<RatMatrix> blocks;
    for (std::size_t i = 0; i < k * k; ++i) {
      if (!drop(rng)) blocks.push_back(gen::nonsingular(rng, m));
      else blocks.push_back(m > 1 ? gen::low_rank(rng, m, m, m - 1) : RatMatrix(1, 1));
    }
    const ChannelMatrix h(k, m, blocks);
    const auto got = find_derangement(h);
    const auto want = oracle::derangement(h);
    REQUIRE(got.has_value() == want.has_value());
    if (!got) continue;
    CHECK(got->sigma == *want);
    CHECK(got->verified);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(got->sigma[i] != i);
      CHECK(mat_det(h.block(i, got->sigma[i])) != 0);
    }
  }
}

TEST_CASE("nonsingular cross blocks always admit a derangement") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 100; ++t) {
    std::uniform_int_distribution<std::size_t> users(2, 6);
    const std::size_t k = users(rng);
    std::vector<RatMatrix> blocks;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) blocks.push_back(i == j ? RatMatrix(2, 2) : gen::nonsingular(rng, 2));
    const auto c = find_derangement(ChannelMatrix(k, 2, blocks));
    REQUIRE(c);
    CHECK(c->verified);
  }
}

TEST_CASE("channel structure") {
  CHECK(errc_of([] { ChannelMatrix(1, 1, {RatMatrix{{1}}}); }) == Errc::TooFewUsers);
  CHECK(errc_of([] { ChannelMatrix(2, 2, std::vector<RatMatrix>(4, RatMatrix::identity(3))); }) ==
        Errc::DimMismatch);
  const RatMatrix s{{1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}, {13, 14, 15, 16}};
  const ChannelMatrix h = ChannelMatrix::from_stacked(s, 2);
  CHECK(h.block(1, 0) == RatMatrix{{9, 10}, {13, 14}});
  CHECK(h.stacked() == s);
  CHECK(h.max_abs_entry() == 16);
}
