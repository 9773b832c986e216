#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dofkit/schemes.hpp"
#include "support.hpp"

using namespace dofkit;

namespace {

ChannelMatrix identity_channel(std::size_t k, std::size_t m) {
  return ChannelMatrix(k, m, std::vector<RatMatrix>(k * k, RatMatrix::identity(m)));
}

}  // namespace

TEST_CASE("validate_scheme accepts well-formed schemes") {
  const ChannelMatrix h = identity_channel(2, 2);
  const SubspaceScheme s{{RatMatrix::identity(2), RatMatrix(2, 0)}};
  CHECK(validate_scheme(s, h) == s);
  const MixtureScheme mix{{Rational(1, 2), 1}};
  CHECK(validate_scheme(mix, h) == mix);
  const SelfSimilarScheme ss{Rational(1, 3), {FiniteDist::atom({0, 0}), FiniteDist::uniform({{0, 0}, {1, 1}})}};
  CHECK(validate_scheme(ss, h) == ss);
  const Scheme any = ss;
  CHECK(validate_scheme(any, h) == any);
}

TEST_CASE("validate_scheme rejects") {
  const ChannelMatrix h = identity_channel(2, 2);
  CHECK(errc_of([&] { validate_scheme(SubspaceScheme{{RatMatrix{{1, 2}, {2, 4}}, RatMatrix::identity(2)}}, h); }) ==
        Errc::RankDeficientDirections);
  CHECK(errc_of([&] { validate_scheme(MixtureScheme{{Rational(6, 5), 0}}, h); }) == Errc::AlphaOutOfRange);
  CHECK(errc_of([&] { validate_scheme(MixtureScheme{{Rational(-1, 5), 0}}, h); }) == Errc::AlphaOutOfRange);
  CHECK(errc_of([&] { validate_scheme(MixtureScheme{{1}}, h); }) == Errc::UserCountMismatch);
  CHECK(errc_of([&] { validate_scheme(SubspaceScheme{{RatMatrix::identity(3), RatMatrix::identity(3)}}, h); }) ==
        Errc::AmbientDimMismatch);
  const auto atom2 = FiniteDist::atom({0, 0});
  CHECK(errc_of([&] { validate_scheme(SelfSimilarScheme{1, {atom2, atom2}}, h); }) == Errc::RatioOutOfRange);
  CHECK(errc_of([&] { validate_scheme(SelfSimilarScheme{0, {atom2, atom2}}, h); }) == Errc::RatioOutOfRange);
  CHECK(errc_of([&] { validate_scheme(SelfSimilarScheme{Rational(1, 2), {atom2, FiniteDist::atom({0})}}, h); }) ==
        Errc::AmbientDimMismatch);
}

TEST_CASE("FiniteDist invariants") {
  CHECK(errc_of([] { FiniteDist({}, {}); }) == Errc::InvalidDistribution);
  CHECK(errc_of([] { FiniteDist({{0}, {1}}, {Rational(1, 2)}); }) == Errc::InvalidDistribution);
  CHECK(errc_of([] { FiniteDist({{0}, {1}}, {Rational(1, 2), Rational(1, 3)}); }) == Errc::InvalidDistribution);
  CHECK(errc_of([] { FiniteDist({{0}, {0}}, {Rational(1, 2), Rational(1, 2)}); }) == Errc::InvalidDistribution);
  CHECK(errc_of([] { FiniteDist({{0}, {1}}, {Rational(3, 2), Rational(-1, 2)}); }) == Errc::InvalidDistribution);
  CHECK(errc_of([] { FiniteDist({{0}, {1, 1}}, {Rational(1, 2), Rational(1, 2)}); }) == Errc::InvalidDistribution);
  const FiniteDist d({{2}, {0}, {1}}, {Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  CHECK(d.points() == std::vector<RatVector>{{0}, {1}, {2}});
  CHECK(d.probs() == std::vector<Rational>{Rational(1, 4), Rational(1, 4), Rational(1, 2)});
  Rational total = 0;
  for (const auto& p : d.probs()) total += p;
  CHECK(total == 1);
}

TEST_CASE("quantize_to_set examples") {
  const std::vector<Rational> a{0, Rational(1, 2), 1};
  CHECK(quantize_to_set(Rational(3, 10), a) == Rational(1, 2));
  const std::vector<Rational> b{0, Rational(1, 2)};
  CHECK(quantize_to_set(Rational(1, 4), b) == 0);
  const std::vector<Rational> c{0, 1};
  CHECK(quantize_to_set(Rational(-5), c) == 0);
  CHECK(errc_of([] { quantize_to_set(Rational(1), std::vector<Rational>{}); }) == Errc::EmptySet);
  CHECK(quantize_to_set(RatMatrix{{Rational(3, 10), 2}}, a) == RatMatrix{{Rational(1, 2), 1}});
}

TEST_CASE("quantize_to_set returns a nearest member") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    std::uniform_int_distribution<int> size(1, 6);
    std::vector<Rational> set;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) set.push_back(gen::rational(rng, 4, 3));
    const Rational x = gen::rational(rng, 6, 5);
    const Rational q = quantize_to_set(x, set);
    CHECK(std::find(set.begin(), set.end(), q) != set.end());
    for (const auto& a : set) {
      CHECK(abs(x - q) <= abs(x - a));
      if (abs(x - q) == abs(x - a)) CHECK(q <= a);
    }
  }
}
