#pragma once

#include "dofkit/channel.hpp"
#include "dofkit/schemes.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dofkit {

/// A worked channel together with the subspace scheme that evaluates to
/// `expected_total`.
struct Example {
  std::string name;
  ChannelMatrix channel;
  SubspaceScheme scheme;
  Rational expected_total;
  std::vector<std::string> notes;
};

/// K = 3, M = 2 with directions (1,1), (1,2), (1,3); total 3.
Example example1();

/// Two consecutive symbols of a 3-user delay channel; all directions (1,1); total 3.
Example stacked_delay();

/// Parallel K = 3, M = 2 channel H[m] = [[1,0,0],[1,lambda_m,0],[1,1,1]] with
/// directions (1,1), (1,1), (1,0); total 3. Requires nonzero, distinct lambdas.
Example prop_gain(const Rational& lambda1 = 1, const Rational& lambda2 = 2);

/// Parallel K = 3, M = 3 channel in standard form per subchannel with
/// seeded random nonzero rationals a, b, c, d, redrawn until the three
/// vector triples the scheme relies on are linearly independent; total 4.
Example k3m3(std::uint64_t seed);

/// H_{k,k} = I_M, H_{k,l} = cyclic down-shift for k != l; users send on the
/// even-indexed unit vectors (1-based). Total KM/2. Throws Error{OddM} or
/// Error{TooFewUsers} unless M is even and K >= 3.
Example cyclic_delay_channel(std::size_t users, std::size_t dim);

/// ex1 | stacked | propgain | k3m3 | cyclic. Throws Error{Parse} otherwise.
Example named_example(const std::string& name, std::uint64_t seed = 7, std::size_t users = 3, std::size_t dim = 2);

}  // namespace dofkit
