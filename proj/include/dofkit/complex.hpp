#pragma once

#include "dofkit/channel.hpp"

#include <cstddef>
#include <span>

namespace dofkit {

/// M x M complex-rational block held as real and imaginary parts.
struct ComplexBlock {
  RatMatrix re;
  RatMatrix im;
};

/// Real stacked DoF counts two real dimensions per complex one.
inline constexpr std::size_t kComplexDofDivisor = 2;

/// [[Re, -Im], [Im, Re]].
RatMatrix complex_stack_block(const ComplexBlock& b);

/// K x K grid (row-major over receiver, transmitter) of complex M x M blocks
/// mapped to a real channel with dimension 2M.
ChannelMatrix complex_stack(std::size_t users, std::span<const ComplexBlock> blocks);

}  // namespace dofkit
