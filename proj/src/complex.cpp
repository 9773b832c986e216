#include "dofkit/complex.hpp"

#include "dofkit/error.hpp"

#include <string>

namespace dofkit {

RatMatrix complex_stack_block(const ComplexBlock& b) {
  const std::size_t m = b.re.rows();
  if (b.re.cols() != m || b.im.rows() != m || b.im.cols() != m) {
    throw Error(Errc::DimMismatch, "complex block parts must both be M x M");
  }
  RatMatrix out(2 * m, 2 * m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      out(r, c) = b.re(r, c);
      out(r, m + c) = -b.im(r, c);
      out(m + r, c) = b.im(r, c);
      out(m + r, m + c) = b.re(r, c);
    }
  }
  return out;
}

ChannelMatrix complex_stack(std::size_t users, std::span<const ComplexBlock> blocks) {
  if (blocks.size() != users * users) {
    throw Error(Errc::DimMismatch, "expected " + std::to_string(users * users) + " complex blocks, got " +
                                       std::to_string(blocks.size()));
  }
  if (blocks.empty()) throw Error(Errc::TooFewUsers, "no users");
  std::vector<RatMatrix> real;
  real.reserve(blocks.size());
  for (const auto& b : blocks) real.push_back(complex_stack_block(b));
  return ChannelMatrix(users, 2 * blocks.front().re.rows(), std::move(real));
}

}  // namespace dofkit
