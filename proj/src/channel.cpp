#include "dofkit/channel.hpp"

#include "dofkit/error.hpp"
#include "dofkit/linalg.hpp"

#include <string>

namespace dofkit {

ChannelMatrix::ChannelMatrix(std::size_t users, std::size_t dim, std::vector<RatMatrix> blocks)
    : users_(users), dim_(dim), blocks_(std::move(blocks)) {
  if (users_ < 2) throw Error(Errc::TooFewUsers, "a channel needs K >= 2 users, got " + std::to_string(users_));
  if (dim_ == 0) throw Error(Errc::DimMismatch, "signal dimension M must be positive");
  if (blocks_.size() != users_ * users_) {
    throw Error(Errc::DimMismatch, "expected " + std::to_string(users_ * users_) + " blocks, got " +
                                       std::to_string(blocks_.size()));
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].rows() != dim_ || blocks_[b].cols() != dim_) {
      throw Error(Errc::DimMismatch, "block (" + std::to_string(b / users_ + 1) + "," + std::to_string(b % users_ + 1) +
                                         ") is not " + std::to_string(dim_) + "x" + std::to_string(dim_));
    }
  }
}

ChannelMatrix ChannelMatrix::from_stacked(const RatMatrix& stacked, std::size_t users) {
  if (users == 0 || !stacked.is_square() || stacked.rows() % users != 0) {
    throw Error(Errc::DimMismatch, "stacked matrix is not KM x KM for K = " + std::to_string(users));
  }
  const std::size_t m = stacked.rows() / users;
  std::vector<RatMatrix> blocks;
  blocks.reserve(users * users);
  for (std::size_t i = 0; i < users; ++i)
    for (std::size_t j = 0; j < users; ++j) blocks.push_back(stacked.block(i * m, j * m, m, m));
  return ChannelMatrix(users, m, std::move(blocks));
}

ChannelMatrix ChannelMatrix::scalar(const RatMatrix& coefficients) {
  return from_stacked(coefficients, coefficients.rows());
}

RatMatrix ChannelMatrix::stacked() const {
  RatMatrix s(users_ * dim_, users_ * dim_);
  for (std::size_t i = 0; i < users_; ++i)
    for (std::size_t j = 0; j < users_; ++j)
      for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) s(i * dim_ + r, j * dim_ + c) = block(i, j)(r, c);
  return s;
}

Rational ChannelMatrix::max_abs_entry() const {
  Rational best = 0;
  for (const auto& b : blocks_)
    for (const auto& e : b.entries())
      if (abs(e) > best) best = abs(e);
  return best;
}

namespace {

// Kuhn's augmenting-path step; transmitters in `taken` are unavailable.
bool augment(const std::vector<std::vector<bool>>& edge, std::size_t rx, std::vector<bool>& seen,
             std::vector<long>& match_tx, const std::vector<bool>& taken) {
  for (std::size_t tx = 0; tx < edge.size(); ++tx) {
    if (!edge[rx][tx] || taken[tx] || seen[tx]) continue;
    seen[tx] = true;
    if (match_tx[tx] < 0 || augment(edge, static_cast<std::size_t>(match_tx[tx]), seen, match_tx, taken)) {
      match_tx[tx] = static_cast<long>(rx);
      return true;
    }
  }
  return false;
}

bool has_perfect_matching(const std::vector<std::vector<bool>>& edge, std::size_t first_free,
                          const std::vector<bool>& taken) {
  const std::size_t k = edge.size();
  std::vector<long> match_tx(k, -1);
  for (std::size_t rx = first_free; rx < k; ++rx) {
    std::vector<bool> seen(k, false);
    if (!augment(edge, rx, seen, match_tx, taken)) return false;
  }
  return true;
}

}  // namespace

std::optional<DerangementCert> find_derangement(const ChannelMatrix& h) {
  const std::size_t k = h.users();
  std::vector<std::vector<bool>> edge(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) edge[i][j] = (i != j) && mat_det(h.block(i, j)) != 0;

  std::vector<bool> taken(k, false);
  if (!has_perfect_matching(edge, 0, taken)) return std::nullopt;

  // Fix receivers in order, each to the smallest transmitter that still
  // leaves a perfect matching on the rest.
  DerangementCert cert;
  cert.sigma.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    bool placed = false;
    for (std::size_t j = 0; j < k && !placed; ++j) {
      if (!edge[i][j] || taken[j]) continue;
      taken[j] = true;
      if (has_perfect_matching(edge, i + 1, taken)) {
        cert.sigma[i] = j;
        placed = true;
      } else {
        taken[j] = false;
      }
    }
    if (!placed) return std::nullopt;
  }
  cert.verified = true;
  for (std::size_t i = 0; i < k; ++i) {
    if (cert.sigma[i] == i || mat_det(h.block(i, cert.sigma[i])) == 0) cert.verified = false;
  }
  return cert;
}

}  // namespace dofkit
