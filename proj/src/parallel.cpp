#include "dofkit/parallel.hpp"

#include "dofkit/error.hpp"
#include "dofkit/linalg.hpp"

#include <string>

namespace dofkit {

ParallelDecomposition parallel_extract(const ChannelMatrix& h) {
  const std::size_t k = h.users();
  const std::size_t m = h.dim();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!h.block(i, j).is_diagonal()) {
        throw Error(Errc::NotParallel,
                    "block (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not diagonal");
      }
    }
  }

  ParallelDecomposition out;
  out.fully_connected = true;
  out.subchannels.assign(m, RatMatrix(k, k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t s = 0; s < m; ++s) {
        const Rational& v = h.block(i, j)(s, s);
        out.subchannels[s](i, j) = v;
        if (v == 0) out.fully_connected = false;
      }
    }
  }

  out.dets_verified = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Rational prod = 1;
      for (std::size_t s = 0; s < m; ++s) prod *= out.subchannels[s](i, j);
      if (mat_det(h.block(i, j)) != prod) out.dets_verified = false;
    }
  }
  return out;
}

ChannelMatrix parallel_assemble(std::span<const RatMatrix> subchannels) {
  if (subchannels.empty()) throw Error(Errc::DimMismatch, "no subchannels");
  const std::size_t k = subchannels.front().rows();
  for (const auto& s : subchannels) {
    if (s.rows() != k || s.cols() != k) throw Error(Errc::DimMismatch, "subchannels must all be K x K");
  }
  std::vector<RatMatrix> blocks;
  blocks.reserve(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Rational> diag;
      diag.reserve(subchannels.size());
      for (const auto& s : subchannels) diag.push_back(s(i, j));
      blocks.push_back(RatMatrix::diagonal(diag));
    }
  }
  return ChannelMatrix(k, subchannels.size(), std::move(blocks));
}

SubspaceScheme compose_independent(std::span<const SubspaceScheme> per_subchannel) {
  if (per_subchannel.empty()) throw Error(Errc::DimMismatch, "no subchannel schemes");
  const std::size_t k = per_subchannel.front().directions.size();
  for (std::size_t s = 0; s < per_subchannel.size(); ++s) {
    if (per_subchannel[s].directions.size() != k) {
      throw Error(Errc::UserCountMismatch, "subchannel " + std::to_string(s + 1) + " scheme has " +
                                               std::to_string(per_subchannel[s].directions.size()) +
                                               " users, expected " + std::to_string(k));
    }
    for (const auto& v : per_subchannel[s].directions) {
      if (v.rows() != 1) {
        throw Error(Errc::AmbientDimMismatch, "subchannel " + std::to_string(s + 1) + " scheme is not scalar");
      }
    }
  }
  SubspaceScheme out;
  out.latent = per_subchannel.front().latent;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<RatMatrix> parts;
    parts.reserve(per_subchannel.size());
    for (const auto& s : per_subchannel) parts.push_back(s.directions[j]);
    out.directions.push_back(block_diagonal(parts));
  }
  return out;
}

StandardForm standardize_3user(const RatMatrix& a) {
  if (a.rows() != 3 || a.cols() != 3) throw Error(Errc::DimMismatch, "standard form needs a 3 x 3 matrix");
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (a(i, j) == 0) {
        throw Error(Errc::NotFullyConnected,
                    "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is zero");
      }
    }
  }
  const auto h = [&](int i, int j) -> const Rational& { return a(i - 1, j - 1); };

  StandardForm out;
  out.row_scaling = {Rational(1), Rational(h(1, 3) / h(2, 3)), Rational(h(2, 1) * h(1, 3) / (h(3, 1) * h(2, 3)))};
  out.col_scaling = {Rational(h(2, 3) / (h(2, 1) * h(1, 3))), Rational(1 / h(1, 2)), Rational(1 / h(1, 3))};
  out.matrix = RatMatrix(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out.matrix(i, j) = out.row_scaling[i] * a(i, j) * out.col_scaling[j];
  out.a = out.matrix(0, 0);
  out.b = out.matrix(1, 1);
  out.c = out.matrix(2, 2);
  out.d = out.matrix(2, 1);
  return out;
}

namespace {

bool is_standard(const RatMatrix& s) {
  if (s.rows() != 3 || s.cols() != 3) return false;
  for (const auto& v : s.entries())
    if (v == 0) return false;
  return s(0, 1) == 1 && s(0, 2) == 1 && s(1, 0) == 1 && s(1, 2) == 1 && s(2, 0) == 1;
}

bool constant_diagonal(std::span<const RatMatrix> subchannels, std::size_t idx) {
  for (const auto& s : subchannels)
    if (s(idx, idx) != subchannels.front()(idx, idx)) return false;
  return true;
}

}  // namespace

StrictnessClaim rational_strictness(std::span<const RatMatrix> subchannels) {
  if (subchannels.empty()) throw Error(Errc::NotStandardForm, "no subchannels");
  for (std::size_t m = 0; m < subchannels.size(); ++m) {
    if (!is_standard(subchannels[m])) {
      throw Error(Errc::NotStandardForm, "subchannel " + std::to_string(m + 1) + " is not in standard form");
    }
  }
  StrictnessClaim out;
  constexpr char families[] = {'a', 'b', 'c'};
  for (std::size_t idx = 0; idx < 3; ++idx) {
    if (constant_diagonal(subchannels, idx)) {
      out.hypothesis_holds = true;
      out.claim = StrictnessKind::DofStrictlyBelowThreeHalves;
      out.constant_family = families[idx];
      out.symmetry_based = idx != 0;
      break;
    }
  }
  return out;
}

}  // namespace dofkit
