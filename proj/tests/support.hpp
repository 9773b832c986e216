#pragma once

// Independent reference implementations used as test oracles, and seeded
// random generators for the property suites.

#include "dofkit/channel.hpp"
#include "dofkit/error.hpp"
#include "dofkit/matrix.hpp"
#include "dofkit/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

// Code of the dofkit::Error thrown by fn, or nullopt when nothing is thrown.
template <typename Fn>
std::optional<dofkit::Errc> errc_of(Fn&& fn) {
  try {
    fn();
  } catch (const dofkit::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

namespace oracle {

using dofkit::RatMatrix;
using dofkit::Rational;
using dofkit::RatVector;

// Textbook Gaussian elimination over Q with exact division.
inline std::size_t rank(RatMatrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(p, k), a(r, k));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      const Rational f = a(i, c) / a(r, c);
      for (std::size_t k = c; k < a.cols(); ++k) a(i, k) -= f * a(r, k);
    }
    ++r;
  }
  return r;
}

// Leibniz expansion; fine up to 7 x 7.
inline Rational det(const RatMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Inverse by Gauss-Jordan; a must be nonsingular.
inline RatMatrix inverse(const RatMatrix& a) {
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (m(p, c) == 0) ++p;
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(m(p, k), m(c, k));
      std::swap(inv(p, k), inv(c, k));
    }
    const Rational piv = m(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      m(c, k) /= piv;
      inv(c, k) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t k = 0; k < n; ++k) {
        m(i, k) -= f * m(c, k);
        inv(i, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

// dim of P_T S with the explicit projector P_T = B (B^T B)^{-1} B^T.
inline std::size_t projected_dim(const RatMatrix& target_basis, const RatMatrix& source_basis) {
  if (target_basis.cols() == 0 || source_basis.cols() == 0) return 0;
  const RatMatrix bt = target_basis.transpose();
  const RatMatrix p = target_basis * inverse(bt * target_basis) * bt;
  return rank(p * source_basis);
}

// First derangement in lexicographic order with nonsingular cross blocks.
inline std::optional<std::vector<std::size_t>> derangement(const dofkit::ChannelMatrix& h) {
  std::vector<std::size_t> perm(h.users());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < perm.size() && ok; ++i) ok = perm[i] != i && det(h.block(i, perm[i])) != 0;
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// Law of sum_j A_j Z_j by enumerating every tuple of support points.
inline std::map<RatVector, Rational> sumset_law(const std::vector<RatMatrix>& maps,
                                                const std::vector<dofkit::FiniteDist>& dists) {
  std::map<RatVector, Rational> law;
  std::vector<std::size_t> at(dists.size(), 0);
  const std::size_t m = maps.front().rows();
  while (true) {
    RatVector y(m, Rational(0));
    Rational p = 1;
    for (std::size_t j = 0; j < dists.size(); ++j) {
      const RatVector img = maps[j] * dists[j].points()[at[j]];
      for (std::size_t i = 0; i < m; ++i) y[i] += img[i];
      p *= dists[j].probs()[at[j]];
    }
    law[y] += p;
    std::size_t pos = dists.size();
    while (pos > 0 && at[pos - 1] + 1 == dists[pos - 1].size()) at[--pos] = 0;
    if (pos == 0) break;
    ++at[pos - 1];
  }
  return law;
}

// Shannon entropy in bits, summed in ascending point order.
inline double entropy(const std::map<RatVector, Rational>& law) {
  double h = 0.0;
  for (const auto& [x, p] : law) {
    const double q = dofkit::to_double(p);
    h -= q * std::log2(q);
  }
  return h;
}

}  // namespace oracle

namespace gen {

using dofkit::RatMatrix;
using dofkit::Rational;

inline Rational rational(std::mt19937_64& rng, int span = 5, int den = 4) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> d(1, den);
  return Rational(num(rng), d(rng));
}

inline Rational nonzero(std::mt19937_64& rng, int span = 5, int den = 4) {
  Rational v;
  do v = rational(rng, span, den);
  while (v == 0);
  return v;
}

inline RatMatrix matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int span = 5, int den = 4) {
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational(rng, span, den);
  return m;
}

// Random matrix of rank at most `rank`, as a product of thin factors.
inline RatMatrix low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t rank) {
  return matrix(rng, rows, rank, 3, 2) * matrix(rng, rank, cols, 3, 2);
}

inline RatMatrix nonsingular(std::mt19937_64& rng, std::size_t n) {
  RatMatrix m;
  do m = matrix(rng, n, n);
  while (oracle::det(m) == 0);
  return m;
}

inline RatMatrix full_column_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  RatMatrix m;
  do m = matrix(rng, rows, cols);
  while (oracle::rank(m) != cols);
  return m;
}

inline dofkit::ChannelMatrix channel(std::mt19937_64& rng, std::size_t users, std::size_t dim) {
  std::vector<RatMatrix> blocks;
  for (std::size_t i = 0; i < users * users; ++i) blocks.push_back(matrix(rng, dim, dim));
  return dofkit::ChannelMatrix(users, dim, std::move(blocks));
}

inline dofkit::ChannelMatrix fully_connected(std::mt19937_64& rng, std::size_t users, std::size_t dim) {
  std::vector<RatMatrix> blocks;
  for (std::size_t i = 0; i < users * users; ++i) blocks.push_back(nonsingular(rng, dim));
  return dofkit::ChannelMatrix(users, dim, std::move(blocks));
}

inline dofkit::SubspaceScheme subspace_scheme(std::mt19937_64& rng, std::size_t users, std::size_t dim) {
  std::uniform_int_distribution<std::size_t> d(0, dim);
  dofkit::SubspaceScheme s;
  for (std::size_t j = 0; j < users; ++j) s.directions.push_back(full_column_rank(rng, dim, d(rng)));
  return s;
}

}  // namespace gen
