#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "indfree/arrangement.hpp"
#include "indfree/catalog.hpp"

namespace indfree::support {

inline std::complex<double> embed(const Cyclotomic& c) {
  std::complex<double> z(0.0, 0.0);
  const int n = c.order();
  for (std::size_t j = 0; j < c.coeffs().size(); ++j) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / n;
    z += c.coeffs()[j].to_mpq().get_d() * std::polar(1.0, ang);
  }
  return z;
}

/// Rank of a matrix of covectors after the complex embedding, by partial pivoting.
inline int numeric_rank(const std::vector<Covector>& rows, double tol = 1e-8) {
  if (rows.empty()) return 0;
  std::vector<std::vector<std::complex<double>>> m;
  for (const auto& r : rows) {
    std::vector<std::complex<double>> row;
    for (const auto& c : r) row.push_back(embed(c));
    m.push_back(row);
  }
  const std::size_t cols = m[0].size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    std::size_t best = static_cast<std::size_t>(rank);
    for (std::size_t r = best; r < m.size(); ++r) {
      if (std::abs(m[r][c]) > std::abs(m[best][c])) best = r;
    }
    if (std::abs(m[best][c]) < tol) continue;
    std::swap(m[best], m[static_cast<std::size_t>(rank)]);
    const auto& p = m[static_cast<std::size_t>(rank)];
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == static_cast<std::size_t>(rank)) continue;
      const auto f = m[r][c] / p[c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * p[k];
    }
    ++rank;
  }
  return rank;
}

/// Up to count hyperplanes with small coefficients in Q(zeta_order).
inline Arrangement random_arrangement(std::mt19937& rng, int dim, int count, int order) {
  std::uniform_int_distribution<int> pick(0, 5), power(0, order - 1), sign(0, 1);
  std::vector<Hyperplane> hs;
  while (static_cast<int>(hs.size()) < count) {
    Covector v;
    bool nonzero = false;
    for (int i = 0; i < dim; ++i) {
      Cyclotomic c = Cyclotomic(0).promote(order);
      const int kind = pick(rng);
      if (kind >= 2) {
        c = Cyclotomic::root_of_unity(order, power(rng));
        if (kind == 5) c += Cyclotomic(1);
        if (sign(rng)) c = -c;
      }
      nonzero = nonzero || !c.is_zero();
      v.push_back(c);
    }
    if (nonzero) hs.emplace_back(v);
  }
  return Arrangement(dim, order, hs);
}

/// Rank-3 arrangement with at most max_size hyperplanes: either random small covectors or a
/// random subset of A^3_3(r).
inline Arrangement random_rank3(std::mt19937& rng, int max_size = 8) {
  std::uniform_int_distribution<int> coin(0, 1), size(3, max_size), order_pick(1, 4);
  for (;;) {
    Arrangement a(3, 1);
    if (coin(rng)) {
      a = random_arrangement(rng, 3, size(rng), order_pick(rng));
    } else {
      const int r = 2 + coin(rng);
      const Arrangement full = intermediate(r, 3, 3);
      std::vector<int> idx(full.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(static_cast<std::size_t>(size(rng)));
      std::sort(idx.begin(), idx.end());
      a = full.subset(idx);
    }
    if (a.rank() == 3 && static_cast<int>(a.size()) <= max_size) return a;
  }
}

}  // namespace indfree::support
