#pragma once

// Exhaustive families of test inputs shared by unit and acceptance tests.

#include "gbm/wick.hpp"
#include "oracles.hpp"

#include <vector>

namespace families {

/// Every monomial with `pairs` pairs and `free` free points whose labels are
/// drawn (with repetition) from `labels`.
inline std::vector<gbm::WickMonomial> monomials(int pairs, int free, const std::vector<gbm::Label>& labels) {
  std::vector<gbm::WickMonomial> out;
  const int m = 2 * pairs + free;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != free) continue;
    std::vector<int> paired, free_pts;
    for (int i = 0; i < m; ++i) (mask >> i & 1u ? free_pts : paired).push_back(i);
    for (const auto& match : oracle::matchings(2 * pairs)) {
      std::vector<gbm::Pair> ps;
      for (int a = 0; a < 2 * pairs; ++a)
        if (a < match[a]) ps.push_back({paired[a] + 1, paired[match[a]] + 1});
      std::vector<std::size_t> idx(free, 0);
      while (true) {
        std::vector<gbm::Label> ls;
        for (auto i : idx) ls.push_back(labels[i]);
        out.push_back(gbm::WickMonomial::make(m, ps, ls));
        int k = free - 1;
        while (k >= 0 && ++idx[k] == labels.size()) idx[k--] = 0;
        if (k < 0) break;
      }
    }
  }
  return out;
}

/// Monomials with at most max_pairs pairs and at most max_free free points.
inline std::vector<gbm::WickMonomial> monomials_upto(int max_pairs, int max_free, const std::vector<gbm::Label>& labels) {
  std::vector<gbm::WickMonomial> out;
  for (int p = 0; p <= max_pairs; ++p)
    for (int f = 0; f <= max_free; ++f) {
      auto part = monomials(p, f, labels);
      out.insert(out.end(), part.begin(), part.end());
    }
  return out;
}

/// All creation/annihilation words of the given length over unit colors.
inline std::vector<gbm::CAPattern> patterns(int length, int dim) {
  std::vector<gbm::CAPattern> out{{}};
  for (int k = 0; k < length; ++k) {
    std::vector<gbm::CAPattern> next;
    for (const auto& p : out)
      for (int create = 0; create < 2; ++create)
        for (int c = 1; c <= dim; ++c) {
          next.push_back(p);
          next.back().push_back({create == 1, gbm::unit_label(c, dim)});
        }
    out = std::move(next);
  }
  return out;
}

/// <M_1 Omega, M_2 Omega> (across_only = false) or <Psi_1 Omega, Psi_2 Omega>
/// (across_only = true) by brute force over matchings of the joined ground
/// set: the points of the first monomial reversed, then those of the second.
inline gbm::Rational joined_inner(const oracle::WeightFn& t, const gbm::WickMonomial& a, const gbm::WickMonomial& b,
                                  bool across_only) {
  const int m1 = a.points(), m2 = b.points(), m = m1 + m2;
  std::vector<int> fixed(m, -1);
  std::vector<const gbm::Label*> label(m, nullptr);
  auto pos_a = [m1](int x) { return m1 - 1 - x; };
  std::size_t k = 0;
  for (int x = 0; x < m1; ++x) {
    if (a.partner[x] >= 0) fixed[pos_a(x)] = pos_a(a.partner[x]);
    else label[pos_a(x)] = &a.labels[k++];
  }
  k = 0;
  for (int x = 0; x < m2; ++x) {
    if (b.partner[x] >= 0) fixed[m1 + x] = m1 + b.partner[x];
    else label[m1 + x] = &b.labels[k++];
  }
  // Fixed pairs stay; only the free points are matched, in every possible way.
  std::vector<int> free_pos;
  for (int x = 0; x < m; ++x)
    if (fixed[x] < 0) free_pos.push_back(x);
  gbm::Rational s = 0;
  for (const auto& sub : oracle::matchings(static_cast<int>(free_pos.size()))) {
    std::vector<int> match = fixed;
    gbm::Rational prod = 1;
    for (std::size_t i = 0; i < sub.size() && prod != 0; ++i) {
      const int x = free_pos[i], y = free_pos[sub[i]];
      match[x] = y;
      if (x < y) {
        if (across_only && (x < m1) == (y < m1)) prod = 0;
        else prod *= oracle::dot(*label[x], *label[y]);
      }
    }
    if (prod != 0) s += prod * t(match);
  }
  return s;
}

}  // namespace families
