#pragma once

// Brute-force reference implementations used by the tests. Nothing here calls
// into the library's combinatorics; matchings are plain partner vectors.

#include "gbm/rational.hpp"
#include "gbm/wick.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using gbm::Rational;
using Matching = std::vector<int>;  // 0-based partner of each point

inline void matchings_rec(Matching& cur, std::vector<Matching>& out) {
  int first = -1;
  for (int i = 0; i < static_cast<int>(cur.size()); ++i)
    if (cur[i] < 0) { first = i; break; }
  if (first < 0) { out.push_back(cur); return; }
  for (int j = first + 1; j < static_cast<int>(cur.size()); ++j) {
    if (cur[j] >= 0) continue;
    cur[first] = j;
    cur[j] = first;
    matchings_rec(cur, out);
    cur[first] = cur[j] = -1;
  }
}

inline std::vector<Matching> matchings(int n) {
  std::vector<Matching> out;
  if (n % 2) return out;
  Matching cur(n, -1);
  matchings_rec(cur, out);
  return out;
}

inline bool arcs_cross(int a, int b, int c, int d) {
  return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

inline int crossings(const Matching& m) {
  int n = 0;
  for (int a = 0; a < static_cast<int>(m.size()); ++a)
    for (int c = 0; c < static_cast<int>(m.size()); ++c)
      if (a < m[a] && c < m[c] && a < c && arcs_cross(a, m[a], c, m[c])) ++n;
  return n;
}

/// Components of the crossing graph, by depth-first search over arcs.
inline int blocks(const Matching& m) {
  std::vector<int> arcs;
  for (int a = 0; a < static_cast<int>(m.size()); ++a)
    if (a < m[a]) arcs.push_back(a);
  std::vector<bool> seen(arcs.size(), false);
  int comps = 0;
  for (std::size_t s = 0; s < arcs.size(); ++s) {
    if (seen[s]) continue;
    ++comps;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < arcs.size(); ++j)
        if (!seen[j] && arcs_cross(arcs[i], m[arcs[i]], arcs[j], m[arcs[j]])) {
          seen[j] = true;
          stack.push_back(j);
        }
    }
  }
  return comps;
}

inline Rational power(Rational b, int e) {
  Rational r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// q^(pairs - blocks) with the fermionic sign for negative q.
inline Rational block_q(const Rational& q, const Matching& m) {
  const int pairs = static_cast<int>(m.size()) / 2;
  if (pairs == 0) return 1;
  const Rational aq = q < 0 ? Rational(-q) : q;
  Rational v = power(aq, pairs - blocks(m));
  if (q < 0 && crossings(m) % 2) v = -v;
  return v;
}

inline Rational dot(const gbm::Label& f, const gbm::Label& g) {
  Rational s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return s;
}

using WeightFn = std::function<Rational(const Matching&)>;

inline Rational gaussian(const WeightFn& t, const std::vector<gbm::Label>& f) {
  Rational s = 0;
  for (const auto& m : matchings(static_cast<int>(f.size()))) {
    Rational term = t(m);
    for (int a = 0; a < static_cast<int>(m.size()) && term != 0; ++a)
      if (a < m[a]) term *= dot(f[a], f[m[a]]);
    s += term;
  }
  return s;
}

/// Pairs must join an annihilator (left) with a creator (right).
inline Rational fock(const WeightFn& t, const gbm::CAPattern& p) {
  Rational s = 0;
  for (const auto& m : matchings(static_cast<int>(p.size()))) {
    Rational term = t(m);
    for (int a = 0; a < static_cast<int>(m.size()) && term != 0; ++a)
      if (a < m[a]) term *= (!p[a].create && p[m[a]].create) ? dot(p[a].label, p[m[a]].label) : Rational(0);
    s += term;
  }
  return s;
}

inline std::int64_t double_factorial(int n) {
  std::int64_t r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

inline std::int64_t catalan(int n) {
  std::int64_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

/// Exact x^T M x.
inline Rational quadratic(const gbm::MatrixQ& m, const gbm::VectorQ& x) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += x(i) * m(i, j) * x(j);
  return s;
}

}  // namespace oracle
