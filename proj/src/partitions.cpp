#include "gbm/partitions.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace gbm {

PairPartition::PairPartition(int n_points, const std::vector<Pair>& pairs) {
  if (n_points < 0 || n_points % 2 != 0)
    throw std::invalid_argument("pair partition needs an even number of points");
  if (static_cast<int>(pairs.size()) * 2 != n_points)
    throw std::invalid_argument("pair count does not match the number of points");
  partner_.assign(static_cast<std::size_t>(n_points), -1);
  for (const Pair& p : pairs) {
    if (p.left < 1 || p.right > n_points || p.left >= p.right)
      throw std::invalid_argument("invalid pair (" + std::to_string(p.left) + "," + std::to_string(p.right) + ")");
    auto& a = partner_[static_cast<std::size_t>(p.left - 1)];
    auto& b = partner_[static_cast<std::size_t>(p.right - 1)];
    if (a >= 0 || b >= 0) throw std::invalid_argument("pairs overlap");
    a = p.right - 1;
    b = p.left - 1;
  }
}

PairPartition PairPartition::from_partners(std::vector<int> partner) {
  const int n = static_cast<int>(partner.size());
  for (int i = 0; i < n; ++i) {
    const int j = partner[static_cast<std::size_t>(i)];
    if (j < 0 || j >= n || j == i || partner[static_cast<std::size_t>(j)] != i)
      throw std::invalid_argument("partner table is not a perfect matching");
  }
  PairPartition v;
  v.partner_ = std::move(partner);
  return v;
}

std::vector<Pair> PairPartition::pairs() const {
  std::vector<Pair> out;
  out.reserve(partner_.size() / 2);
  for (std::size_t i = 0; i < partner_.size(); ++i)
    if (partner_[i] > static_cast<int>(i)) out.push_back({static_cast<int>(i) + 1, partner_[i] + 1});
  return out;
}

std::vector<PairPartition> enumerate(int n_points) {
  if (n_points < 0) throw std::invalid_argument("enumerate: negative point count");
  std::vector<PairPartition> out;
  if (n_points % 2 != 0) return out;
  std::vector<int> partner(static_cast<std::size_t>(n_points), -1);
  std::function<void(int)> rec = [&](int first) {
    while (first < n_points && partner[static_cast<std::size_t>(first)] >= 0) ++first;
    if (first == n_points) {
      out.push_back(PairPartition::from_partners(partner));
      return;
    }
    for (int j = first + 1; j < n_points; ++j) {
      if (partner[static_cast<std::size_t>(j)] >= 0) continue;
      partner[static_cast<std::size_t>(first)] = j;
      partner[static_cast<std::size_t>(j)] = first;
      rec(first + 1);
      partner[static_cast<std::size_t>(first)] = -1;
      partner[static_cast<std::size_t>(j)] = -1;
    }
  };
  rec(0);
  return out;
}

int crossings(const PairPartition& v) {
  const auto ps = v.pairs();
  int count = 0;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (ps[j].left < ps[i].right && ps[i].right < ps[j].right) ++count;
  return count;
}

BlockDecomposition blocks(const PairPartition& v) {
  const auto ps = v.pairs();
  const int r = static_cast<int>(ps.size());
  std::vector<int> root(static_cast<std::size_t>(r));
  std::iota(root.begin(), root.end(), 0);
  auto find = [&root](int x) {
    while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)];
    return x;
  };
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const auto& a = ps[static_cast<std::size_t>(i)];
      const auto& b = ps[static_cast<std::size_t>(j)];
      if (b.left < a.right && a.right < b.right) root[static_cast<std::size_t>(find(j))] = find(i);
    }
  BlockDecomposition out;
  std::vector<int> slot(static_cast<std::size_t>(r), -1);
  for (int i = 0; i < r; ++i) {
    const int f = find(i);
    if (slot[static_cast<std::size_t>(f)] < 0) {
      slot[static_cast<std::size_t>(f)] = out.count();
      out.blocks.emplace_back();
    }
    out.blocks[static_cast<std::size_t>(slot[static_cast<std::size_t>(f)])].push_back(i);
  }
  return out;
}

int block_count(const PairPartition& v) { return blocks(v).count(); }

PartitionStats statistics(const PairPartition& v) {
  const auto ps = v.pairs();
  const int r = static_cast<int>(ps.size());
  std::vector<int> root(static_cast<std::size_t>(r));
  std::iota(root.begin(), root.end(), 0);
  auto find = [&root](int x) {
    while (root[static_cast<std::size_t>(x)] != x) x = root[static_cast<std::size_t>(x)];
    return x;
  };
  PartitionStats s;
  s.pairs = r;
  s.blocks = r;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const auto& a = ps[static_cast<std::size_t>(i)];
      const auto& b = ps[static_cast<std::size_t>(j)];
      if (b.left < a.right && a.right < b.right) {
        ++s.crossings;
        const int fi = find(i), fj = find(j);
        if (fi != fj) {
          root[static_cast<std::size_t>(std::max(fi, fj))] = std::min(fi, fj);
          --s.blocks;
        }
      }
    }
  return s;
}

PairPartition rotate(const PairPartition& v) {
  if (v.empty()) throw std::invalid_argument("rotate: empty partition");
  const int m = v.points();
  std::vector<int> partner(static_cast<std::size_t>(m));
  auto shift = [m](int x) { return (x + 1) % m; };
  for (int i = 0; i < m; ++i) partner[static_cast<std::size_t>(shift(i))] = shift(v.partners()[static_cast<std::size_t>(i)]);
  return PairPartition::from_partners(std::move(partner));
}

PairPartition from_permutation(const std::vector<int>& tau) {
  const int n = static_cast<int>(tau.size());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int t : tau) {
    if (t < 1 || t > n || seen[static_cast<std::size_t>(t - 1)])
      throw std::invalid_argument("from_permutation: not a permutation of {1.." + std::to_string(n) + "}");
    seen[static_cast<std::size_t>(t - 1)] = true;
  }
  std::vector<Pair> pairs;
  for (int i = 1; i <= n; ++i) pairs.push_back({i, 2 * n + 1 - tau[static_cast<std::size_t>(i - 1)]});
  return PairPartition(2 * n, pairs);
}

PairPartition nest_insert(const PairPartition& v1, const PairPartition& v2, int k) {
  if (k < 0 || k > v1.points()) throw std::invalid_argument("nest_insert: gap position out of range");
  const int m2 = v2.points();
  std::vector<int> partner(static_cast<std::size_t>(v1.points() + m2));
  auto place1 = [k, m2](int x) { return x < k ? x : x + m2; };
  for (int i = 0; i < v1.points(); ++i)
    partner[static_cast<std::size_t>(place1(i))] = place1(v1.partners()[static_cast<std::size_t>(i)]);
  for (int i = 0; i < m2; ++i) partner[static_cast<std::size_t>(k + i)] = k + v2.partners()[static_cast<std::size_t>(i)];
  return PairPartition::from_partners(std::move(partner));
}

std::string to_string(const PairPartition& v) {
  if (v.empty()) return "()";
  std::string s;
  for (const Pair& p : v.pairs()) s += "(" + std::to_string(p.left) + "," + std::to_string(p.right) + ")";
  return s;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ == s_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  int integer() {
    skip_ws();
    std::size_t j = i_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_ || j - i_ > 6) fail("expected a point number");
    const int value = std::stoi(std::string(s_.substr(i_, j - i_)));
    i_ = j;
    return value;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse partition '" + std::string(s_) + "': " + what);
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

PairPartition parse_partition(std::string_view text) {
  Cursor c(text);
  std::vector<Pair> pairs;
  if (c.accept('(')) {
    if (c.accept(')')) {
      if (!c.done()) c.fail("trailing characters");
      return PairPartition();
    }
    for (bool first = true;; first = false) {
      if (!first && !c.accept('(')) break;
      Pair p;
      p.left = c.integer();
      c.expect(',');
      p.right = c.integer();
      c.expect(')');
      if (p.left >= p.right) c.fail("pair must satisfy l < r");
      pairs.push_back(p);
    }
  }
  if (!c.done()) c.fail("trailing characters");
  try {
    return PairPartition(static_cast<int>(pairs.size()) * 2, pairs);
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  }
}

}  // namespace gbm
