#pragma once

// Pair partitions of the ordered ground set {1..m}.

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace gbm {

/// One pair (left, right) of 1-based points with left < right.
struct Pair {
  int left = 0;
  int right = 0;
  auto operator<=>(const Pair&) const = default;
};

/// A perfect matching of {1..m}. Stored as a partner table, which is already
/// canonical: two partitions are equal iff their tables are.
class PairPartition {
 public:
  PairPartition() = default;

  /// Validates that `pairs` is a perfect matching of {1..n_points}.
  PairPartition(int n_points, const std::vector<Pair>& pairs);

  /// Builds from a 0-based partner table (partner[partner[i]] == i, no fixed points).
  static PairPartition from_partners(std::vector<int> partner);

  int points() const { return static_cast<int>(partner_.size()); }
  int size() const { return points() / 2; }
  bool empty() const { return partner_.empty(); }

  /// 1-based partner of a 1-based point.
  int partner(int point) const { return partner_.at(static_cast<std::size_t>(point - 1)) + 1; }
  const std::vector<int>& partners() const { return partner_; }

  /// Pairs sorted by left end, 1-based.
  std::vector<Pair> pairs() const;

  auto operator<=>(const PairPartition&) const = default;

 private:
  std::vector<int> partner_;
};

struct BlockDecomposition {
  /// Each block lists indices into PairPartition::pairs(), ascending.
  std::vector<std::vector<int>> blocks;
  int count() const { return static_cast<int>(blocks.size()); }
};

/// All matchings of {1..n_points} in lexicographic order of their sorted pair
/// lists. Odd n_points gives an empty list; 0 gives the empty partition.
std::vector<PairPartition> enumerate(int n_points);

/// Pair count, crossing count and block count in one pass.
struct PartitionStats {
  int pairs = 0;
  int crossings = 0;
  int blocks = 0;
};
PartitionStats statistics(const PairPartition& v);

int crossings(const PairPartition& v);
BlockDecomposition blocks(const PairPartition& v);
int block_count(const PairPartition& v);

/// Cyclic shift: the last point becomes point 1, every other point moves up by one.
PairPartition rotate(const PairPartition& v);

/// tau is a permutation of {1..n} (tau[i-1] = tau(i)); the result pairs i with
/// 2n+1-tau(i) on 2n points.
PairPartition from_permutation(const std::vector<int>& tau);

/// Inserts v2 into the gap after point k of v1, so that v2 occupies the
/// interval {k+1..k+|v2|} of the combined ground set.
PairPartition nest_insert(const PairPartition& v1, const PairPartition& v2, int k);

/// "(1,4)(2,3)"; the empty partition prints as "()".
std::string to_string(const PairPartition& v);

/// Inverse of to_string. Pairs may come in any order but must have l < r and
/// cover {1..m} exactly once. Throws std::invalid_argument.
PairPartition parse_partition(std::string_view text);

}  // namespace gbm
