#pragma once

// Broken pair partitions: pair partitions whose ground set also carries
// ranked left legs and right legs. They form a *-semigroup under horizontal
// concatenation with leg joining, and mirror reflection.
//
// Positions are 0-based inside the API and 1-based in the text literal
// BP{m; pairs=(a,b)...; L=[p1,...]; R=[q1,...]}.

#include "gbm/partitions.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gbm {

class Diagram {
 public:
  /// The empty diagram (unit of the semigroup).
  Diagram() = default;

  /// partner[i] is the point paired with i, or -1 when i carries a leg.
  /// left/right list the leg positions in rank order (rank 1 first).
  Diagram(std::vector<int> partner, std::vector<int> left, std::vector<int> right);

  static Diagram from_partition(const PairPartition& v);
  /// The one-point diagram with a single left leg.
  static Diagram left_hook();
  /// The one-point diagram with a single right leg.
  static Diagram right_hook();
  /// The single closed pair.
  static Diagram pair();

  int points() const { return static_cast<int>(partner_.size()); }
  int pair_count() const { return (points() - left_legs() - right_legs()) / 2; }
  int left_legs() const { return static_cast<int>(left_.size()); }
  int right_legs() const { return static_cast<int>(right_.size()); }
  bool closed() const { return left_.empty() && right_.empty(); }

  const std::vector<int>& partners() const { return partner_; }
  const std::vector<int>& left() const { return left_; }
  const std::vector<int>& right() const { return right_; }

  /// Underlying pair partition; requires a closed diagram.
  PairPartition to_partition() const;

  auto operator<=>(const Diagram&) const = default;

 private:
  std::vector<int> partner_;
  std::vector<int> left_;
  std::vector<int> right_;
};

struct DiagramHash {
  std::size_t operator()(const Diagram& d) const noexcept;
};

/// d1 . d2: d2 drawn to the right of d1, right leg i of d1 joined with left
/// leg i of d2 for i up to min(|R1|, |L2|). Unjoined left legs of d2 rank below
/// the left legs of d1; unjoined right legs of d1 rank below those of d2.
Diagram multiply(const Diagram& d1, const Diagram& d2);

/// Mirror image: ground order reversed, left and right legs exchanged.
Diagram involution(const Diagram& d);

/// Adds one pair enclosing the whole diagram.
Diagram underline(const Diagram& d);

/// The leg of rank i moves to rank pi(i); pi is 1-based, pi[i-1] = pi(i).
/// This is a left action: permute_legs(p, permute_legs(s, d)) == permute_legs(p o s, d).
Diagram permute_legs(const std::vector<int>& pi, const Diagram& d);

/// Every diagram with the given leg counts and at most max_pairs pairs,
/// ordered by pair count, then left-leg placement, right-leg placement and
/// pairing (each lexicographic).
std::vector<Diagram> enumerate_diagrams(int n_left, int n_right, int max_pairs);

/// Number of diagrams enumerate_diagrams returns, without building them.
std::size_t count_diagrams(int n_left, int n_right, int max_pairs);

struct GeneratorToken {
  enum class Kind { HOOK, COHOOK, PERM };
  Kind kind = Kind::HOOK;
  std::vector<int> perm;  // only for PERM

  bool operator==(const GeneratorToken&) const = default;
};

/// A product of generators, written left to right; the rightmost token acts first.
using GeneratorWord = std::vector<GeneratorToken>;

/// Factorizes a pair partition into hooks, cohooks and leg permutations.
/// Points are scanned right to left: a right end opens a leg, a left end
/// rotates its partner's leg to rank 1 (when needed) and closes it.
GeneratorWord standard_form(const PairPartition& v);

/// Applies the tokens right to left to the empty diagram.
Diagram evaluate_word(const GeneratorWord& word);

/// "COHOOK PERM[2,1] HOOK HOOK"
std::string to_string(const GeneratorWord& word);

std::string to_string(const Diagram& d);
Diagram parse_diagram(std::string_view text);

}  // namespace gbm
