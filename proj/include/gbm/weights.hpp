#pragma once

// Weight functions t on pair partitions and their extension to diagrams.

#include "gbm/partitions.hpp"
#include "gbm/rational.hpp"
#include "gbm/semigroup.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace gbm {

class Weight {
 public:
  enum class Family { BOSONIC, FREE, FERMIONIC, BLOCK_Q, CROSSING_Q, CUSTOM };
  using Function = std::function<Rational(const PairPartition&)>;

  static Weight bosonic();
  static Weight free();
  static Weight fermionic();
  /// |q|^(|V| - |B(V)|), times (-1)^crossings when q < 0. Requires -1 <= q <= 1.
  static Weight block_q(const Rational& q);
  /// q^crossings. Requires -1 <= q <= 1.
  static Weight crossing_q(const Rational& q);
  /// Any function; the empty partition still evaluates to 1.
  static Weight custom(std::string name, Function f);

  Family family() const { return family_; }
  const Rational& q() const { return q_; }
  /// Name accepted by parse_weight, or the custom name.
  const std::string& name() const { return name_; }

  Rational operator()(const PairPartition& v) const;

 private:
  Weight(Family family, Rational q, std::string name) : family_(family), q_(std::move(q)), name_(std::move(name)) {}

  Family family_;
  Rational q_;
  std::string name_;
  Function custom_;
};

/// "bosonic", "free", "fermionic", "q:<rational>" or "qcr:<rational>".
Weight parse_weight(std::string_view text);

Rational evaluate(const Weight& w, const PairPartition& v);

/// t(V) for a closed diagram, 0 for a diagram with legs.
Rational evaluate_hat(const Weight& w, const Diagram& d);

struct MultiplicativityFailure {
  PairPartition v1;
  PairPartition v2;
  int k = 0;
  Rational whole;    // t(V1 u V2)
  Rational product;  // t(V1) t(V2)
};

/// Checks t(V1 u V2) == t(V1) t(V2) for every insertion of a nonempty V2 into a
/// gap of V1 with at most n_points points in total. Cases are visited by total
/// size, then size of V2, V1, gap and V2, so the first failure is a smallest one.
std::optional<MultiplicativityFailure> is_multiplicative_upto(const Weight& w, int n_points);

struct RotationFailure {
  PairPartition v;
  Rational value;
  Rational rotated;
};

/// Checks t(V) == t(rotate(V)) for every nonempty V with at most n_points points.
std::optional<RotationFailure> is_rotation_invariant_upto(const Weight& w, int n_points);

}  // namespace gbm
