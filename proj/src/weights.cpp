#include "gbm/weights.hpp"

#include <stdexcept>

namespace gbm {

namespace {

void check_parameter(const Rational& q) {
  if (q < -1 || q > 1) throw std::invalid_argument("weight parameter must lie in [-1, 1], got " + to_string(q));
}

void check_size(int n_points) {
  if (n_points < 0 || n_points > 10 || n_points % 2 != 0)
    throw std::invalid_argument("property checks take an even point count up to 10");
}

}  // namespace

Weight Weight::bosonic() { return Weight(Family::BOSONIC, Rational(1), "bosonic"); }
Weight Weight::free() { return Weight(Family::FREE, Rational(0), "free"); }
Weight Weight::fermionic() { return Weight(Family::FERMIONIC, Rational(-1), "fermionic"); }

Weight Weight::block_q(const Rational& q) {
  check_parameter(q);
  return Weight(Family::BLOCK_Q, q, "q:" + to_string(q));
}

Weight Weight::crossing_q(const Rational& q) {
  check_parameter(q);
  return Weight(Family::CROSSING_Q, q, "qcr:" + to_string(q));
}

Weight Weight::custom(std::string name, Function f) {
  if (!f) throw std::invalid_argument("custom weight needs a function");
  Weight w(Family::CUSTOM, Rational(0), std::move(name));
  w.custom_ = std::move(f);
  return w;
}

Rational Weight::operator()(const PairPartition& v) const {
  if (v.empty()) return Rational(1);
  if (family_ == Family::CUSTOM) return custom_(v);
  if (family_ == Family::BOSONIC) return Rational(1);
  const PartitionStats s = statistics(v);
  switch (family_) {
    case Family::FREE: return Rational(s.crossings == 0 ? 1 : 0);
    case Family::FERMIONIC: return Rational(s.crossings % 2 == 0 ? 1 : -1);
    case Family::CROSSING_Q: return ipow(q_, s.crossings);
    case Family::BLOCK_Q: {
      Rational value = ipow(abs(q_), s.pairs - s.blocks);
      if (q_ < 0 && s.crossings % 2 != 0) value = -value;
      return value;
    }
    default: break;
  }
  throw std::logic_error("unhandled weight family");
}

Weight parse_weight(std::string_view text) {
  if (text == "bosonic") return Weight::bosonic();
  if (text == "free") return Weight::free();
  if (text == "fermionic") return Weight::fermionic();
  if (text.substr(0, 2) == "q:") return Weight::block_q(parse_rational(text.substr(2)));
  if (text.substr(0, 4) == "qcr:") return Weight::crossing_q(parse_rational(text.substr(4)));
  throw std::invalid_argument("unknown weight '" + std::string(text) +
                              "' (expected bosonic, free, fermionic, q:<r> or qcr:<r>)");
}

Rational evaluate(const Weight& w, const PairPartition& v) { return w(v); }

Rational evaluate_hat(const Weight& w, const Diagram& d) {
  if (!d.closed()) return Rational(0);
  return w(d.to_partition());
}

std::optional<MultiplicativityFailure> is_multiplicative_upto(const Weight& w, int n_points) {
  check_size(n_points);
  for (int total = 2; total <= n_points; total += 2)
    for (int m2 = 2; m2 <= total; m2 += 2) {
      const auto outer = enumerate(total - m2);
      const auto inner = enumerate(m2);
      for (const auto& v1 : outer) {
        const Rational t1 = w(v1);
        for (int k = 0; k <= v1.points(); ++k)
          for (const auto& v2 : inner) {
            const PairPartition u = nest_insert(v1, v2, k);
            Rational whole = w(u);
            Rational product = t1 * w(v2);
            if (whole != product) return MultiplicativityFailure{v1, v2, k, whole, product};
          }
      }
    }
  return std::nullopt;
}

std::optional<RotationFailure> is_rotation_invariant_upto(const Weight& w, int n_points) {
  check_size(n_points);
  for (int m = 2; m <= n_points; m += 2)
    for (const auto& v : enumerate(m)) {
      Rational value = w(v);
      Rational rotated = w(rotate(v));
      if (value != rotated) return RotationFailure{v, value, rotated};
    }
  return std::nullopt;
}

}  // namespace gbm
