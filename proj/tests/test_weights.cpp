#include "doctest.h"
#include "gbm/weights.hpp"
#include "oracles.hpp"

using namespace gbm;

namespace {
PairPartition P(const char* s) { return parse_partition(s); }
const Rational half(1, 2);
}  // namespace

TEST_CASE("parse_weight") {
  CHECK(parse_weight("bosonic").family() == Weight::Family::BOSONIC);
  CHECK(parse_weight("free").family() == Weight::Family::FREE);
  CHECK(parse_weight("fermionic").family() == Weight::Family::FERMIONIC);
  auto w = parse_weight("q:-1/2");
  CHECK(w.family() == Weight::Family::BLOCK_Q);
  CHECK(w.q() == -half);
  CHECK(w.name() == "q:-1/2");
  CHECK(parse_weight("qcr:1/3").family() == Weight::Family::CROSSING_Q);
  CHECK_THROWS_AS(parse_weight("q:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_weight("q:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_weight("gaussian"), std::invalid_argument);
}

TEST_CASE("evaluate: examples") {
  const Rational q(1, 3);
  CHECK(evaluate(Weight::block_q(q), P("(1,3)(2,4)")) == q);
  CHECK(evaluate(Weight::block_q(q), P("(1,4)(2,3)")) == 1);
  CHECK(evaluate(Weight::block_q(-1), P("(1,3)(2,4)")) == -1);
  for (const auto& w : {Weight::bosonic(), Weight::free(), Weight::fermionic(), Weight::block_q(q), Weight::crossing_q(q)}) {
    CHECK(evaluate(w, PairPartition()) == 1);
    CHECK(evaluate(w, P("(1,2)")) == 1);
  }
  CHECK(evaluate_hat(Weight::bosonic(), Diagram::left_hook()) == 0);
  CHECK(evaluate_hat(Weight::block_q(q), Diagram::pair()) == 1);
  CHECK(evaluate_hat(Weight::fermionic(), Diagram::from_partition(P("(1,4)(2,3)"))) == 1);
}

TEST_CASE("evaluate against the brute-force weight") {
  const std::vector<Rational> qs{-1, -half, Rational(-1, 3), 0, Rational(1, 3), half, 1};
  for (int n = 0; n <= 5; ++n)
    for (const auto& v : enumerate(2 * n)) {
      const auto& m = v.partners();
      for (const auto& q : qs) {
        CHECK(evaluate(Weight::block_q(q), v) == oracle::block_q(q, m));
        CHECK(evaluate(Weight::crossing_q(q), v) == oracle::power(q, oracle::crossings(m)));
        if (q <= 0)
          CHECK(evaluate(Weight::block_q(q), v) == evaluate(Weight::block_q(-q), v) * evaluate(Weight::fermionic(), v));
      }
      CHECK(evaluate(Weight::block_q(0), v) == (oracle::crossings(m) == 0 ? 1 : 0));
      CHECK(evaluate(Weight::free(), v) == evaluate(Weight::block_q(0), v));
      CHECK(evaluate(Weight::block_q(1), v) == 1);
      CHECK(evaluate(Weight::bosonic(), v) == 1);
      CHECK(evaluate(Weight::fermionic(), v) == (oracle::crossings(m) % 2 ? -1 : 1));
    }
}

TEST_CASE("fermionic pairing sums") {
  for (int n = 1; n <= 5; ++n) {
    Rational s = 0;
    for (const auto& v : enumerate(2 * n)) s += evaluate(Weight::fermionic(), v);
    CHECK(s == 1);
  }
}

TEST_CASE("multiplicativity") {
  CHECK_FALSE(is_multiplicative_upto(Weight::block_q(half), 8));
  CHECK_FALSE(is_multiplicative_upto(Weight::free(), 8));
  CHECK_FALSE(is_multiplicative_upto(Weight::fermionic(), 8));
  const auto toy = Weight::custom("pairs", [](const PairPartition& v) { return Rational(v.size()); });
  const auto bad = is_multiplicative_upto(toy, 8);
  REQUIRE(bad);
  CHECK(bad->v1 == P("(1,2)"));
  CHECK(bad->v2 == P("(1,2)"));
  CHECK(bad->k == 0);
  CHECK(bad->whole == 2);
  CHECK(bad->product == 1);
  CHECK_THROWS_AS(is_multiplicative_upto(Weight::free(), 12), std::invalid_argument);
}

TEST_CASE("rotation invariance") {
  CHECK_FALSE(is_rotation_invariant_upto(Weight::block_q(Rational(1, 3)), 8));
  CHECK_FALSE(is_rotation_invariant_upto(Weight::fermionic(), 8));
  CHECK_FALSE(is_rotation_invariant_upto(Weight::crossing_q(half), 8));
  // Weight that sees whether point 1 is paired with point 2.
  const auto toy = Weight::custom("first-pair", [](const PairPartition& v) {
    return Rational(v.empty() || v.partner(1) == 2 ? 1 : 2);
  });
  const auto bad = is_rotation_invariant_upto(toy, 8);
  REQUIRE(bad);
  CHECK(bad->value != bad->rotated);
  CHECK(rotate(bad->v).points() == bad->v.points());
}
