#include "doctest.h"
#include "families.hpp"
#include "gbm/kernel.hpp"
#include "gbm/wick.hpp"
#include "oracles.hpp"

#include <random>

using namespace gbm;

namespace {

const Rational half(1, 2);

oracle::WeightFn block(const Rational& q) {
  return [q](const oracle::Matching& m) { return oracle::block_q(q, m); };
}

std::vector<Label> all_e1(int n) { return std::vector<Label>(n, unit_label(1, 1)); }

WickExpression single(const WickMonomial& m, WickExpression::Basis b) {
  WickExpression e;
  e.basis = b;
  e.add(m, 1);
  return e;
}

}  // namespace

TEST_CASE("labels and literals") {
  CHECK(parse_label("e2", 3) == Label{0, 1, 0});
  CHECK(parse_label("[1,-1/2]") == Label{1, -half});
  CHECK(to_string(parse_label("e2", 2)) == "e2");
  CHECK(inner(Label{1, 2}, Label{3, half}) == 4);
  CHECK_THROWS_AS(inner(Label{1}, Label{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(parse_label("e0", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_label("e3", 2), std::invalid_argument);

  const auto m = parse_monomial("(1,3) 2:e1 4:[1,1]");
  CHECK(m.points() == 4);
  CHECK(m.free_points() == std::vector<int>{2, 4});
  CHECK(parse_monomial(to_string(m)) == m);
  CHECK(parse_monomial("(1,3) 2:e1").points() == 3);
  CHECK_THROWS_AS(parse_monomial("(1,3) 4:e1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_monomial("(1,3) 3:e1 2:e1"), std::invalid_argument);

  const auto p = parse_pattern("a:e1 c:e2");
  REQUIRE(p.size() == 2);
  CHECK_FALSE(p[0].create);
  CHECK(p[1].create);
  CHECK(p[1].label == Label{0, 1});
  CHECK(to_string(p) == "a:e1 c:e2");
  CHECK(to_string(adjoint(p)) == "a:e2 c:e1");
  CHECK_THROWS_AS(parse_pattern("x:e1"), std::invalid_argument);
  CHECK(parse_word("w:e1 w:e2").size() == 2);
}

TEST_CASE("gaussian moments") {
  CHECK(gaussian_moment(Weight::bosonic(), all_e1(2)) == 1);
  CHECK(gaussian_moment(Weight::bosonic(), all_e1(3)) == 0);
  for (const Rational q : {Rational(-1), -half, Rational(0), half, Rational(1), Rational(1, 3)}) {
    CHECK(gaussian_moment(Weight::block_q(q), all_e1(4)) == 2 + q);
    // The fully crossing pairing (1,4)(2,5)(3,6) has three crossings, so its
    // sign flips for negative q.
    const Rational sixth = q >= 0 ? 5 + 6 * q + 4 * q * q : 5 + 6 * q + 2 * q * q;
    CHECK(gaussian_moment(Weight::block_q(q), all_e1(6)) == sixth);
  }
  for (int n = 1; n <= 5; ++n) {
    CHECK(gaussian_moment(Weight::bosonic(), all_e1(2 * n)) == oracle::double_factorial(2 * n - 1));
    CHECK(gaussian_moment(Weight::free(), all_e1(2 * n)) == oracle::catalan(n));
  }
  // Random labels against the pairing-sum oracle.
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Label> f(2 + 2 * (trial % 3));
    for (auto& l : f) l = {c(rng), c(rng)};
    CHECK(gaussian_moment(Weight::block_q(half), f) == oracle::gaussian(block(half), f));
    CHECK(gaussian_moment(Weight::block_q(-half), f) == oracle::gaussian(block(-half), f));
  }
}

TEST_CASE("fock moments") {
  CHECK(fock_moment(Weight::bosonic(), parse_pattern("a:e1 c:e1")) == 1);
  CHECK(fock_moment(Weight::bosonic(), parse_pattern("c:e1 a:e1")) == 0);
  CHECK(fock_moment(Weight::free(), parse_pattern("a:e1 a:e2 c:e2 c:e1")) == 1);
  CHECK(fock_moment(Weight::bosonic(), parse_pattern("a:e1 a:e2 c:e2 c:e1")) == 1);
  CHECK(fock_moment(Weight::block_q(Rational(1, 3)), parse_pattern("a:e1 a:e2 c:e1 c:e2")) == Rational(1, 3));
  for (int len = 0; len <= 6; len += 2)
    for (const auto& p : families::patterns(len, 2)) {
      CHECK(fock_moment(Weight::block_q(half), p) == oracle::fock(block(half), p));
      CHECK(fock_moment(Weight::block_q(-half), p) == oracle::fock(block(-half), p));
    }
}

TEST_CASE("eta") {
  const auto m = parse_monomial("1:e1 2:e1 3:e2", 2);
  CHECK(eta(m, {}) == 1);
  CHECK(eta(m, {{1, 2}}) == 1);
  CHECK(eta(m, {{1, 3}}) == 0);
  CHECK_THROWS_AS(eta(parse_monomial("(1,2) 3:e1"), {{1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(eta(m, {{1, 2}, {2, 3}}), std::invalid_argument);
}

TEST_CASE("Wick expansions") {
  const auto empty = parse_monomial("(1,2)");
  CHECK(wick_from_moments(empty).terms.size() == 1);

  const auto fg = parse_monomial("1:[1,1] 2:[1,2]");
  const auto e = wick_from_moments(fg);
  CHECK(e.basis == WickExpression::Basis::MOMENT);
  REQUIRE(e.terms.size() == 2);
  CHECK(e.terms.at(fg) == 1);
  CHECK(e.terms.at(parse_monomial("(1,2)")) == -3);

  const auto ortho = parse_monomial("1:e1 2:e2 3:e3");
  CHECK(wick_from_moments(ortho) == single(ortho, WickExpression::Basis::MOMENT));

  CHECK_THROWS_AS(wick_from_moments(single(fg, WickExpression::Basis::MOMENT)), std::invalid_argument);

  const std::vector<Label> labels{{1, 0}, {1, 1}, {0, 1}};
  for (const auto& m : families::monomials_upto(2, 3, labels)) {
    const auto w = single(m, WickExpression::Basis::WICK);
    CHECK(moments_from_wick(wick_from_moments(w)) == w);
    const auto mm = single(m, WickExpression::Basis::MOMENT);
    CHECK(wick_from_moments(moments_from_wick(mm)) == mm);
  }
}

TEST_CASE("inner products against brute force") {
  const std::vector<Label> labels{{1, 0}, {1, 1}};
  const auto fam = families::monomials_upto(1, 2, labels);
  for (const Rational& q : {half, -half}) {
    const auto w = Weight::block_q(q);
    for (const auto& a : fam)
      for (const auto& b : fam) {
        const auto wi = wick_inner_product(w, a, b);
        CHECK(wi == families::joined_inner(block(q), a, b, true));
        CHECK(moment_inner_product(w, a, b) == families::joined_inner(block(q), a, b, false));
        CHECK(wi == wick_inner_product(w, b, a));
        if (a.free_count() != b.free_count()) CHECK(wi == 0);
        // Psi expanded in M, then the pairing sum over all pairings.
        CHECK(wi == moment_inner_product(w, wick_from_moments(a), wick_from_moments(b)));
      }
  }
  const auto pp = parse_monomial("(1,2)");
  CHECK(wick_inner_product(Weight::block_q(half), pp, pp) == 1);
  const auto pt = parse_monomial("1:e1");
  CHECK(wick_inner_product(Weight::block_q(half), pt, pt) == 1);
  CHECK(moment_inner_product(Weight::block_q(half), pt, pt) == 1);
}

TEST_CASE("Gram matrices") {
  const auto omega = parse_monomial("");
  CHECK(gaussian_gram(Weight::bosonic(), {omega}) == MatrixQ::Ones(1, 1));
  CHECK(fock_gram(Weight::bosonic(), {CAPattern{}}) == MatrixQ::Ones(1, 1));

  const auto g = fock_gram(Weight::bosonic(), {CAPattern{}, parse_pattern("c:e1", 2), parse_pattern("c:e2", 2)});
  CHECK(g == MatrixQ::Identity(3, 3));

  const Weight w = Weight::block_q(half);
  const std::vector<WickMonomial> fam{parse_monomial("1:e1 2:e1"), parse_monomial("(1,2)"), omega};
  const auto gg = gaussian_gram(w, fam);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(gg(i, j) == families::joined_inner(block(half), fam[i], fam[j], true));
  CHECK(gg == psi_gram(w, fam));
  CHECK(ldlt_psd_certificate(gg).psd);
}
