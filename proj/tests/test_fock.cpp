#include "doctest.h"
#include "families.hpp"
#include "gbm/fock.hpp"
#include "oracles.hpp"

#include <random>

using namespace gbm;

namespace {

const Rational half(1, 2);

MatrixQ metric(const FockModel& m) { return MatrixQ(m.metric().asDiagonal()); }

MatrixQ rational_matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  MatrixQ m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("formal Fock vectors") {
  const Weight b = Weight::bosonic();
  auto v = apply_pattern(parse_pattern("c:e1 c:e1"), vacuum_vector());
  CHECK(fock_inner(b, v, v) == 2);
  v = apply_pattern(parse_pattern("c:e1 c:e1"), vacuum_vector());
  CHECK(fock_inner(Weight::free(), v, v) == 1);
  CHECK(fock_inner(Weight::fermionic(), v, v) == 0);
  auto u = apply_pattern(parse_pattern("c:e1 c:e2", 2), vacuum_vector());
  auto u2 = apply_pattern(parse_pattern("c:e2 c:e1", 2), vacuum_vector());
  CHECK(fock_inner(Weight::block_q(half), u, u2) == half);
  CHECK(apply_annihilate(unit_label(1, 1), vacuum_vector()).empty());
  CHECK(formal_vacuum_expectation(Weight::block_q(half), parse_pattern("a:e1 c:e1")) == 1);
  for (int len = 0; len <= 6; len += 2)
    for (const auto& p : families::patterns(len, 2)) {
      const Weight w = Weight::block_q(-half);
      CHECK(formal_vacuum_expectation(w, p) == fock_moment(w, p));
    }
}

TEST_CASE("fock_model examples") {
  const Weight w = Weight::block_q(Rational(1, 3));
  auto m = fock_model(w, 2, 2, 4);
  CHECK(m.levels[0].rank() == 1);
  CHECK(m.vacuum_expectation(parse_pattern("a:e1 c:e1", 2)) == 1);
  CHECK(m.vacuum_expectation(parse_pattern("a:e1 a:e2 c:e1 c:e2")) == Rational(1, 3));
  CHECK(m.vacuum_expectation(parse_pattern("a:[1,1] c:[1,-1]")) == 0);
  CHECK(m.vacuum_expectation(parse_pattern("a:[1,1] c:[1,1]")) == 2);
  // Vacuum is normalized.
  const VectorQ omega = m.levels[0].coordinates(w, vacuum_vector());
  CHECK(oracle::quadratic(MatrixQ(m.levels[0].norms.asDiagonal()), omega) == 1);
  // A monomial that climbs above the level cap is rejected by name.
  try {
    m.vacuum_expectation(parse_pattern("a:e1 a:e1 a:e1 c:e1 c:e1 c:e1", 2));
    FAIL("expected out_of_range");
  } catch (const std::out_of_range& e) {
    CHECK(std::string(e.what()).find("a:e1 a:e1 a:e1 c:e1 c:e1 c:e1") != std::string::npos);
  }
  CHECK_THROWS_AS(fock_model(w, 4, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(fock_model(w, 2, 5, 4), std::invalid_argument);
  const auto toy = Weight::custom("(-2)^crossings", [](const PairPartition& v) { return ipow(Rational(-2), crossings(v)); });
  CHECK_THROWS_AS(fock_model(toy, 1, 2, 4), std::domain_error);
}

TEST_CASE("annihilation is the metric adjoint of creation") {
  for (const auto& w : {Weight::block_q(half), Weight::block_q(-half), Weight::free(), Weight::bosonic()}) {
    auto m = fock_model(w, 2, 3, 6);
    for (int c = 0; c < 2; ++c)
      for (int n = 0; n < 3; ++n) {
        const MatrixQ& a = m.create[c][n];
        const MatrixQ& b = m.annihilate[c][n];
        const MatrixQ dn = MatrixQ(m.levels[n].norms.asDiagonal());
        const MatrixQ dn1 = MatrixQ(m.levels[n + 1].norms.asDiagonal());
        CHECK(MatrixQ(dn * b) == MatrixQ(a.transpose() * dn1));
      }
  }
}

TEST_CASE("second quantization") {
  const Weight w = Weight::block_q(half);
  auto m = fock_model(w, 2, 3, 6);
  const auto dim = m.offsets().back();
  CHECK(second_quantize(m, MatrixQ::Identity(2, 2)) == MatrixQ::Identity(dim, dim));

  const MatrixQ rot = rational_matrix({{Rational(3, 5), Rational(-4, 5)}, {Rational(4, 5), Rational(3, 5)}});
  const MatrixQ swap = rational_matrix({{0, 1}, {1, 0}});
  const MatrixQ fr = second_quantize(m, rot), fs = second_quantize(m, swap);
  CHECK(MatrixQ(fr.transpose() * metric(m) * fr) == metric(m));
  CHECK(MatrixQ(fr * fs) == second_quantize(m, MatrixQ(rot * swap)));

  const MatrixQ t = rational_matrix({{half, 0}, {0, 1}});
  const MatrixQ ft = second_quantize(m, t);
  CHECK(MatrixQ(ft * fr) == second_quantize(m, MatrixQ(t * rot)));
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> coef(-3, 3);
  const MatrixQ g = metric(m);
  for (int s = 0; s < 100; ++s) {
    VectorQ y(dim);
    for (Eigen::Index i = 0; i < dim; ++i) y(i) = coef(rng);
    CHECK(oracle::quadratic(g, VectorQ(ft * y)) <= oracle::quadratic(g, y));
  }
  CHECK_THROWS_AS(second_quantize(m, MatrixQ(2 * MatrixQ::Identity(2, 2))), std::invalid_argument);
  CHECK_THROWS_AS(second_quantize(m, MatrixQ::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("occupation sectors are orthogonal") {
  const Weight w = Weight::block_q(half);
  const auto a = apply_pattern(parse_pattern("c:e1 c:e1", 2), vacuum_vector());
  const auto b = apply_pattern(parse_pattern("c:e1 c:e2", 2), vacuum_vector());
  const auto c = apply_pattern(parse_pattern("a:e1 c:e1 c:e2 c:e2", 2), vacuum_vector());
  CHECK(fock_inner(w, a, b) == 0);
  CHECK(fock_inner(w, b, c) == 0);
}

TEST_CASE("creation bounds") {
  auto m = fock_model(Weight::block_q(half), 2, 2, 4);
  auto r = creation_bounds(m, 20);
  CHECK(r.holds());
  REQUIRE(r.levels.size() == 3);
  CHECK(r.levels[0].create_ratio == 1);
  CHECK(r.levels[0].annihilate_ratio == 0);
  for (const auto& l : r.levels) {
    CHECK(l.create_ratio <= 1);
    CHECK(l.annihilate_ratio <= 1);
  }
  CHECK(creation_bounds(m, 20).levels[2].random_create_ratio == r.levels[2].random_create_ratio);

  auto f = fock_model(Weight::fermionic(), 1, 2, 4);
  CHECK(creation_bounds(f, 20).holds());

  const auto toy = Weight::custom("pairs", [](const PairPartition& v) { return Rational(std::max(1, v.size())); });
  auto tm = fock_model(toy, 1, 1, 2);
  CHECK_THROWS_AS(creation_bounds(tm), std::domain_error);
}
