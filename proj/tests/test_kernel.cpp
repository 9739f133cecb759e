#include "doctest.h"
#include "gbm/kernel.hpp"
#include "oracles.hpp"

#include <random>

using namespace gbm;

namespace {

MatrixQ q_matrix(std::initializer_list<std::initializer_list<int>> rows) {
  MatrixQ m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-2")) == "-2");
  CHECK(to_string(parse_rational("-3/6")) == "-1/2");
  CHECK_THROWS_AS(parse_rational("3/-6"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(ipow(Rational(1, 2), 3) == Rational(1, 8));
  CHECK(ipow(Rational(2), -2) == Rational(1, 4));
  CHECK(to_double(Rational(1, 3)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("ldlt certificate: small cases") {
  auto c = ldlt_psd_certificate(q_matrix({{1, 1}, {1, 1}}));
  CHECK(c.psd);
  CHECK(c.rank == 1);

  MatrixQ zero = MatrixQ::Zero(1, 1);
  c = ldlt_psd_certificate(zero);
  CHECK(c.psd);
  CHECK(c.rank == 0);

  const MatrixQ m = q_matrix({{1, 2}, {2, 1}});
  c = ldlt_psd_certificate(m);
  CHECK_FALSE(c.psd);
  REQUIRE(c.witness.size() == 2);
  CHECK(oracle::quadratic(m, c.witness) < 0);
  // The reference witness from the example is also negative.
  VectorQ v(2);
  v << 1, -1;
  CHECK(oracle::quadratic(m, v) == -2);

  CHECK_THROWS_AS(ldlt_psd_certificate(q_matrix({{1, 2}, {3, 1}})), std::invalid_argument);
}

TEST_CASE("ldlt certificate: zero diagonal with off-diagonal entry") {
  const MatrixQ m = q_matrix({{0, 1}, {1, 0}});
  auto c = ldlt_psd_certificate(m);
  CHECK_FALSE(c.psd);
  CHECK(oracle::quadratic(m, c.witness) < 0);
}

TEST_CASE("ldlt certificate: random Gram and perturbed matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5, k = 1 + trial % 3;
    MatrixQ b(n, k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) b(i, j) = coef(rng);
    MatrixQ g = b * b.transpose();
    auto c = ldlt_psd_certificate(g);
    CHECK(c.psd);
    // Reconstruction on the selected rows and columns.
    const auto r = c.rank;
    MatrixQ sub(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) sub(i, j) = g(c.selected[i], c.selected[j]);
    CHECK(sub == c.lower * c.pivots.asDiagonal() * c.lower.transpose());
    // Rank agrees with the float spectrum.
    auto eig = symmetric_eigs(g, 1e-12);
    int positive = 0;
    for (double e : eig) positive += e > 1e-9;
    CHECK(positive == r);

    // Subtract a multiple of the identity to make it indefinite.
    MatrixQ h = g - MatrixQ::Identity(n, n);
    if (eig.back() < 1 - 1e-9) {
      auto d = ldlt_psd_certificate(h);
      CHECK_FALSE(d.psd);
      CHECK(oracle::quadratic(h, d.witness) < 0);
    }
  }
}

TEST_CASE("symmetric eigenvalues") {
  auto e = symmetric_eigs(MatrixQ::Identity(3, 3), 1e-12);
  CHECK(e == std::vector<double>{1, 1, 1});
  e = symmetric_eigs(q_matrix({{0, 1}, {1, 0}}), 1e-12);
  CHECK(e[0] == doctest::Approx(1));
  CHECK(e[1] == doctest::Approx(-1));
  e = symmetric_eigs(q_matrix({{1, 1}, {1, 1}}), 1e-12);
  CHECK(e[0] == doctest::Approx(2));
  CHECK(e[1] == doctest::Approx(0).epsilon(1e-12));
  CHECK_THROWS_AS(symmetric_eigs(MatrixQ::Identity(2, 2), 0.0), std::invalid_argument);
}

TEST_CASE("quotient basis") {
  const MatrixQ g = q_matrix({{1, 1}, {1, 1}});
  auto q = quotient_basis(g);
  REQUIRE(q.rank() == 1);
  CHECK(q.selected[0] == 0);
  CHECK(q.basis(0, 0) == 1);
  CHECK(q.basis(1, 0) == 0);

  auto id = quotient_basis(MatrixQ(MatrixQ::Identity(3, 3)));
  CHECK(id.rank() == 3);
  CHECK(id.basis == MatrixQ::Identity(3, 3));

  auto z = quotient_basis(MatrixQ(MatrixQ::Zero(2, 2)));
  CHECK(z.rank() == 0);

  CHECK_THROWS_AS(quotient_basis(q_matrix({{1, 2}, {2, 1}})), std::domain_error);

  // Exact mode: B^T G B is the diagonal of squared norms.
  const MatrixQ h = q_matrix({{2, 1, 3}, {1, 2, 3}, {3, 3, 6}});
  auto qh = quotient_basis(h);
  CHECK(qh.rank() == 2);
  MatrixQ btgb = qh.basis.transpose() * h * qh.basis;
  CHECK(btgb == MatrixQ(qh.norms.asDiagonal()));

  // Float mode: B^T G B is the identity within tolerance.
  Matrix<double> hd = h.unaryExpr([](const Rational& x) { return to_double(x); });
  auto qd = quotient_basis(hd, 1e-12);
  Matrix<double> id2 = qd.basis.transpose() * hd * qd.basis;
  CHECK((id2 - Matrix<double>::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}
