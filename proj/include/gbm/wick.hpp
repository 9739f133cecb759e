#pragma once

// Pairing-sum moments of Gaussian and Fock states, generalized Wick products
// and their inner products.
//
// Labels are real vectors given by rational coordinates in a fixed
// orthonormal reference basis, so <f, g> is the plain dot product.

#include "gbm/partitions.hpp"
#include "gbm/rational.hpp"
#include "gbm/weights.hpp"

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gbm {

using Label = std::vector<Rational>;

/// Dot product; throws std::invalid_argument on a dimension mismatch.
Rational inner(const Label& f, const Label& g);

/// Unit vector e_k (1-based k) in dimension dim.
Label unit_label(int k, int dim);

/// "e2" or "[1,-1/2,0]". Unit labels get dimension dim; dim <= 0 means the
/// dimension is read off the literal. The same holds for the parsers below.
Label parse_label(std::string_view text, int dim = 0);
std::string to_string(const Label& f);

/// A pair partition V on part of the ground set {1..m}, the remaining points
/// carrying labels. Represents both M(V, f) and Psi(V, f).
struct WickMonomial {
  std::vector<int> partner;   // 0-based; -1 marks a free point
  std::vector<Label> labels;  // labels of the free points, in ground order

  /// Validates the pairs and that labels has one entry per free point.
  static WickMonomial make(int n_points, const std::vector<Pair>& pairs, std::vector<Label> labels);

  int points() const { return static_cast<int>(partner.size()); }
  int free_count() const { return static_cast<int>(labels.size()); }
  int pair_count() const { return (points() - free_count()) / 2; }
  /// 1-based free points, ascending.
  std::vector<int> free_points() const;
  std::vector<Pair> pairs() const;

  auto operator<=>(const WickMonomial&) const = default;
};

/// "(1,3) 2:e1 4:[1,1]" style literal (pairs first, then point:label).
std::string to_string(const WickMonomial& m);
WickMonomial parse_monomial(std::string_view text, int dim = 0);

struct WickExpression {
  /// MOMENT: a combination of M(V, f); WICK: a combination of Psi(V, f).
  enum class Basis { MOMENT, WICK };

  Basis basis = Basis::MOMENT;
  std::map<WickMonomial, Rational> terms;

  /// Adds c * monomial, merging equal monomials and dropping zeros.
  void add(const WickMonomial& m, const Rational& c);
  bool operator==(const WickExpression&) const = default;
};

/// One creation or annihilation operator of a pattern.
struct CALetter {
  bool create = false;
  Label label;
  bool operator==(const CALetter&) const = default;
};

/// Operators written left to right, acting on the vacuum from the right.
using CAPattern = std::vector<CALetter>;

/// "a:e1 c:e2" (a = annihilate, c = create).
CAPattern parse_pattern(std::string_view text, int dim = 0);
std::string to_string(const CAPattern& p);

/// Adjoint monomial: order reversed, creation and annihilation swapped.
CAPattern adjoint(const CAPattern& p);

/// Field word "w:e1 w:e2 ..." as a list of labels.
std::vector<Label> parse_word(std::string_view text, int dim = 0);

/// Sum over pair partitions V of the points of t(V) prod <f_l, f_r>.
Rational gaussian_moment(const Weight& w, const std::vector<Label>& labels);

/// Sum over pair partitions whose pairs are (annihilator, creator) of
/// t(V) prod <f_l, f_r>.
Rational fock_moment(const Weight& w, const CAPattern& pattern);

/// Product of <f(l), f(r)> over the given pairs of free points (1-based).
/// Throws std::invalid_argument if a pair touches a non-free point.
Rational eta(const WickMonomial& m, const std::vector<Pair>& sub);

/// Psi(V, f) expanded in moment monomials (result basis MOMENT).
WickExpression wick_from_moments(const WickMonomial& m);
/// M(V, f) expanded in Wick products (result basis WICK).
WickExpression moments_from_wick(const WickMonomial& m);
/// Linear extensions: a WICK-basis expression rewritten in the MOMENT basis
/// and vice versa.
WickExpression wick_from_moments(const WickExpression& e);
WickExpression moments_from_wick(const WickExpression& e);

/// <Psi_1 Omega, Psi_2 Omega>: the free points of the two monomials are
/// paired only across, on the ground set X1 reversed followed by X2.
Rational wick_inner_product(const Weight& w, const WickMonomial& m1, const WickMonomial& m2);

/// <M_1 Omega, M_2 Omega>: all pairings of the combined free points.
Rational moment_inner_product(const Weight& w, const WickMonomial& m1, const WickMonomial& m2);
/// Bilinear extension to MOMENT-basis expressions.
Rational moment_inner_product(const Weight& w, const WickExpression& e1, const WickExpression& e2);

MatrixQ gaussian_gram(const Weight& w, const std::vector<WickMonomial>& family);
MatrixQ fock_gram(const Weight& w, const std::vector<CAPattern>& family);

/// The Fock vector corresponding to Psi(V, f): a*(f(k)) at free points, and
/// a(g_i) ... a*(g_i) on the ends of pair i. The fresh colors g_1, g_2, ...
/// are the unit vectors at 0-based coordinates first_color, first_color + 1, ...
/// (default: right after the label coordinates). All labels are widened to
/// `width` coordinates, by default the smallest width that holds the colors.
CAPattern psi_pattern(const WickMonomial& m, int first_color = -1, int width = 0);

/// Gram matrix of the psi_pattern vectors, using colors fresh for every
/// entry, so no two vectors share a pair color.
MatrixQ psi_gram(const Weight& w, const std::vector<WickMonomial>& family);

}  // namespace gbm
