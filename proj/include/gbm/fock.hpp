#pragma once

// Truncated Fock space over the GNS sectors: level n holds V_n tensored
// symmetrically with n one-particle vectors, here colors 0..dim-1.
//
// A vector is a formal sum of terms (d, w): d a diagram with n left legs and
// w a color word of length n. Tensor slot k of w sits on the leg of rank n-k,
// so the newest slot is the rank-1 leg that a creation operator adds. The
// inner product of two terms at level n is
//   sum over tau in S(n) with w'(tau^-1(i)) = w(i) of t^(d* . U(tau) d').

#include "gbm/gns.hpp"
#include "gbm/wick.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gbm {

using FockTerm = std::pair<Diagram, std::vector<int>>;
using FockVector = std::map<FockTerm, Rational>;

FockVector vacuum_vector();
/// a*(f) on a formal vector; f has one coordinate per color.
FockVector apply_create(const Label& f, const FockVector& v);
/// a(f) on a formal vector.
FockVector apply_annihilate(const Label& f, const FockVector& v);
/// Applies the pattern's operators right to left.
FockVector apply_pattern(const CAPattern& p, const FockVector& v);
Rational fock_inner(const Weight& w, const FockVector& u, const FockVector& v);

/// <Omega, X Omega> computed as <(X_left)* Omega, X_right Omega>, splitting
/// the monomial in the middle.
Rational formal_vacuum_expectation(const Weight& w, const CAPattern& p);

struct FockLevel {
  int n = 0;
  GramModel sector;                    // V_n truncation
  std::vector<FockTerm> spanning;      // selected diagrams x all color words
  MatrixQ gram;
  PsdCertificate<Rational> certificate;
  std::vector<Eigen::Index> selected;  // indices into spanning, pivot order
  MatrixQ transform;                   // rank x rank
  VectorQ norms;

  Eigen::Index rank() const { return certificate.rank; }
  /// Quotient basis vector c as a formal vector.
  FockVector basis_vector(Eigen::Index c) const;
  /// Quotient coordinates of a formal vector of this level.
  VectorQ coordinates(const Weight& w, const FockVector& v) const;
};

struct FockModel {
  Weight weight = Weight::bosonic();
  int dim = 0;
  int level_cap = 0;
  int length_cap = 0;
  std::vector<FockLevel> levels;
  /// create[c][n]: a*(e_c) from level n to n+1, n < level_cap.
  std::vector<std::vector<MatrixQ>> create;
  /// annihilate[c][n]: a(e_c) from level n+1 to n.
  std::vector<std::vector<MatrixQ>> annihilate;

  /// Vacuum expectation through the quotient-coordinate matrices. Throws
  /// std::out_of_range naming the monomial if it needs a level above level_cap.
  Rational vacuum_expectation(const CAPattern& p) const;

  /// Block offsets of the levels inside operators on the whole model.
  std::vector<Eigen::Index> offsets() const;
  /// Concatenated quotient norms of all levels.
  VectorQ metric() const;
};

/// Sector n keeps diagrams with at most (length_cap - n) / 2 pairs, which holds
/// every state reached by a monomial of length <= length_cap that can still
/// return to the vacuum. Requires 1 <= dim <= 3, 0 <= level_cap <= 4 and a
/// weight whose sectors are positive semidefinite.
FockModel fock_model(const Weight& w, int dim, int level_cap, int length_cap);

/// Second quantization of a contraction T (dim x dim, acting on column
/// vectors of color coordinates) as a block-diagonal matrix on all levels.
/// Throws std::invalid_argument unless I - T^T T is positive semidefinite.
MatrixQ second_quantize(const FockModel& model, const MatrixQ& t);

struct LevelBound {
  int level = 0;
  Rational create_ratio;                  // max ||a*(e_c) b||^2 / ((k+1) ||b||^2)
  Rational annihilate_ratio;              // max ||a(e_c) b||^2 / (k ||b||^2), 0 on level 0
  double random_create_ratio = 0;         // same maxima over random combinations
  double random_annihilate_ratio = 0;
};

struct BoundsReport {
  std::vector<LevelBound> levels;
  bool holds() const;
};

/// Checks the level-wise creation/annihilation bounds on every quotient basis
/// vector and on `samples` random vectors per level (seeded, deterministic).
/// Requires a multiplicative weight.
BoundsReport creation_bounds(const FockModel& model, int samples = 100, unsigned seed = 1);

}  // namespace gbm
