#pragma once

// Truncated GNS spaces over broken pair partitions.
//
// The sector V_n is spanned by the vectors chi(d) xi, d a diagram with n left
// legs, with <chi(d1) xi, chi(d2) xi> = t^(d1* . d2). A GramModel keeps every
// diagram with at most max_pairs pairs, the exact Gram matrix and, when it is
// positive semidefinite, an orthogonal basis of the quotient by its kernel.
//
// Operators are stored in quotient coordinates: a vector with coordinates y
// is sum_c y_c b_c, where b_c = sum_i transform(i, c) chi(selected_i) xi and
// <b_c, b_c'> = norms(c) delta_cc'. Compressions are the orthogonal
// projection of the true operator; they are exact on every vector whose image
// lies in the target truncation.

#include "gbm/kernel.hpp"
#include "gbm/semigroup.hpp"
#include "gbm/weights.hpp"

#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gbm {

struct GramModel {
  Weight weight = Weight::bosonic();
  int n_left = 0;
  int max_pairs = 0;
  std::vector<Diagram> basis;
  std::unordered_map<Diagram, Eigen::Index, DiagramHash> index;
  MatrixQ gram;
  PsdCertificate<Rational> certificate;

  // Quotient data, filled only when certificate.psd holds.
  std::vector<Diagram> selected;  // pivot order
  MatrixQ transform;              // rank x rank, upper unit triangular
  VectorQ norms;                  // squared norms of the quotient basis

  bool positive() const { return certificate.psd; }
  Eigen::Index rank() const { return certificate.rank; }

  /// <chi(d1) xi, chi(d2) xi>.
  Rational inner(const Diagram& d1, const Diagram& d2) const;

  /// Quotient coordinates of chi(d) xi (exact when d lies in the truncation).
  VectorQ coordinates(const Diagram& d) const;
};

/// Builds the sector with n_left legs; an indefinite Gram matrix is a result,
/// recorded in the certificate, not an error.
GramModel gram_model(const Weight& w, int n_left, int max_pairs);

/// Compression of the operator T from src to dst, given the matrix elements
/// element(d_dst, d_src) = <chi(d_dst) xi, T chi(d_src) xi> on selected diagrams.
MatrixQ compress(const GramModel& src, const GramModel& dst,
                 const std::function<Rational(const Diagram&, const Diagram&)>& element);

/// Compression of left multiplication by e; no truncation check.
MatrixQ generator_matrix(const GramModel& src, const GramModel& dst, const Diagram& e);

/// Adjoint of a compression A: src -> dst with respect to the quotient metrics.
MatrixQ metric_adjoint(const MatrixQ& a, const GramModel& src, const GramModel& dst);

/// j = chi(left hook): V_n -> V_{n+1}. Throws std::invalid_argument when dst
/// is not the next sector or its max_pairs is below src's (images would leave
/// the truncation).
MatrixQ j_matrix(const GramModel& src, const GramModel& dst);

/// Whether a^T diag(dst) a == diag(src) holds exactly.
bool is_isometry(const MatrixQ& a, const GramModel& src, const GramModel& dst);

struct IsometryDefect {
  Diagram d1;
  Diagram d2;
  Rational after;   // t^(d1* d0* d0 d2)
  Rational before;  // t^(d1* d2)
};

/// First pair of sector-n diagrams (at most max_pairs pairs) on which j fails
/// to preserve the inner product, if any.
std::optional<IsometryDefect> j_isometry_defect(const Weight& w, int n_left, int max_pairs);

/// U(pi) on the sector: pi permutes leg ranks as in permute_legs.
MatrixQ sym_rep(const GramModel& model, const std::vector<int>& pi);

/// iota(pi) in S(n+1): fixes the new rank-1 leg and shifts pi up by one.
std::vector<int> embed_permutation(const std::vector<int>& pi);

/// Compression of theta: chi(d) xi -> chi(underline(d)) xi.
MatrixQ theta_block(const GramModel& model);

/// Sectors 0..r with max_pairs r - n: every state reached while evaluating
/// the standard form of an r-pair partition lies in them.
std::vector<GramModel> word_sectors(const Weight& w, int r);

/// <xi, W xi> with HOOK, COHOOK and PERM acting as the compressions of chi(d0),
/// chi(d0*) and U(pi); the word is applied right to left. Throws
/// std::invalid_argument when the word leaves the given sectors.
Rational word_expectation(const std::vector<GramModel>& sectors, const GeneratorWord& word);

struct ThetaReport {
  std::vector<MatrixQ> blocks;               // one per sector, quotient coordinates
  bool symmetric = true;                     // M[d1,d2] == M[d2,d1] on every full diagram basis
  std::vector<std::vector<double>> spectra;  // per sector, descending
  std::vector<double> spectrum;              // all sectors, descending
  double norm_perp = 0;                      // largest |eigenvalue| orthogonal to xi
  int eig1_multiplicity = 0;
};

/// Requires sectors 0..N in order and a weight that is invariant under rotation
/// (checked exhaustively up to min(10, largest ground size + 2) points);
/// otherwise throws std::domain_error.
ThetaReport theta_matrix(const std::vector<GramModel>& sectors, double tol = 1e-9);

struct ThetaCase {
  Diagram d1;
  Diagram d2;
  Rational lhs;  // t^(underline(d1)* . underline(d2))
  Rational rhs;  // factor * t^(d1* . underline(d2))
};

struct ThetaIdentityReport {
  Rational factor;          // |q| sgn(q)^n
  Rational literal_factor;  // q (-1)^n
  std::size_t cases = 0;
  std::optional<ThetaCase> failure;          // against factor
  std::optional<ThetaCase> literal_failure;  // against literal_factor
  std::optional<ThetaCase> counting_failure; // lhs/rhs hold the two block counts
  bool holds() const { return !failure && !counting_failure; }
};

/// Exhaustive check over all d1, d2 with n >= 1 left legs and at most
/// max_pairs pairs, for a block-q weight.
ThetaIdentityReport theta_quadratic_identity(const Weight& w, int n_left, int max_pairs);

}  // namespace gbm
