#pragma once

// Dense symmetric linear algebra over an arbitrary Eigen scalar: pivoted
// LDL^T with a positive-semidefiniteness certificate, the quotient of a Gram
// matrix by its kernel, and a cyclic Jacobi eigensolver for spectra.
//
// The same templates serve gbm::Rational (exact, tol = 0) and double.

#include "gbm/rational.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace gbm {

namespace detail {

template <typename Scalar>
bool negligible(const Scalar& x, const Scalar& tol) {
  using std::abs;
  return abs(x) <= tol;
}

template <typename Scalar>
int sign_of(const Scalar& x) {
  return x > Scalar(0) ? 1 : (x < Scalar(0) ? -1 : 0);
}

}  // namespace detail

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m,
                  const typename Derived::Scalar& tol = typename Derived::Scalar(0)) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = j + 1; i < m.rows(); ++i)
      if (!detail::negligible<typename Derived::Scalar>(m(i, j) - m(j, i), tol)) return false;
  return true;
}

/// Outcome of a symmetric-pivoted LDL^T.
///
/// When `psd` holds, the leading `rank` pivots are strictly positive and the
/// remaining Schur complement is zero. `selected[i]` is the original index
/// eliminated at step i, `lower` is the unit lower factor on the selected
/// rows (pivot order) and `pivots` the diagonal D, so that
/// M(selected, selected) == lower * diag(pivots) * lower^T.
///
/// When `psd` fails, `witness` is a vector in original coordinates with
/// witness^T M witness < 0.
template <typename Scalar>
struct PsdCertificate {
  bool psd = true;
  Eigen::Index rank = 0;
  std::vector<Eigen::Index> selected;
  Matrix<Scalar> lower;
  Vector<Scalar> pivots;
  Vector<Scalar> witness;
};

/// Exact (for rational scalars) positive-semidefiniteness certificate.
/// Pivot rule: largest remaining diagonal, lowest original index on ties.
template <typename Derived>
PsdCertificate<typename Derived::Scalar> ldlt_psd_certificate(
    const Eigen::MatrixBase<Derived>& m,
    const typename Derived::Scalar& tol = typename Derived::Scalar(0)) {
  using Scalar = typename Derived::Scalar;
  using Index = Eigen::Index;
  if (!is_symmetric(m, tol)) throw std::invalid_argument("ldlt_psd_certificate: matrix is not symmetric");

  const Index n = m.rows();
  // Lower triangle in original indexing; after a pivot is eliminated its
  // column entries are overwritten by the multipliers L(p, pivot).
  Matrix<Scalar> a = m;
  auto at = [&a](Index p, Index q) -> Scalar& { return p >= q ? a(p, q) : a(q, p); };

  std::vector<Index> rest(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) rest[static_cast<std::size_t>(i)] = i;

  PsdCertificate<Scalar> cert;
  std::vector<Scalar> pivots;
  Vector<Scalar> y;  // trailing part of a witness, original coordinates
  Scalar tmp;

  while (!rest.empty()) {
    // rest stays sorted by original index, so the first extremum wins ties.
    Index best = -1;
    Index negative = -1;
    for (Index p : rest) {
      const Scalar& d = at(p, p);
      if (d < -tol && negative < 0) negative = p;
      if (best < 0 || d > at(best, best)) best = p;
    }
    if (negative >= 0) {
      y = Vector<Scalar>::Zero(n);
      y(negative) = Scalar(1);
      cert.psd = false;
      break;
    }
    if (detail::negligible<Scalar>(at(best, best), tol)) {
      // Zero diagonal: PSD only if the whole complement vanishes.
      for (std::size_t jq = 0; jq < rest.size() && cert.psd; ++jq)
        for (std::size_t ip = jq + 1; ip < rest.size(); ++ip) {
          const Index p = rest[ip], q = rest[jq];
          if (!detail::negligible<Scalar>(at(p, q), tol)) {
            y = Vector<Scalar>::Zero(n);
            y(p) = Scalar(1);
            y(q) = Scalar(-detail::sign_of(at(p, q)));
            cert.psd = false;
            break;
          }
        }
      break;
    }

    const Index k = best;
    const Scalar d = at(k, k);
    rest.erase(std::find(rest.begin(), rest.end(), k));
    cert.selected.push_back(k);
    pivots.push_back(d);

    // Schur complement update on rest x rest, then store multipliers.
    for (std::size_t jq = 0; jq < rest.size(); ++jq) {
      const Index q = rest[jq];
      if (at(q, k) == Scalar(0)) continue;
      const Scalar lq = at(q, k) / d;
      for (std::size_t ip = jq; ip < rest.size(); ++ip) {
        const Index p = rest[ip];
        const Scalar& apk = at(p, k);
        if (apk == Scalar(0)) continue;
        tmp = apk;
        tmp *= lq;
        at(p, q) -= tmp;
      }
    }
    for (Index p : rest) at(p, k) /= d;
  }

  const Index r = static_cast<Index>(cert.selected.size());
  cert.rank = r;
  cert.pivots.resize(r);
  for (Index i = 0; i < r; ++i) cert.pivots(i) = pivots[static_cast<std::size_t>(i)];
  cert.lower = Matrix<Scalar>::Identity(r, r);
  for (Index j = 0; j < r; ++j)
    for (Index i = j + 1; i < r; ++i) cert.lower(i, j) = at(cert.selected[i], cert.selected[j]);

  if (!cert.psd) {
    // x_lead = -L11^{-T} L21^T y  gives  x^T M x = y^T S y < 0.
    Vector<Scalar> z = Vector<Scalar>::Zero(r);
    for (Index j = 0; j < r; ++j)
      for (Index p : rest)
        if (y(p) != Scalar(0)) z(j) += at(p, cert.selected[j]) * y(p);
    Vector<Scalar> x(r);
    for (Index i = r - 1; i >= 0; --i) {
      Scalar s = -z(i);
      for (Index t = i + 1; t < r; ++t) s -= cert.lower(t, i) * x(t);
      x(i) = s;
    }
    cert.witness = y;
    for (Index i = 0; i < r; ++i) cert.witness(cert.selected[i]) = x(i);
  }
  return cert;
}

/// Basis of the quotient of a PSD Gram matrix by its kernel.
///
/// Column c of `basis` is a combination of the `selected` original vectors;
/// basis^T G basis == diag(norms) holds exactly for rational scalars. For
/// floating-point scalars the columns are normalized so the product is the
/// identity within rounding, and `norms` is all ones.
template <typename Scalar>
struct QuotientBasis {
  std::vector<Eigen::Index> selected;
  Matrix<Scalar> basis;  // n x rank
  Vector<Scalar> norms;  // squared norms of the basis columns

  Eigen::Index rank() const { return static_cast<Eigen::Index>(selected.size()); }
};

/// Quotient basis from an already computed PSD certificate of an n x n matrix.
template <typename Scalar>
QuotientBasis<Scalar> quotient_basis(const PsdCertificate<Scalar>& cert, Eigen::Index n) {
  using Index = Eigen::Index;
  if (!cert.psd) throw std::domain_error("quotient_basis: Gram matrix is indefinite");
  const Index r = cert.rank;
  // X = L11^{-T}: upper unit triangular, columns orthogonal in the metric.
  Matrix<Scalar> x = Matrix<Scalar>::Identity(r, r);
  for (Index c = 0; c < r; ++c)
    for (Index i = c - 1; i >= 0; --i) {
      Scalar s = Scalar(0);
      for (Index t = i + 1; t <= c; ++t) s -= cert.lower(t, i) * x(t, c);
      x(i, c) = s;
    }

  QuotientBasis<Scalar> q;
  q.selected = cert.selected;
  q.basis = Matrix<Scalar>::Zero(n, r);
  for (Index c = 0; c < r; ++c)
    for (Index i = 0; i <= c; ++i) q.basis(cert.selected[i], c) = x(i, c);
  q.norms = cert.pivots;
  if constexpr (std::is_floating_point_v<Scalar>) {
    for (Index c = 0; c < r; ++c) q.basis.col(c) /= std::sqrt(q.norms(c));
    q.norms.setOnes();
  }
  return q;
}

template <typename Derived>
QuotientBasis<typename Derived::Scalar> quotient_basis(
    const Eigen::MatrixBase<Derived>& gram,
    const typename Derived::Scalar& tol = typename Derived::Scalar(0)) {
  return quotient_basis(ldlt_psd_certificate(gram, tol), gram.rows());
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, iterated until
/// the off-diagonal Frobenius norm drops below `tol`. Sorted descending.
template <typename Derived>
std::vector<double> symmetric_eigs(const Eigen::MatrixBase<Derived>& m, double tol) {
  using Index = Eigen::Index;
  if (!(tol > 0)) throw std::invalid_argument("symmetric_eigs: tolerance must be positive");
  Matrix<double> a = m.unaryExpr([](const typename Derived::Scalar& v) { return static_cast<double>(v); });
  if (!is_symmetric(a, 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())))
    throw std::invalid_argument("symmetric_eigs: matrix is not symmetric");
  const Index n = a.rows();

  auto off_norm = [&a, n] {
    double s = 0;
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  constexpr int max_sweeps = 100;
  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() >= tol; ++sweep) {
    for (Index p = 0; p < n - 1; ++p)
      for (Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  if (sweep == max_sweeps && off_norm() >= tol)
    throw std::runtime_error("symmetric_eigs: Jacobi iteration did not converge");

  std::vector<double> eig(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

}  // namespace gbm
