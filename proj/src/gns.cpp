#include "gbm/gns.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gbm {

namespace {

std::size_t at(Eigen::Index i) { return static_cast<std::size_t>(i); }

void require_positive(const GramModel& m, const char* what) {
  if (!m.positive())
    throw std::domain_error(std::string(what) + ": sector " + std::to_string(m.n_left) + " Gram matrix of weight " +
                            m.weight.name() + " is not positive semidefinite");
}

/// Symmetric matrix diag(norms)^(1/2) A diag(norms)^(-1/2) in double, built
/// from the exact symmetric product diag(norms) A.
Matrix<double> orthonormal_view(const MatrixQ& a, const VectorQ& norms) {
  const Eigen::Index r = a.rows();
  Matrix<double> s(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) {
      const Rational da = norms(i) * a(i, j);
      s(i, j) = to_double(da) / std::sqrt(to_double(norms(i)) * to_double(norms(j)));
    }
  return s;
}

}  // namespace

Rational GramModel::inner(const Diagram& d1, const Diagram& d2) const {
  return evaluate_hat(weight, multiply(involution(d1), d2));
}

VectorQ GramModel::coordinates(const Diagram& d) const {
  require_positive(*this, "coordinates");
  const auto r = rank();
  VectorQ k(r);
  for (Eigen::Index i = 0; i < r; ++i) k(i) = inner(selected[at(i)], d);
  VectorQ y = transform.transpose() * k;
  for (Eigen::Index c = 0; c < r; ++c) y(c) /= norms(c);
  return y;
}

GramModel gram_model(const Weight& w, int n_left, int max_pairs) {
  GramModel m;
  m.weight = w;
  m.n_left = n_left;
  m.max_pairs = max_pairs;
  m.basis = enumerate_diagrams(n_left, 0, max_pairs);
  const auto n = static_cast<Eigen::Index>(m.basis.size());
  for (Eigen::Index i = 0; i < n; ++i) m.index.emplace(m.basis[at(i)], i);

  std::vector<Diagram> star;
  star.reserve(m.basis.size());
  for (const auto& d : m.basis) star.push_back(involution(d));
  m.gram.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      m.gram(i, j) = m.gram(j, i) = evaluate_hat(w, multiply(star[at(i)], m.basis[at(j)]));

  m.certificate = ldlt_psd_certificate(m.gram);
  if (m.certificate.psd) {
    const auto q = quotient_basis(m.certificate, n);
    const auto r = m.certificate.rank;
    m.transform.resize(r, r);
    for (Eigen::Index i = 0; i < r; ++i) {
      const auto orig = m.certificate.selected[at(i)];
      m.selected.push_back(m.basis[at(orig)]);
      for (Eigen::Index c = 0; c < r; ++c) m.transform(i, c) = q.basis(orig, c);
    }
    m.norms = q.norms;
  }
  return m;
}

MatrixQ compress(const GramModel& src, const GramModel& dst,
                 const std::function<Rational(const Diagram&, const Diagram&)>& element) {
  require_positive(src, "compress");
  require_positive(dst, "compress");
  MatrixQ k(dst.rank(), src.rank());
  for (Eigen::Index i = 0; i < dst.rank(); ++i)
    for (Eigen::Index j = 0; j < src.rank(); ++j) k(i, j) = element(dst.selected[at(i)], src.selected[at(j)]);
  MatrixQ a = dst.transform.transpose() * k * src.transform;
  for (Eigen::Index i = 0; i < a.rows(); ++i) a.row(i) /= dst.norms(i);
  return a;
}

MatrixQ generator_matrix(const GramModel& src, const GramModel& dst, const Diagram& e) {
  return compress(src, dst, [&](const Diagram& d_dst, const Diagram& d_src) {
    return evaluate_hat(src.weight, multiply(involution(d_dst), multiply(e, d_src)));
  });
}

MatrixQ metric_adjoint(const MatrixQ& a, const GramModel& src, const GramModel& dst) {
  if (a.rows() != dst.rank() || a.cols() != src.rank()) throw std::invalid_argument("metric_adjoint: shape mismatch");
  MatrixQ b = a.transpose();
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = b(i, j) * dst.norms(j) / src.norms(i);
  return b;
}

MatrixQ j_matrix(const GramModel& src, const GramModel& dst) {
  if (dst.n_left != src.n_left + 1) throw std::invalid_argument("j_matrix: target must be the next sector");
  if (dst.max_pairs < src.max_pairs)
    throw std::invalid_argument("j_matrix: target truncation too small, requires max_pairs >= " + std::to_string(src.max_pairs));
  return generator_matrix(src, dst, Diagram::left_hook());
}

bool is_isometry(const MatrixQ& a, const GramModel& src, const GramModel& dst) {
  if (a.rows() != dst.rank() || a.cols() != src.rank()) return false;
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      Rational s = 0;
      for (Eigen::Index k = 0; k < a.rows(); ++k) s += a(k, i) * dst.norms(k) * a(k, j);
      if (s != (i == j ? src.norms(i) : Rational(0))) return false;
    }
  return true;
}

std::optional<IsometryDefect> j_isometry_defect(const Weight& w, int n_left, int max_pairs) {
  const auto basis = enumerate_diagrams(n_left, 0, max_pairs);
  const Diagram d0 = Diagram::left_hook();
  std::vector<Diagram> raised;
  for (const auto& d : basis) raised.push_back(multiply(d0, d));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rational after = evaluate_hat(w, multiply(involution(raised[i]), raised[j]));
      Rational before = evaluate_hat(w, multiply(involution(basis[i]), basis[j]));
      if (after != before) return IsometryDefect{basis[i], basis[j], after, before};
    }
  return std::nullopt;
}

MatrixQ sym_rep(const GramModel& model, const std::vector<int>& pi) {
  if (static_cast<int>(pi.size()) != model.n_left)
    throw std::invalid_argument("sym_rep: permutation of " + std::to_string(pi.size()) + " points on sector " +
                                std::to_string(model.n_left));
  return compress(model, model, [&](const Diagram& d_dst, const Diagram& d_src) {
    return model.inner(d_dst, permute_legs(pi, d_src));
  });
}

std::vector<int> embed_permutation(const std::vector<int>& pi) {
  std::vector<int> out{1};
  for (int v : pi) out.push_back(v + 1);
  return out;
}

MatrixQ theta_block(const GramModel& model) {
  return compress(model, model, [&](const Diagram& d_dst, const Diagram& d_src) {
    return model.inner(d_dst, underline(d_src));
  });
}

std::vector<GramModel> word_sectors(const Weight& w, int r) {
  if (r < 0) throw std::invalid_argument("word_sectors: negative pair count");
  std::vector<GramModel> out;
  for (int n = 0; n <= r; ++n) out.push_back(gram_model(w, n, r - n));
  return out;
}

Rational word_expectation(const std::vector<GramModel>& sectors, const GeneratorWord& word) {
  if (sectors.empty()) throw std::invalid_argument("word_expectation: no sectors");
  const VectorQ xi = sectors.front().coordinates(Diagram());
  VectorQ y = xi;
  std::size_t n = 0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    switch (it->kind) {
      case GeneratorToken::Kind::HOOK:
        if (n + 1 >= sectors.size()) throw std::invalid_argument("word_expectation: word needs more sectors");
        y = generator_matrix(sectors[n], sectors[n + 1], Diagram::left_hook()) * y;
        ++n;
        break;
      case GeneratorToken::Kind::COHOOK:
        if (n == 0) return Rational(0);
        y = generator_matrix(sectors[n], sectors[n - 1], Diagram::right_hook()) * y;
        --n;
        break;
      case GeneratorToken::Kind::PERM:
        y = sym_rep(sectors[n], it->perm) * y;
        break;
    }
  }
  if (n != 0) return Rational(0);
  Rational v = 0;
  for (Eigen::Index c = 0; c < y.size(); ++c) v += xi(c) * sectors.front().norms(c) * y(c);
  return v;
}

ThetaReport theta_matrix(const std::vector<GramModel>& sectors, double tol) {
  if (sectors.empty()) throw std::invalid_argument("theta_matrix: no sectors");
  int largest = 0;
  for (std::size_t n = 0; n < sectors.size(); ++n) {
    if (sectors[n].n_left != static_cast<int>(n)) throw std::invalid_argument("theta_matrix: sectors must be 0..N in order");
    require_positive(sectors[n], "theta_matrix");
    largest = std::max(largest, 2 * sectors[n].n_left + 2 * sectors[n].max_pairs + 2);
  }
  const Weight& w = sectors.front().weight;
  const int check = std::min(10, largest);
  if (const auto bad = is_rotation_invariant_upto(w, check))
    throw std::domain_error("theta_matrix: weight " + w.name() + " is not rotation invariant: t" + to_string(bad->v) + " = " +
                            to_string(bad->value) + " but the rotated partition gives " + to_string(bad->rotated));

  ThetaReport report;
  std::vector<double> perp;
  for (const auto& model : sectors) {
    const auto n = static_cast<Eigen::Index>(model.basis.size());
    std::vector<Diagram> star;
    for (const auto& d : model.basis) star.push_back(involution(d));
    std::vector<Diagram> lifted;
    for (const auto& d : model.basis) lifted.push_back(underline(d));
    for (Eigen::Index i = 0; i < n && report.symmetric; ++i)
      for (Eigen::Index j = 0; j < i; ++j)
        if (evaluate_hat(w, multiply(star[at(i)], lifted[at(j)])) != evaluate_hat(w, multiply(star[at(j)], lifted[at(i)]))) {
          report.symmetric = false;
          break;
        }

    MatrixQ block = theta_block(model);
    const Matrix<double> s = orthonormal_view(block, model.norms);
    auto eig = block.rows() ? symmetric_eigs(s, tol) : std::vector<double>{};
    report.spectra.push_back(eig);
    report.spectrum.insert(report.spectrum.end(), eig.begin(), eig.end());

    if (model.n_left == 0 && s.rows() > 0) {
      // Orthocomplement of xi by a Householder reflection taking xi to e_1.
      const VectorQ y = model.coordinates(Diagram());
      Vector<double> u(y.size());
      for (Eigen::Index c = 0; c < y.size(); ++c) u(c) = to_double(y(c)) * std::sqrt(to_double(model.norms(c)));
      u.normalize();
      Vector<double> v = u;
      v(0) += (u(0) >= 0 ? 1.0 : -1.0);
      const Matrix<double> h = Matrix<double>::Identity(u.size(), u.size()) - 2.0 * v * v.transpose() / v.squaredNorm();
      const Matrix<double> c = h.rightCols(u.size() - 1);
      if (c.cols() > 0) {
        Matrix<double> sp = c.transpose() * s * c;
        sp = (0.5 * (sp + sp.transpose())).eval();
        const auto e = symmetric_eigs(sp, tol);
        perp.insert(perp.end(), e.begin(), e.end());
      }
    } else {
      perp.insert(perp.end(), eig.begin(), eig.end());
    }
    report.blocks.push_back(std::move(block));
  }
  std::sort(report.spectrum.begin(), report.spectrum.end(), std::greater<>());
  for (double e : perp) report.norm_perp = std::max(report.norm_perp, std::abs(e));
  for (double e : report.spectrum)
    if (std::abs(e - 1.0) <= 1e-6) ++report.eig1_multiplicity;
  return report;
}

ThetaIdentityReport theta_quadratic_identity(const Weight& w, int n_left, int max_pairs) {
  if (w.family() != Weight::Family::BLOCK_Q) throw std::invalid_argument("theta_quadratic_identity: needs a q:<r> weight");
  if (n_left < 1) throw std::invalid_argument("theta_quadratic_identity: needs at least one leg");
  const Rational& q = w.q();
  ThetaIdentityReport report;
  const bool odd = n_left % 2 != 0;
  report.factor = (q < 0 && odd) ? Rational(q) : abs(q);
  report.literal_factor = odd ? Rational(-q) : q;

  const auto basis = enumerate_diagrams(n_left, 0, max_pairs);
  std::vector<Diagram> lifted, star, lifted_star;
  for (const auto& d : basis) {
    lifted.push_back(underline(d));
    star.push_back(involution(d));
    lifted_star.push_back(involution(lifted.back()));
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      ++report.cases;
      const PairPartition outer = multiply(lifted_star[i], lifted[j]).to_partition();
      const PairPartition inner = multiply(star[i], lifted[j]).to_partition();
      const Rational lhs = w(outer);
      const Rational base = w(inner);
      if (!report.failure && lhs != report.factor * base)
        report.failure = ThetaCase{basis[i], basis[j], lhs, report.factor * base};
      if (!report.literal_failure && lhs != report.literal_factor * base)
        report.literal_failure = ThetaCase{basis[i], basis[j], lhs, report.literal_factor * base};
      const auto so = statistics(outer), si = statistics(inner);
      if (!report.counting_failure && (so.blocks != si.blocks || so.pairs != si.pairs + 1))
        report.counting_failure = ThetaCase{basis[i], basis[j], Rational(so.blocks), Rational(si.blocks)};
    }
  return report;
}

}  // namespace gbm
