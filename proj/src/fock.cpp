#include "gbm/fock.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace gbm {

namespace {

std::size_t at(Eigen::Index i) { return static_cast<std::size_t>(i); }

/// Rank permutation (as taken by permute_legs) of the slot permutation tau.
std::vector<int> rank_permutation(const std::vector<int>& tau) {
  const int n = static_cast<int>(tau.size());
  std::vector<int> pi(tau.size());
  for (int r = 1; r <= n; ++r) pi[at(r - 1)] = n - tau[at(n - r)];
  return pi;
}

Rational term_inner(const Weight& w, const Diagram& d_star, const FockTerm& a, const FockTerm& b) {
  const auto& wa = a.second;
  const auto& wb = b.second;
  if (wa.size() != wb.size()) return Rational(0);
  {
    auto sa = wa, sb = wb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return Rational(0);
  }
  const int n = static_cast<int>(wa.size());
  // sigma(i) = slot of wb carrying the color wa[i]; tau = sigma^-1.
  std::vector<int> sigma(at(n), -1);
  std::vector<bool> used(at(n), false);
  Rational total = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      std::vector<int> tau(at(n));
      for (int k = 0; k < n; ++k) tau[at(sigma[at(k)])] = k;
      total += evaluate_hat(w, multiply(d_star, permute_legs(rank_permutation(tau), b.first)));
      return;
    }
    for (int j = 0; j < n; ++j) {
      if (used[at(j)] || wb[at(j)] != wa[at(i)]) continue;
      used[at(j)] = true;
      sigma[at(i)] = j;
      rec(i + 1);
      used[at(j)] = false;
    }
  };
  rec(0);
  return total;
}

void add_term(FockVector& v, FockTerm term, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = v.emplace(std::move(term), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

std::vector<std::vector<int>> all_words(int dim, int n) {
  std::vector<std::vector<int>> out{{}};
  for (int k = 0; k < n; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& w : out)
      for (int c = 0; c < dim; ++c) {
        next.push_back(w);
        next.back().push_back(c);
      }
    out = std::move(next);
  }
  return out;
}

/// D^-1 X_dst^T K X_src for a kernel given on selected spanning terms.
MatrixQ compress_levels(const FockLevel& src, const FockLevel& dst,
                        const std::function<Rational(const FockTerm&, const FockTerm&)>& element) {
  MatrixQ k(dst.rank(), src.rank());
  for (Eigen::Index i = 0; i < dst.rank(); ++i)
    for (Eigen::Index j = 0; j < src.rank(); ++j)
      k(i, j) = element(dst.spanning[at(dst.selected[at(i)])], src.spanning[at(src.selected[at(j)])]);
  MatrixQ a = dst.transform.transpose() * k * src.transform;
  for (Eigen::Index i = 0; i < a.rows(); ++i) a.row(i) /= dst.norms(i);
  return a;
}

Label unit(int c, int dim) { return unit_label(c + 1, dim); }

}  // namespace

FockVector vacuum_vector() {
  FockVector v;
  v.emplace(FockTerm{Diagram(), {}}, Rational(1));
  return v;
}

FockVector apply_create(const Label& f, const FockVector& v) {
  FockVector out;
  const Diagram hook = Diagram::left_hook();
  for (const auto& [term, coef] : v) {
    const Diagram raised = multiply(hook, term.first);
    for (std::size_t c = 0; c < f.size(); ++c) {
      if (f[c] == 0) continue;
      auto word = term.second;
      word.push_back(static_cast<int>(c));
      add_term(out, {raised, std::move(word)}, coef * f[c]);
    }
  }
  return out;
}

FockVector apply_annihilate(const Label& f, const FockVector& v) {
  FockVector out;
  const Diagram cohook = Diagram::right_hook();
  for (const auto& [term, coef] : v) {
    const auto& word = term.second;
    const int n = static_cast<int>(word.size());
    for (int k = 0; k < n; ++k) {
      const auto color = static_cast<std::size_t>(word[at(k)]);
      if (color >= f.size()) throw std::invalid_argument("annihilation label has too few coordinates");
      if (f[color] == 0) continue;
      // Slot k moves to the last slot (the rank-1 leg), later slots shift down.
      std::vector<int> tau(at(n));
      for (int i = 0; i < n; ++i) tau[at(i)] = i < k ? i : (i == k ? n - 1 : i - 1);
      auto rest = word;
      rest.erase(rest.begin() + k);
      add_term(out, {multiply(cohook, permute_legs(rank_permutation(tau), term.first)), std::move(rest)}, coef * f[color]);
    }
  }
  return out;
}

FockVector apply_pattern(const CAPattern& p, const FockVector& v) {
  FockVector cur = v;
  for (auto it = p.rbegin(); it != p.rend(); ++it) cur = it->create ? apply_create(it->label, cur) : apply_annihilate(it->label, cur);
  return cur;
}

Rational fock_inner(const Weight& w, const FockVector& u, const FockVector& v) {
  Rational total = 0;
  for (const auto& [a, ca] : u) {
    const Diagram star = involution(a.first);
    for (const auto& [b, cb] : v) {
      const Rational x = term_inner(w, star, a, b);
      if (x != 0) total += ca * cb * x;
    }
  }
  return total;
}

Rational formal_vacuum_expectation(const Weight& w, const CAPattern& p) {
  const auto half = static_cast<std::ptrdiff_t>(p.size() / 2);
  const CAPattern left(p.begin(), p.begin() + half);
  const CAPattern right(p.begin() + half, p.end());
  return fock_inner(w, apply_pattern(adjoint(left), vacuum_vector()), apply_pattern(right, vacuum_vector()));
}

FockVector FockLevel::basis_vector(Eigen::Index c) const {
  FockVector v;
  for (Eigen::Index i = 0; i <= c; ++i) add_term(v, spanning[at(selected[at(i)])], transform(i, c));
  return v;
}

VectorQ FockLevel::coordinates(const Weight& w, const FockVector& v) const {
  VectorQ k(rank());
  for (Eigen::Index i = 0; i < rank(); ++i) {
    FockVector e;
    e.emplace(spanning[at(selected[at(i)])], Rational(1));
    k(i) = fock_inner(w, e, v);
  }
  VectorQ y = transform.transpose() * k;
  for (Eigen::Index c = 0; c < rank(); ++c) y(c) /= norms(c);
  return y;
}

std::vector<Eigen::Index> FockModel::offsets() const {
  std::vector<Eigen::Index> out{0};
  for (const auto& l : levels) out.push_back(out.back() + l.rank());
  return out;
}

VectorQ FockModel::metric() const {
  VectorQ m(offsets().back());
  Eigen::Index k = 0;
  for (const auto& l : levels)
    for (Eigen::Index c = 0; c < l.rank(); ++c) m(k++) = l.norms(c);
  return m;
}

FockModel fock_model(const Weight& w, int dim, int level_cap, int length_cap) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("fock_model: dimension must be 1..3");
  if (level_cap < 0 || level_cap > 4) throw std::invalid_argument("fock_model: level cap must be 0..4");
  if (length_cap < 0) throw std::invalid_argument("fock_model: negative length cap");
  FockModel m;
  m.weight = w;
  m.dim = dim;
  m.level_cap = level_cap;
  m.length_cap = length_cap;
  for (int n = 0; n <= level_cap; ++n) {
    FockLevel level;
    level.n = n;
    level.sector = gram_model(w, n, std::max(0, (length_cap - n) / 2));
    if (!level.sector.positive())
      throw std::domain_error("fock_model: sector " + std::to_string(n) + " of weight " + w.name() + " is not positive semidefinite");
    for (const auto& d : level.sector.selected)
      for (auto& word : all_words(dim, n)) level.spanning.emplace_back(d, std::move(word));
    const auto s = static_cast<Eigen::Index>(level.spanning.size());
    level.gram.resize(s, s);
    for (Eigen::Index i = 0; i < s; ++i) {
      const Diagram star = involution(level.spanning[at(i)].first);
      for (Eigen::Index j = 0; j <= i; ++j)
        level.gram(i, j) = level.gram(j, i) = term_inner(w, star, level.spanning[at(i)], level.spanning[at(j)]);
    }
    level.certificate = ldlt_psd_certificate(level.gram);
    if (!level.certificate.psd)
      throw std::domain_error("fock_model: level " + std::to_string(n) + " Gram matrix is not positive semidefinite");
    const auto q = quotient_basis(level.certificate, s);
    level.selected = level.certificate.selected;
    const auto r = level.certificate.rank;
    level.transform.resize(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index c = 0; c < r; ++c) level.transform(i, c) = q.basis(level.selected[at(i)], c);
    level.norms = q.norms;
    m.levels.push_back(std::move(level));
  }

  m.create.assign(at(dim), {});
  m.annihilate.assign(at(dim), {});
  for (int c = 0; c < dim; ++c) {
    const Label e = unit(c, dim);
    for (int n = 0; n < level_cap; ++n) {
      const auto& lo = m.levels[at(n)];
      const auto& hi = m.levels[at(n + 1)];
      m.create[at(c)].push_back(compress_levels(lo, hi, [&](const FockTerm& t_hi, const FockTerm& t_lo) {
        FockVector a, b;
        a.emplace(t_hi, Rational(1));
        b.emplace(t_lo, Rational(1));
        return fock_inner(w, a, apply_create(e, b));
      }));
      m.annihilate[at(c)].push_back(compress_levels(hi, lo, [&](const FockTerm& t_lo, const FockTerm& t_hi) {
        FockVector a, b;
        a.emplace(t_lo, Rational(1));
        b.emplace(t_hi, Rational(1));
        return fock_inner(w, a, apply_annihilate(e, b));
      }));
    }
  }
  return m;
}

Rational FockModel::vacuum_expectation(const CAPattern& p) const {
  const VectorQ omega = levels.front().coordinates(weight, vacuum_vector());
  VectorQ y = omega;
  int level = 0;
  for (auto i = static_cast<std::ptrdiff_t>(p.size()) - 1; i >= 0; --i) {
    const auto& letter = p[static_cast<std::size_t>(i)];
    if (static_cast<int>(letter.label.size()) != dim) throw std::invalid_argument("vacuum_expectation: label dimension mismatch");
    const int next = letter.create ? level + 1 : level - 1;
    // Letters left of i can lower the level by at most i.
    if (next < 0 || next > i) return Rational(0);
    if (next > level_cap)
      throw std::out_of_range("monomial '" + to_string(p) + "' needs level " + std::to_string(next) + " above the cap " +
                              std::to_string(level_cap));
    const auto& mats = letter.create ? create : annihilate;
    const auto block = static_cast<std::size_t>(letter.create ? level : next);
    VectorQ out = VectorQ::Zero(levels[static_cast<std::size_t>(next)].rank());
    for (int c = 0; c < dim; ++c)
      if (letter.label[at(c)] != 0) out += letter.label[at(c)] * (mats[at(c)][block] * y);
    y = std::move(out);
    level = next;
  }
  if (level != 0) return Rational(0);
  Rational s = 0;
  for (Eigen::Index c = 0; c < y.size(); ++c) s += omega(c) * levels.front().norms(c) * y(c);
  return s;
}

MatrixQ second_quantize(const FockModel& model, const MatrixQ& t) {
  if (t.rows() != model.dim || t.cols() != model.dim) throw std::invalid_argument("second_quantize: T must be dim x dim");
  const MatrixQ defect = MatrixQ::Identity(model.dim, model.dim) - t.transpose() * t;
  if (!ldlt_psd_certificate(defect).psd) throw std::invalid_argument("second_quantize: T is not a contraction");

  const auto off = model.offsets();
  MatrixQ out = MatrixQ::Zero(off.back(), off.back());
  for (std::size_t n = 0; n < model.levels.size(); ++n) {
    const auto& level = model.levels[n];
    const MatrixQ block = compress_levels(level, level, [&](const FockTerm& a, const FockTerm& b) {
      // F(T)(d, w) = sum over words v of prod_k T(v_k, w_k) (d, v).
      FockVector image;
      for (const auto& word : all_words(model.dim, static_cast<int>(b.second.size()))) {
        Rational c = 1;
        for (std::size_t k = 0; k < word.size() && c != 0; ++k) c *= t(word[k], b.second[k]);
        add_term(image, {b.first, word}, c);
      }
      FockVector left;
      left.emplace(a, Rational(1));
      return fock_inner(model.weight, left, image);
    });
    out.block(off[n], off[n], level.rank(), level.rank()) = block;
  }
  return out;
}

bool BoundsReport::holds() const {
  for (const auto& l : levels)
    if (l.create_ratio > 1 || l.annihilate_ratio > 1 || l.random_create_ratio > 1 + 1e-12 ||
        l.random_annihilate_ratio > 1 + 1e-12)
      return false;
  return true;
}

BoundsReport creation_bounds(const FockModel& model, int samples, unsigned seed) {
  const Weight& w = model.weight;
  if (const auto bad = is_multiplicative_upto(w, 8))
    throw std::domain_error("creation_bounds: weight " + w.name() + " is not multiplicative at " + to_string(bad->v1) +
                            " with " + to_string(bad->v2) + " inserted after point " + std::to_string(bad->k));
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  BoundsReport report;
  for (const auto& level : model.levels) {
    LevelBound b;
    b.level = level.n;
    const auto r = level.rank();
    for (int c = 0; c < model.dim; ++c) {
      const Label e = unit(c, model.dim);
      for (int kind = 0; kind < 2; ++kind) {
        if (kind == 1 && level.n == 0) continue;
        // Gram of the images of the selected spanning terms, then of the basis.
        std::vector<FockVector> images;
        for (Eigen::Index i = 0; i < r; ++i) {
          FockVector v;
          v.emplace(level.spanning[at(level.selected[at(i)])], Rational(1));
          images.push_back(kind == 0 ? apply_create(e, v) : apply_annihilate(e, v));
        }
        MatrixQ g(r, r);
        for (Eigen::Index i = 0; i < r; ++i)
          for (Eigen::Index j = 0; j <= i; ++j) g(i, j) = g(j, i) = fock_inner(w, images[at(i)], images[at(j)]);
        const MatrixQ cg = level.transform.transpose() * g * level.transform;
        const Rational scale = kind == 0 ? Rational(level.n + 1) : Rational(level.n);
        Rational& worst = kind == 0 ? b.create_ratio : b.annihilate_ratio;
        double& worst_random = kind == 0 ? b.random_create_ratio : b.random_annihilate_ratio;
        for (Eigen::Index i = 0; i < r; ++i) worst = std::max(worst, Rational(cg(i, i) / (scale * level.norms(i))));
        for (int s = 0; s < samples; ++s) {
          VectorQ y(r);
          for (Eigen::Index i = 0; i < r; ++i) y(i) = coef(rng);
          Rational norm = 0;
          for (Eigen::Index i = 0; i < r; ++i) norm += y(i) * y(i) * level.norms(i);
          if (norm == 0) continue;
          const Rational image = y.dot(cg * y);
          worst_random = std::max(worst_random, to_double(image / (scale * norm)));
        }
      }
    }
    report.levels.push_back(b);
  }
  return report;
}

}  // namespace gbm
