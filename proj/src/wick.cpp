#include "gbm/wick.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gbm {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

/// Largest unit index or explicit vector length mentioned in a literal.
int infer_dimension(std::string_view text) {
  int dim = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == 'e' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      dim = std::max(dim, std::stoi(std::string(text.substr(i + 1, std::min<std::size_t>(j - i - 1, 6)))));
    } else if (text[i] == '[') {
      const auto close = text.find(']', i);
      if (close == std::string_view::npos) break;
      const auto body = text.substr(i + 1, close - i - 1);
      dim = std::max(dim, body.empty() ? 0 : static_cast<int>(std::count(body.begin(), body.end(), ',')) + 1);
    }
  }
  return dim;
}

/// Points of a closed-up inner product: the partner table with -1 on free
/// points, plus the free points' labels and which side they came from.
struct Closure {
  std::vector<int> partner;
  std::vector<int> free_points;
  std::vector<const Label*> labels;
  std::vector<int> side;
};

Closure join_reversed(const WickMonomial& m1, const WickMonomial& m2) {
  const int a = m1.points();
  const int n = a + m2.points();
  Closure c;
  c.partner.assign(at(n), -1);
  auto map1 = [a](int x) { return a - 1 - x; };
  for (int x = 0; x < a; ++x) {
    const int y = m1.partner[at(x)];
    if (y >= 0) c.partner[at(map1(x))] = map1(y);
  }
  for (int x = 0; x < m2.points(); ++x) {
    const int y = m2.partner[at(x)];
    if (y >= 0) c.partner[at(a + x)] = a + y;
  }
  // Free points in ground order of the combined set: X1 reversed, then X2.
  std::size_t k = m1.labels.size();
  for (int x = a - 1; x >= 0; --x)
    if (m1.partner[at(x)] < 0) {
      c.free_points.push_back(map1(x));
      c.labels.push_back(&m1.labels[--k]);
      c.side.push_back(0);
    }
  k = 0;
  for (int x = 0; x < m2.points(); ++x)
    if (m2.partner[at(x)] < 0) {
      c.free_points.push_back(a + x);
      c.labels.push_back(&m2.labels[k++]);
      c.side.push_back(1);
    }
  return c;
}

/// Sum over perfect matchings V of the free points of eta(V) t(closure + V).
/// With `across`, only pairs joining the two sides are allowed.
Rational pairing_sum(const Weight& w, Closure c, bool across) {
  const int f = static_cast<int>(c.free_points.size());
  if (f % 2 != 0) return Rational(0);
  std::vector<bool> used(at(f), false);
  Rational total = 0;
  std::function<void(int, const Rational&)> rec = [&](int i, const Rational& coef) {
    while (i < f && used[at(i)]) ++i;
    if (i == f) {
      total += coef * w(PairPartition::from_partners(c.partner));
      return;
    }
    used[at(i)] = true;
    for (int j = i + 1; j < f; ++j) {
      if (used[at(j)] || (across && c.side[at(i)] == c.side[at(j)])) continue;
      const Rational ip = inner(*c.labels[at(i)], *c.labels[at(j)]);
      if (ip == 0) continue;
      used[at(j)] = true;
      const int x = c.free_points[at(i)], y = c.free_points[at(j)];
      c.partner[at(x)] = y;
      c.partner[at(y)] = x;
      rec(i + 1, coef * ip);
      c.partner[at(x)] = c.partner[at(y)] = -1;
      used[at(j)] = false;
    }
    used[at(i)] = false;
  };
  rec(0, Rational(1));
  return total;
}

/// Calls visit(extra pairs, eta) for every partial matching of the free points of m.
void for_each_subpairing(const WickMonomial& m,
                         const std::function<void(const std::vector<std::pair<int, int>>&, const Rational&)>& visit) {
  const int f = m.free_count();
  std::vector<bool> used(at(f), false);
  std::vector<std::pair<int, int>> chosen;  // indices into the free list
  std::function<void(int, const Rational&)> rec = [&](int i, const Rational& coef) {
    while (i < f && used[at(i)]) ++i;
    if (i >= f) {
      visit(chosen, coef);
      return;
    }
    used[at(i)] = true;
    rec(i + 1, coef);  // i stays free
    for (int j = i + 1; j < f; ++j) {
      if (used[at(j)]) continue;
      const Rational ip = inner(m.labels[at(i)], m.labels[at(j)]);
      if (ip == 0) continue;
      used[at(j)] = true;
      chosen.emplace_back(i, j);
      rec(i + 1, coef * ip);
      chosen.pop_back();
      used[at(j)] = false;
    }
    used[at(i)] = false;
  };
  rec(0, Rational(1));
}

WickMonomial close_pairs(const WickMonomial& m, const std::vector<std::pair<int, int>>& extra) {
  const auto free = m.free_points();
  WickMonomial out;
  out.partner = m.partner;
  std::vector<bool> gone(free.size(), false);
  for (auto [i, j] : extra) {
    const int x = free[at(i)] - 1, y = free[at(j)] - 1;
    out.partner[at(x)] = y;
    out.partner[at(y)] = x;
    gone[at(i)] = gone[at(j)] = true;
  }
  for (std::size_t k = 0; k < free.size(); ++k)
    if (!gone[k]) out.labels.push_back(m.labels[k]);
  return out;
}

WickExpression expand(const WickMonomial& m, WickExpression::Basis basis, bool alternate) {
  WickExpression e;
  e.basis = basis;
  for_each_subpairing(m, [&](const std::vector<std::pair<int, int>>& extra, const Rational& coef) {
    const bool negative = alternate && extra.size() % 2 == 1;
    e.add(close_pairs(m, extra), negative ? Rational(-coef) : coef);
  });
  return e;
}

}  // namespace

Rational inner(const Label& f, const Label& g) {
  if (f.size() != g.size())
    throw std::invalid_argument("label dimensions differ: " + std::to_string(f.size()) + " vs " + std::to_string(g.size()));
  Rational s = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0 && g[i] != 0) s += f[i] * g[i];
  return s;
}

Label unit_label(int k, int dim) {
  if (k < 1 || k > dim) throw std::invalid_argument("unit label e" + std::to_string(k) + " outside dimension " + std::to_string(dim));
  Label f(at(dim), Rational(0));
  f[at(k - 1)] = 1;
  return f;
}

Label parse_label(std::string_view text, int dim) {
  if (dim <= 0) dim = infer_dimension(text);
  if (text.size() >= 2 && text[0] == 'e') {
    const auto digits = text.substr(1);
    if (digits.size() > 6 || !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw std::invalid_argument("bad label '" + std::string(text) + "'");
    return unit_label(std::stoi(std::string(digits)), dim);
  }
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
    Label f;
    const auto body = text.substr(1, text.size() - 2);
    std::size_t start = 0;
    while (start <= body.size() && !body.empty()) {
      const auto comma = body.find(',', start);
      f.push_back(parse_rational(body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(f.size()) != dim)
      throw std::invalid_argument("label '" + std::string(text) + "' does not have dimension " + std::to_string(dim));
    return f;
  }
  throw std::invalid_argument("bad label '" + std::string(text) + "' (expected e<k> or [x,y,...])");
}

std::string to_string(const Label& f) {
  int unit = -1;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    if (f[i] == 1 && unit == -1) {
      unit = static_cast<int>(i);
    } else {
      unit = -2;
    }
  }
  if (unit >= 0) return "e" + std::to_string(unit + 1);
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + to_string(f[i]);
  return s + "]";
}

WickMonomial WickMonomial::make(int n_points, const std::vector<Pair>& pairs, std::vector<Label> labels) {
  if (n_points < 0) throw std::invalid_argument("negative point count");
  WickMonomial m;
  m.partner.assign(at(n_points), -1);
  for (const Pair& p : pairs) {
    if (p.left < 1 || p.right > n_points || p.left >= p.right || m.partner[at(p.left - 1)] >= 0 ||
        m.partner[at(p.right - 1)] >= 0)
      throw std::invalid_argument("invalid or overlapping pair in Wick monomial");
    m.partner[at(p.left - 1)] = p.right - 1;
    m.partner[at(p.right - 1)] = p.left - 1;
  }
  if (static_cast<int>(labels.size()) != n_points - 2 * static_cast<int>(pairs.size()))
    throw std::invalid_argument("Wick monomial needs one label per free point");
  for (const auto& f : labels)
    if (f.size() != labels.front().size()) throw std::invalid_argument("Wick monomial labels differ in dimension");
  m.labels = std::move(labels);
  return m;
}

std::vector<int> WickMonomial::free_points() const {
  std::vector<int> out;
  for (int i = 0; i < points(); ++i)
    if (partner[at(i)] < 0) out.push_back(i + 1);
  return out;
}

std::vector<Pair> WickMonomial::pairs() const {
  std::vector<Pair> out;
  for (int i = 0; i < points(); ++i)
    if (partner[at(i)] > i) out.push_back({i + 1, partner[at(i)] + 1});
  return out;
}

std::string to_string(const WickMonomial& m) {
  std::string s;
  for (const Pair& p : m.pairs()) s += "(" + std::to_string(p.left) + "," + std::to_string(p.right) + ")";
  const auto free = m.free_points();
  for (std::size_t k = 0; k < free.size(); ++k) s += (s.empty() ? "" : " ") + std::to_string(free[k]) + ":" + to_string(m.labels[k]);
  return s.empty() ? "()" : s;
}

WickMonomial parse_monomial(std::string_view text, int dim) {
  if (dim <= 0) dim = infer_dimension(text);
  auto fail = [&text](const std::string& what) {
    throw std::invalid_argument("cannot parse Wick monomial '" + std::string(text) + "': " + what);
  };
  std::vector<Pair> pairs;
  std::vector<std::pair<int, Label>> labelled;
  for (const auto& tok : split_ws(text)) {
    if (tok.front() == '(') {
      if (tok == "()") continue;
      std::size_t i = 0;
      while (i < tok.size()) {
        const auto comma = tok.find(',', i);
        const auto close = tok.find(')', i);
        if (tok[i] != '(' || comma == std::string::npos || close == std::string::npos || comma > close)
          fail("bad pair list '" + tok + "'");
        try {
          pairs.push_back({std::stoi(tok.substr(i + 1, comma - i - 1)), std::stoi(tok.substr(comma + 1, close - comma - 1))});
        } catch (const std::logic_error&) {
          fail("bad pair list '" + tok + "'");
        }
        i = close + 1;
      }
    } else {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0) fail("expected point:label, got '" + tok + "'");
      int point = 0;
      try {
        point = std::stoi(tok.substr(0, colon));
      } catch (const std::logic_error&) {
        fail("bad point in '" + tok + "'");
      }
      labelled.emplace_back(point, parse_label(std::string_view(tok).substr(colon + 1), dim));
    }
  }
  std::sort(labelled.begin(), labelled.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  const int n = static_cast<int>(2 * pairs.size() + labelled.size());
  std::vector<Label> labels;
  for (auto& [point, f] : labelled) labels.push_back(std::move(f));
  WickMonomial m = WickMonomial::make(n, pairs, std::move(labels));
  const auto free = m.free_points();
  for (std::size_t k = 0; k < free.size(); ++k)
    if (free[k] != labelled[k].first) fail("labelled points must be exactly the unpaired points");
  return m;
}

void WickExpression::add(const WickMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

CAPattern parse_pattern(std::string_view text, int dim) {
  if (dim <= 0) dim = infer_dimension(text);
  CAPattern p;
  for (const auto& tok : split_ws(text)) {
    if (tok.size() < 3 || tok[1] != ':' || (tok[0] != 'a' && tok[0] != 'c'))
      throw std::invalid_argument("bad pattern letter '" + tok + "' (expected a:<label> or c:<label>)");
    p.push_back({tok[0] == 'c', parse_label(std::string_view(tok).substr(2), dim)});
  }
  return p;
}

std::string to_string(const CAPattern& p) {
  std::string s;
  for (const auto& x : p) s += (s.empty() ? "" : " ") + std::string(x.create ? "c:" : "a:") + to_string(x.label);
  return s;
}

CAPattern adjoint(const CAPattern& p) {
  CAPattern out(p.rbegin(), p.rend());
  for (auto& x : out) x.create = !x.create;
  return out;
}

std::vector<Label> parse_word(std::string_view text, int dim) {
  if (dim <= 0) dim = infer_dimension(text);
  std::vector<Label> out;
  for (const auto& tok : split_ws(text)) {
    if (tok.size() < 3 || tok.substr(0, 2) != "w:") throw std::invalid_argument("bad field letter '" + tok + "' (expected w:<label>)");
    out.push_back(parse_label(std::string_view(tok).substr(2), dim));
  }
  return out;
}

Rational gaussian_moment(const Weight& w, const std::vector<Label>& labels) {
  Closure c;
  const int n = static_cast<int>(labels.size());
  c.partner.assign(at(n), -1);
  for (int i = 0; i < n; ++i) {
    c.free_points.push_back(i);
    c.labels.push_back(&labels[at(i)]);
    c.side.push_back(0);
  }
  return pairing_sum(w, std::move(c), false);
}

Rational fock_moment(const Weight& w, const CAPattern& pattern) {
  const int n = static_cast<int>(pattern.size());
  if (n % 2 != 0) return Rational(0);
  std::vector<int> partner(at(n), -1);
  Rational total = 0;
  std::function<void(int, const Rational&)> rec = [&](int i, const Rational& coef) {
    while (i < n && partner[at(i)] >= 0) ++i;
    if (i == n) {
      total += coef * w(PairPartition::from_partners(partner));
      return;
    }
    // The first open point is a left end, so it must annihilate.
    if (pattern[at(i)].create) return;
    for (int j = i + 1; j < n; ++j) {
      if (partner[at(j)] >= 0 || !pattern[at(j)].create) continue;
      const Rational ip = inner(pattern[at(i)].label, pattern[at(j)].label);
      if (ip == 0) continue;
      partner[at(i)] = j;
      partner[at(j)] = i;
      rec(i + 1, coef * ip);
      partner[at(i)] = partner[at(j)] = -1;
    }
  };
  rec(0, Rational(1));
  return total;
}

Rational eta(const WickMonomial& m, const std::vector<Pair>& sub) {
  const auto free = m.free_points();
  std::vector<bool> used(free.size(), false);
  auto slot = [&](int point) {
    const auto it = std::find(free.begin(), free.end(), point);
    if (it == free.end()) throw std::invalid_argument("eta: point " + std::to_string(point) + " is not a free point");
    const auto k = static_cast<std::size_t>(it - free.begin());
    if (used[k]) throw std::invalid_argument("eta: point " + std::to_string(point) + " used twice");
    used[k] = true;
    return k;
  };
  Rational product = 1;
  for (const Pair& p : sub) {
    const auto a = slot(p.left), b = slot(p.right);
    product *= inner(m.labels[a], m.labels[b]);
  }
  return product;
}

WickExpression wick_from_moments(const WickMonomial& m) { return expand(m, WickExpression::Basis::MOMENT, true); }

WickExpression moments_from_wick(const WickMonomial& m) { return expand(m, WickExpression::Basis::WICK, false); }

WickExpression wick_from_moments(const WickExpression& e) {
  if (e.basis != WickExpression::Basis::WICK) throw std::invalid_argument("wick_from_moments expects a WICK-basis expression");
  WickExpression out;
  out.basis = WickExpression::Basis::MOMENT;
  for (const auto& [m, c] : e.terms)
    for (const auto& [m2, c2] : wick_from_moments(m).terms) out.add(m2, c * c2);
  return out;
}

WickExpression moments_from_wick(const WickExpression& e) {
  if (e.basis != WickExpression::Basis::MOMENT) throw std::invalid_argument("moments_from_wick expects a MOMENT-basis expression");
  WickExpression out;
  out.basis = WickExpression::Basis::WICK;
  for (const auto& [m, c] : e.terms)
    for (const auto& [m2, c2] : moments_from_wick(m).terms) out.add(m2, c * c2);
  return out;
}

Rational wick_inner_product(const Weight& w, const WickMonomial& m1, const WickMonomial& m2) {
  if (m1.free_count() != m2.free_count()) return Rational(0);
  return pairing_sum(w, join_reversed(m1, m2), true);
}

Rational moment_inner_product(const Weight& w, const WickMonomial& m1, const WickMonomial& m2) {
  return pairing_sum(w, join_reversed(m1, m2), false);
}

Rational moment_inner_product(const Weight& w, const WickExpression& e1, const WickExpression& e2) {
  if (e1.basis != WickExpression::Basis::MOMENT || e2.basis != WickExpression::Basis::MOMENT)
    throw std::invalid_argument("moment_inner_product expects MOMENT-basis expressions");
  Rational total = 0;
  for (const auto& [a, ca] : e1.terms)
    for (const auto& [b, cb] : e2.terms) total += ca * cb * moment_inner_product(w, a, b);
  return total;
}

MatrixQ gaussian_gram(const Weight& w, const std::vector<WickMonomial>& family) {
  const auto n = static_cast<Eigen::Index>(family.size());
  MatrixQ g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) g(i, j) = g(j, i) = wick_inner_product(w, family[at(i)], family[at(j)]);
  return g;
}

MatrixQ fock_gram(const Weight& w, const std::vector<CAPattern>& family) {
  const auto n = static_cast<Eigen::Index>(family.size());
  MatrixQ g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const CAPattern left = adjoint(family[at(i)]);
    for (Eigen::Index j = 0; j <= i; ++j) {
      CAPattern word = left;
      word.insert(word.end(), family[at(j)].begin(), family[at(j)].end());
      g(i, j) = g(j, i) = fock_moment(w, word);
    }
  }
  return g;
}

CAPattern psi_pattern(const WickMonomial& m, int first_color, int width) {
  const int dim = m.labels.empty() ? 0 : static_cast<int>(m.labels.front().size());
  if (first_color < 0) first_color = dim;
  if (first_color < dim) throw std::invalid_argument("psi_pattern: fresh colors overlap the label coordinates");
  const int needed = first_color + m.pair_count();
  if (width <= 0) width = needed;
  if (width < needed) throw std::invalid_argument("psi_pattern: width too small for the fresh colors");
  auto widen = [width](Label f) {
    f.resize(at(width), Rational(0));
    return f;
  };
  CAPattern p(at(m.points()));
  std::size_t k = 0;
  int color = first_color;
  for (int x = 0; x < m.points(); ++x) {
    const int y = m.partner[at(x)];
    if (y < 0) {
      p[at(x)] = {true, widen(m.labels[k++])};
    } else if (y > x) {
      Label g(at(width), Rational(0));
      g[at(color++)] = 1;
      p[at(x)] = {false, g};
      p[at(y)] = {true, g};
    }
  }
  return p;
}

MatrixQ psi_gram(const Weight& w, const std::vector<WickMonomial>& family) {
  int dim = 0;
  for (const auto& m : family)
    if (!m.labels.empty()) dim = static_cast<int>(m.labels.front().size());
  for (const auto& m : family)
    if (!m.labels.empty() && static_cast<int>(m.labels.front().size()) != dim)
      throw std::invalid_argument("psi_gram: label dimensions differ across the family");
  const auto n = static_cast<Eigen::Index>(family.size());
  MatrixQ g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& a = family[at(i)];
      const auto& b = family[at(j)];
      const int width = dim + a.pair_count() + b.pair_count();
      CAPattern word = adjoint(psi_pattern(a, dim, width));
      const CAPattern right = psi_pattern(b, dim + a.pair_count(), width);
      word.insert(word.end(), right.begin(), right.end());
      g(i, j) = g(j, i) = fock_moment(w, word);
    }
  return g;
}

}  // namespace gbm
