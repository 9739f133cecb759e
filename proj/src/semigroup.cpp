#include "gbm/semigroup.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

namespace gbm {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

bool is_permutation_of_n(const std::vector<int>& pi) {
  std::vector<bool> seen(pi.size(), false);
  for (int v : pi) {
    if (v < 1 || v > static_cast<int>(pi.size()) || seen[at(v - 1)]) return false;
    seen[at(v - 1)] = true;
  }
  return true;
}

}  // namespace

Diagram::Diagram(std::vector<int> partner, std::vector<int> left, std::vector<int> right)
    : partner_(std::move(partner)), left_(std::move(left)), right_(std::move(right)) {
  const int m = points();
  std::vector<int> role(at(m), 0);
  for (int i = 0; i < m; ++i) {
    const int j = partner_[at(i)];
    if (j == -1) continue;
    if (j < 0 || j >= m || j == i || partner_[at(j)] != i)
      throw std::invalid_argument("diagram: pairs do not form a matching");
    role[at(i)] = 1;
  }
  for (const auto* legs : {&left_, &right_})
    for (int p : *legs) {
      if (p < 0 || p >= m || role[at(p)] != 0) throw std::invalid_argument("diagram: leg positions clash");
      role[at(p)] = 2;
    }
  if (std::find(role.begin(), role.end(), 0) != role.end())
    throw std::invalid_argument("diagram: a point is neither paired nor a leg");
}

Diagram Diagram::from_partition(const PairPartition& v) { return Diagram(v.partners(), {}, {}); }
Diagram Diagram::left_hook() { return Diagram({-1}, {0}, {}); }
Diagram Diagram::right_hook() { return Diagram({-1}, {}, {0}); }
Diagram Diagram::pair() { return Diagram({1, 0}, {}, {}); }

PairPartition Diagram::to_partition() const {
  if (!closed()) throw std::invalid_argument("diagram has legs: " + to_string(*this));
  return PairPartition::from_partners(partner_);
}

std::size_t DiagramHash::operator()(const Diagram& d) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](int v) { h ^= static_cast<std::size_t>(v + 3) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (int v : d.partners()) mix(v);
  mix(-7);
  for (int v : d.left()) mix(v);
  mix(-11);
  for (int v : d.right()) mix(v);
  return h;
}

Diagram multiply(const Diagram& d1, const Diagram& d2) {
  const int m1 = d1.points();
  const int m = m1 + d2.points();
  std::vector<int> partner(at(m));
  for (int i = 0; i < m1; ++i) partner[at(i)] = d1.partners()[at(i)];
  for (int i = 0; i < d2.points(); ++i) {
    const int j = d2.partners()[at(i)];
    partner[at(m1 + i)] = j < 0 ? -1 : m1 + j;
  }
  const int k = std::min(d1.right_legs(), d2.left_legs());
  for (int i = 0; i < k; ++i) {
    const int a = d1.right()[at(i)];
    const int b = m1 + d2.left()[at(i)];
    partner[at(a)] = b;
    partner[at(b)] = a;
  }
  std::vector<int> left = d1.left();
  for (int i = k; i < d2.left_legs(); ++i) left.push_back(m1 + d2.left()[at(i)]);
  std::vector<int> right;
  for (int p : d2.right()) right.push_back(m1 + p);
  for (int i = k; i < d1.right_legs(); ++i) right.push_back(d1.right()[at(i)]);
  return Diagram(std::move(partner), std::move(left), std::move(right));
}

Diagram involution(const Diagram& d) {
  const int m = d.points();
  auto mirror = [m](int x) { return m - 1 - x; };
  std::vector<int> partner(at(m));
  for (int i = 0; i < m; ++i) {
    const int j = d.partners()[at(i)];
    partner[at(mirror(i))] = j < 0 ? -1 : mirror(j);
  }
  std::vector<int> left, right;
  for (int p : d.right()) left.push_back(mirror(p));
  for (int p : d.left()) right.push_back(mirror(p));
  return Diagram(std::move(partner), std::move(left), std::move(right));
}

Diagram underline(const Diagram& d) {
  const int m = d.points() + 2;
  std::vector<int> partner(at(m));
  partner[0] = m - 1;
  partner[at(m - 1)] = 0;
  for (int i = 0; i < d.points(); ++i) {
    const int j = d.partners()[at(i)];
    partner[at(i + 1)] = j < 0 ? -1 : j + 1;
  }
  std::vector<int> left, right;
  for (int p : d.left()) left.push_back(p + 1);
  for (int p : d.right()) right.push_back(p + 1);
  return Diagram(std::move(partner), std::move(left), std::move(right));
}

Diagram permute_legs(const std::vector<int>& pi, const Diagram& d) {
  if (static_cast<int>(pi.size()) != d.left_legs())
    throw std::invalid_argument("permute_legs: permutation size " + std::to_string(pi.size()) +
                                " does not match " + std::to_string(d.left_legs()) + " left legs");
  if (!is_permutation_of_n(pi)) throw std::invalid_argument("permute_legs: not a permutation");
  std::vector<int> left(d.left().size());
  for (std::size_t i = 0; i < pi.size(); ++i) left[at(pi[i] - 1)] = d.left()[i];
  return Diagram(d.partners(), std::move(left), d.right());
}

std::vector<Diagram> enumerate_diagrams(int n_left, int n_right, int max_pairs) {
  if (n_left < 0 || n_right < 0 || max_pairs < 0)
    throw std::invalid_argument("enumerate_diagrams: arguments must be non-negative");
  std::vector<Diagram> out;
  for (int p = 0; p <= max_pairs; ++p) {
    const int m = 2 * p + n_left + n_right;
    std::vector<int> partner(at(m), -2);
    std::vector<int> left, right;

    std::function<void(int)> pairs = [&](int first) {
      while (first < m && partner[at(first)] != -2) ++first;
      if (first == m) {
        out.emplace_back(partner, left, right);
        return;
      }
      for (int j = first + 1; j < m; ++j) {
        if (partner[at(j)] != -2) continue;
        partner[at(first)] = j;
        partner[at(j)] = first;
        pairs(first + 1);
        partner[at(first)] = partner[at(j)] = -2;
      }
    };
    std::function<void()> rights = [&] {
      if (static_cast<int>(right.size()) == n_right) {
        pairs(0);
        return;
      }
      for (int x = 0; x < m; ++x) {
        if (partner[at(x)] != -2) continue;
        partner[at(x)] = -1;
        right.push_back(x);
        rights();
        right.pop_back();
        partner[at(x)] = -2;
      }
    };
    std::function<void()> lefts = [&] {
      if (static_cast<int>(left.size()) == n_left) {
        rights();
        return;
      }
      for (int x = 0; x < m; ++x) {
        if (partner[at(x)] != -2) continue;
        partner[at(x)] = -1;
        left.push_back(x);
        lefts();
        left.pop_back();
        partner[at(x)] = -2;
      }
    };
    lefts();
  }
  return out;
}

std::size_t count_diagrams(int n_left, int n_right, int max_pairs) {
  if (n_left < 0 || n_right < 0 || max_pairs < 0)
    throw std::invalid_argument("count_diagrams: arguments must be non-negative");
  std::size_t total = 0;
  for (int p = 0; p <= max_pairs; ++p) {
    // m! / (2^p p!)
    std::size_t c = 1;
    const int m = 2 * p + n_left + n_right;
    for (int i = 2; i <= m; ++i) c *= static_cast<std::size_t>(i);
    for (int i = 1; i <= p; ++i) c /= static_cast<std::size_t>(2 * i);
    total += c;
  }
  return total;
}

GeneratorWord standard_form(const PairPartition& v) {
  GeneratorWord reversed;
  std::vector<int> open;  // open[r] = point whose leg currently has rank r+1
  for (int x = v.points() - 1; x >= 0; --x) {
    const int y = v.partners()[at(x)];
    if (y > x) {
      const int k = static_cast<int>(std::find(open.begin(), open.end(), y) - open.begin()) + 1;
      if (k != 1) {
        std::vector<int> cycle(at(k));
        for (int i = 1; i < k; ++i) cycle[at(i - 1)] = i + 1;
        cycle[at(k - 1)] = 1;
        cycle.resize(open.size());
        for (std::size_t i = at(k); i < open.size(); ++i) cycle[i] = static_cast<int>(i) + 1;
        reversed.push_back({GeneratorToken::Kind::PERM, cycle});
        open.erase(open.begin() + (k - 1));
        open.insert(open.begin(), y);
      }
      reversed.push_back({GeneratorToken::Kind::COHOOK, {}});
      open.erase(open.begin());
    } else {
      reversed.push_back({GeneratorToken::Kind::HOOK, {}});
      open.insert(open.begin(), x);
    }
  }
  return GeneratorWord(reversed.rbegin(), reversed.rend());
}

Diagram evaluate_word(const GeneratorWord& word) {
  Diagram d;
  const Diagram hook = Diagram::left_hook();
  const Diagram cohook = Diagram::right_hook();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    switch (it->kind) {
      case GeneratorToken::Kind::HOOK: d = multiply(hook, d); break;
      case GeneratorToken::Kind::COHOOK: d = multiply(cohook, d); break;
      case GeneratorToken::Kind::PERM: d = permute_legs(it->perm, d); break;
    }
  }
  return d;
}

std::string to_string(const GeneratorWord& word) {
  std::string s;
  for (const auto& t : word) {
    if (!s.empty()) s += ' ';
    switch (t.kind) {
      case GeneratorToken::Kind::HOOK: s += "HOOK"; break;
      case GeneratorToken::Kind::COHOOK: s += "COHOOK"; break;
      case GeneratorToken::Kind::PERM: {
        s += "PERM[";
        for (std::size_t i = 0; i < t.perm.size(); ++i) s += (i ? "," : "") + std::to_string(t.perm[i]);
        s += "]";
        break;
      }
    }
  }
  return s;
}

std::string to_string(const Diagram& d) {
  std::string s = "BP{" + std::to_string(d.points()) + "; pairs=";
  for (int i = 0; i < d.points(); ++i) {
    const int j = d.partners()[at(i)];
    if (j > i) s += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  }
  auto legs = [](const std::vector<int>& v) {
    std::string t = "[";
    for (std::size_t i = 0; i < v.size(); ++i) t += (i ? "," : "") + std::to_string(v[i] + 1);
    return t + "]";
  };
  return s + "; L=" + legs(d.left()) + "; R=" + legs(d.right()) + "}";
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(std::string_view tok) {
    ws();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  int integer() {
    ws();
    std::size_t j = i_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_ || j - i_ > 6) fail("expected a number");
    const int v = std::stoi(std::string(s_.substr(i_, j - i_)));
    i_ = j;
    return v;
  }
  std::vector<int> list() {
    expect("[");
    std::vector<int> v;
    if (accept("]")) return v;
    do v.push_back(integer() - 1);
    while (accept(","));
    expect("]");
    return v;
  }
  bool done() {
    ws();
    return i_ == s_.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse diagram '" + std::string(s_) + "': " + what);
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Diagram parse_diagram(std::string_view text) {
  Reader r(text);
  r.expect("BP{");
  const int m = r.integer();
  r.expect(";");
  r.expect("pairs=");
  std::vector<int> partner(at(m), -1);
  while (r.accept("(")) {
    const int a = r.integer() - 1;
    r.expect(",");
    const int b = r.integer() - 1;
    r.expect(")");
    if (a < 0 || b >= m || a >= b || partner[at(a)] != -1 || partner[at(b)] != -1) r.fail("bad pair");
    partner[at(a)] = b;
    partner[at(b)] = a;
  }
  r.expect(";");
  r.expect("L=");
  auto left = r.list();
  r.expect(";");
  r.expect("R=");
  auto right = r.list();
  r.expect("}");
  if (!r.done()) r.fail("trailing characters");
  try {
    return Diagram(std::move(partner), std::move(left), std::move(right));
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
}

}  // namespace gbm
