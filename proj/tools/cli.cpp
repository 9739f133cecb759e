#include "cli.hpp"

#include "gbm/fock.hpp"
#include "gbm/gns.hpp"
#include "gbm/kernel.hpp"
#include "gbm/wick.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace gbm::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Thrown for inputs the tool refuses (bad literals, caps exceeded).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int max_points() {
  const char* env = std::getenv("BP2_MAX_POINTS");
  if (!env || !*env) return 12;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end || v <= 0 || v > 64) throw UsageError(std::string("BP2_MAX_POINTS must be a positive integer, got '") + env + "'");
  return static_cast<int>(v);
}

void require_points(int points, const std::string& what) {
  const int cap = max_points();
  if (points > cap)
    throw UsageError(what + " needs " + std::to_string(points) + " points, above BP2_MAX_POINTS=" + std::to_string(cap));
}

std::string fmt_double(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

Json rational_array(const VectorQ& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_string(v(i)));
  return a;
}

Json rational_matrix(const MatrixQ& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(rational_array(m.row(i).transpose()));
  return a;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + csv_quote(cells[i]);
  return line + "\n";
}

/// Flat key,value CSV for scalar members of a JSON object.
std::string csv_of(const Json& j) {
  std::string s = csv_row({"key", "value"});
  for (const auto& [k, v] : j.items()) s += csv_row({k, v.is_string() ? v.get<std::string>() : v.dump()});
  return s;
}

struct Output {
  std::ostream& out;
  std::string format;  // text, json or csv; empty picks the command default

  std::string pick(const std::string& fallback) const { return format.empty() ? fallback : format; }
  void json(const Json& j) const { out << j.dump(2) << "\n"; }
};

std::string expression_text(const WickExpression& e) {
  const char* sym = e.basis == WickExpression::Basis::MOMENT ? "M" : "Psi";
  std::string s;
  for (const auto& [m, c] : e.terms) s += to_string(c) + " " + sym + "[" + to_string(m) + "]\n";
  return s.empty() ? "0\n" : s;
}

Json expression_json(const WickExpression& e) {
  Json terms = Json::array();
  for (const auto& [m, c] : e.terms) terms.push_back({{"monomial", to_string(m)}, {"coefficient", to_string(c)}});
  return {{"basis", e.basis == WickExpression::Basis::MOMENT ? "moment" : "wick"}, {"terms", terms}};
}

Json diagram_list(const std::vector<Diagram>& ds) {
  Json a = Json::array();
  for (const auto& d : ds) a.push_back(to_string(d));
  return a;
}

// ---------------------------------------------------------------- commands

int cmd_enumerate(const Output& o, int points, int legs, int right, int max_pairs, bool diagrams) {
  const std::string f = o.pick("text");
  if (diagrams) {
    if (legs < 0 || right < 0 || max_pairs < 0) throw UsageError("leg and pair counts must be >= 0");
    require_points(legs + right + 2 * max_pairs, "diagram enumeration");
    const auto ds = enumerate_diagrams(legs, right, max_pairs);
    if (f == "json") {
      o.json({{"left_legs", legs}, {"right_legs", right}, {"max_pairs", max_pairs}, {"count", ds.size()}, {"diagrams", diagram_list(ds)}});
    } else if (f == "csv") {
      o.out << csv_row({"index", "diagram", "pairs"});
      for (std::size_t i = 0; i < ds.size(); ++i) o.out << csv_row({std::to_string(i), to_string(ds[i]), std::to_string(ds[i].pair_count())});
    } else {
      for (const auto& d : ds) o.out << to_string(d) << "\n";
    }
    return kOk;
  }
  if (points < 0) throw UsageError("enumerate needs a point count (or --legs/--right for diagrams)");
  require_points(points, "enumeration");
  const auto all = enumerate(points);
  if (f == "json") {
    Json a = Json::array();
    for (const auto& v : all) {
      const auto s = statistics(v);
      a.push_back({{"partition", to_string(v)}, {"crossings", s.crossings}, {"blocks", s.blocks}});
    }
    o.json({{"points", points}, {"count", all.size()}, {"partitions", a}});
  } else if (f == "csv") {
    o.out << csv_row({"partition", "pairs", "crossings", "blocks"});
    for (const auto& v : all) {
      const auto s = statistics(v);
      o.out << csv_row({to_string(v), std::to_string(s.pairs), std::to_string(s.crossings), std::to_string(s.blocks)});
    }
  } else {
    for (const auto& v : all) o.out << to_string(v) << "\n";
  }
  return kOk;
}

int cmd_stats(const Output& o, const std::string& literal) {
  const auto v = parse_partition(literal);
  require_points(v.points(), "stats");
  const auto s = statistics(v);
  const std::string f = o.pick("text");
  if (f == "json") {
    Json blocks = Json::array();
    const auto pairs = v.pairs();
    for (const auto& b : gbm::blocks(v).blocks) {
      std::string lit;
      for (int i : b) lit += "(" + std::to_string(pairs[static_cast<std::size_t>(i)].left) + "," +
                             std::to_string(pairs[static_cast<std::size_t>(i)].right) + ")";
      blocks.push_back(lit);
    }
    o.json({{"partition", to_string(v)}, {"pairs", s.pairs}, {"crossings", s.crossings}, {"blocks", s.blocks}, {"block_list", blocks}});
  } else if (f == "csv") {
    o.out << csv_row({"partition", "pairs", "crossings", "blocks"});
    o.out << csv_row({to_string(v), std::to_string(s.pairs), std::to_string(s.crossings), std::to_string(s.blocks)});
  } else {
    o.out << "crossings=" << s.crossings << " blocks=" << s.blocks << "\n";
  }
  return kOk;
}

int cmd_eval(const Output& o, const std::string& weight, const std::string& literal) {
  const Weight w = parse_weight(weight);
  Rational value;
  std::string canonical;
  if (literal.rfind("BP", 0) == 0) {
    const auto d = parse_diagram(literal);
    require_points(d.points(), "eval");
    value = evaluate_hat(w, d);
    canonical = to_string(d);
  } else {
    const auto v = parse_partition(literal);
    require_points(v.points(), "eval");
    value = evaluate(w, v);
    canonical = to_string(v);
  }
  const Json j{{"weight", w.name()}, {"input", canonical}, {"value", to_string(value)}};
  const std::string f = o.pick("text");
  if (f == "json") o.json(j);
  else if (f == "csv") o.out << csv_row({"weight", "input", "value"}) << csv_row({w.name(), canonical, to_string(value)});
  else o.out << to_string(value) << "\n";
  return kOk;
}

int cmd_moment(const Output& o, const std::string& weight, const std::string& word, const std::string& pattern, int dim) {
  const Weight w = parse_weight(weight);
  if (word.empty() == pattern.empty()) throw UsageError("moment needs exactly one of --word or --pattern");
  Rational value;
  std::string kind, canonical;
  if (!word.empty()) {
    const auto labels = parse_word(word, dim);
    require_points(static_cast<int>(labels.size()), "moment");
    value = gaussian_moment(w, labels);
    kind = "gaussian";
    for (const auto& l : labels) canonical += (canonical.empty() ? "w:" : " w:") + to_string(l);
  } else {
    const auto p = parse_pattern(pattern, dim);
    require_points(static_cast<int>(p.size()), "moment");
    value = fock_moment(w, p);
    kind = "fock";
    canonical = to_string(p);
  }
  const std::string f = o.pick("text");
  if (f == "json") o.json({{"weight", w.name()}, {"kind", kind}, {"word", canonical}, {"value", to_string(value)}});
  else if (f == "csv") o.out << csv_row({"weight", "kind", "word", "value"}) << csv_row({w.name(), kind, canonical, to_string(value)});
  else o.out << to_string(value) << "\n";
  return kOk;
}

int cmd_wick(const Output& o, const std::string& weight, const std::string& transform, bool inverse,
             const std::vector<std::string>& inner_pair, bool moments, int dim) {
  const std::string f = o.pick("text");
  if (!transform.empty()) {
    const auto m = parse_monomial(transform, dim);
    require_points(m.points(), "wick");
    const auto e = inverse ? moments_from_wick(m) : wick_from_moments(m);
    Json j{{"input", to_string(m)}, {"direction", inverse ? "moment-to-wick" : "wick-to-moment"}};
    j.update(expression_json(e));
    if (f == "json") {
      o.json(j);
    } else if (f == "csv") {
      o.out << csv_row({"monomial", "coefficient"});
      for (const auto& [mm, c] : e.terms) o.out << csv_row({to_string(mm), to_string(c)});
    } else {
      o.out << expression_text(e);
    }
    return kOk;
  }
  if (inner_pair.size() != 2) throw UsageError("wick needs --transform MONOMIAL or --inner MONOMIAL MONOMIAL");
  const Weight w = parse_weight(weight);
  const auto a = parse_monomial(inner_pair[0], dim), b = parse_monomial(inner_pair[1], dim);
  require_points(a.points() + b.points(), "wick inner product");
  const Rational v = moments ? moment_inner_product(w, a, b) : wick_inner_product(w, a, b);
  const std::string kind = moments ? "moment" : "wick";
  if (f == "json")
    o.json({{"weight", w.name()}, {"kind", kind}, {"left", to_string(a)}, {"right", to_string(b)}, {"value", to_string(v)}});
  else if (f == "csv")
    o.out << csv_row({"weight", "kind", "left", "right", "value"}) << csv_row({w.name(), kind, to_string(a), to_string(b), to_string(v)});
  else
    o.out << to_string(v) << "\n";
  return kOk;
}

GramModel sector(const std::string& weight, int legs, int max_pairs) {
  if (legs < 0 || max_pairs < 0) throw UsageError("--legs and --max-pairs must be >= 0");
  require_points(legs + 2 * max_pairs, "sector");
  return gram_model(parse_weight(weight), legs, max_pairs);
}

Json psd_field(const GramModel& m) {
  if (m.positive()) return true;
  return rational_array(m.certificate.witness);
}

int cmd_gram(const Output& o, const std::string& weight, int legs, int max_pairs) {
  const auto m = sector(weight, legs, max_pairs);
  const std::string f = o.pick("json");
  if (f == "json") {
    o.json({{"weight", m.weight.name()},
            {"sector", legs},
            {"truncation", {{"max_pairs", max_pairs}}},
            {"basis", diagram_list(m.basis)},
            {"gram", rational_matrix(m.gram)},
            {"gram_rank", m.rank()},
            {"psd", psd_field(m)}});
  } else if (f == "csv") {
    std::vector<std::string> head{"diagram"};
    for (const auto& d : m.basis) head.push_back(to_string(d));
    o.out << csv_row(head);
    for (Eigen::Index i = 0; i < m.gram.rows(); ++i) {
      std::vector<std::string> row{to_string(m.basis[static_cast<std::size_t>(i)])};
      for (Eigen::Index j = 0; j < m.gram.cols(); ++j) row.push_back(to_string(m.gram(i, j)));
      o.out << csv_row(row);
    }
  } else {
    o.out << "weight=" << m.weight.name() << " sector=" << legs << " max_pairs=" << max_pairs << " basis=" << m.basis.size()
          << " rank=" << m.rank() << (m.positive() ? " PSD" : " NOT-POSITIVE") << "\n";
    for (std::size_t i = 0; i < m.basis.size(); ++i) o.out << i << ": " << to_string(m.basis[i]) << "\n";
    for (Eigen::Index i = 0; i < m.gram.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.gram.cols(); ++j) o.out << (j ? " " : "") << to_string(m.gram(i, j));
      o.out << "\n";
    }
  }
  return m.positive() ? kOk : kNegative;
}

int cmd_psd(const Output& o, const std::string& weight, int legs, int max_pairs, bool use_float, double tol) {
  const auto m = sector(weight, legs, max_pairs);
  Json j{{"weight", m.weight.name()}, {"sector", legs}, {"truncation", {{"max_pairs", max_pairs}}},
         {"basis_size", m.basis.size()}, {"mode", use_float ? "float" : "exact"}};
  bool psd = false;
  std::string text;
  if (use_float) {
    if (!(tol > 0)) throw UsageError("--tol must be > 0 in float mode");
    const Matrix<double> g = m.gram.unaryExpr([](const Rational& x) { return to_double(x); });
    const auto c = ldlt_psd_certificate(g, tol);
    psd = c.psd;
    j["tolerance"] = tol;
    j["gram_rank"] = c.rank;
    if (psd) {
      j["psd"] = true;
    } else {
      Json w = Json::array();
      for (Eigen::Index i = 0; i < c.witness.size(); ++i) w.push_back(c.witness(i));
      j["psd"] = w;
      j["witness_value"] = c.witness.dot(g * c.witness);
    }
    Json piv = Json::array();
    for (Eigen::Index i = 0; i < c.pivots.size(); ++i) piv.push_back(c.pivots(i));
    j["pivots"] = piv;
    text = psd ? "PSD rank=" + std::to_string(c.rank) : "NOT-POSITIVE witness=" + j["psd"].dump();
  } else {
    const auto& c = m.certificate;
    psd = c.psd;
    j["gram_rank"] = c.rank;
    j["psd"] = psd_field(m);
    if (!psd) {
      Rational v = 0;
      for (Eigen::Index a = 0; a < m.gram.rows(); ++a)
        for (Eigen::Index b = 0; b < m.gram.cols(); ++b) v += c.witness(a) * m.gram(a, b) * c.witness(b);
      j["witness_value"] = to_string(v);
    }
    j["pivots"] = rational_array(c.pivots);
    std::vector<Diagram> sel;
    for (auto i : c.selected) sel.push_back(m.basis[static_cast<std::size_t>(i)]);
    if (psd) sel.resize(static_cast<std::size_t>(c.rank));
    j["selected"] = diagram_list(sel);
    text = psd ? "PSD rank=" + std::to_string(c.rank)
               : "NOT-POSITIVE witness=" + j["psd"].dump() + " value=" + j["witness_value"].get<std::string>();
  }
  const std::string f = o.pick("json");
  if (f == "json") o.json(j);
  else if (f == "csv") o.out << csv_of(j);
  else o.out << text << "\n";
  return psd ? kOk : kNegative;
}

int cmd_theta(const Output& o, const std::string& weight, int levels, int max_pairs, double tol) {
  if (levels < 0 || max_pairs < 0) throw UsageError("--levels and --max-pairs must be >= 0");
  if (!(tol > 0)) throw UsageError("--tol must be > 0");
  require_points(levels + 2 * max_pairs, "theta");
  const Weight w = parse_weight(weight);
  Json table = Json::array();
  ThetaReport last;
  for (int p = 0; p <= max_pairs; ++p) {
    std::vector<GramModel> sectors;
    for (int n = 0; n <= levels; ++n) sectors.push_back(gram_model(w, n, p));
    last = theta_matrix(sectors, tol);
    table.push_back({{"max_pairs", p}, {"dimension", last.spectrum.size()}, {"norm_perp", last.norm_perp},
                     {"eig1_multiplicity", last.eig1_multiplicity}});
  }
  Json spectrum = Json::array();
  for (double& e : last.spectrum)
    if (std::abs(e) < tol) e = 0;
  for (double e : last.spectrum) spectrum.push_back(e);
  const Json j{{"weight", w.name()},
               {"truncation", {{"levels", levels}, {"max_pairs", max_pairs}}},
               {"theta",
                {{"spectrum", spectrum}, {"norm_perp", last.norm_perp}, {"eig1_multiplicity", last.eig1_multiplicity},
                 {"symmetric", last.symmetric}}},
               {"convergence", table}};
  const std::string f = o.pick("json");
  if (f == "json") {
    o.json(j);
  } else if (f == "csv") {
    o.out << csv_row({"max_pairs", "dimension", "norm_perp", "eig1_multiplicity"});
    for (const auto& r : table)
      o.out << csv_row({r["max_pairs"].dump(), r["dimension"].dump(), fmt_double(r["norm_perp"].get<double>()), r["eig1_multiplicity"].dump()});
  } else {
    o.out << "weight=" << w.name() << " levels=" << levels << " max_pairs=" << max_pairs << "\n";
    for (const auto& r : table)
      o.out << "max_pairs=" << r["max_pairs"].dump() << " dimension=" << r["dimension"].dump()
            << " norm_perp=" << fmt_double(r["norm_perp"].get<double>()) << " eig1_multiplicity=" << r["eig1_multiplicity"].dump() << "\n";
    o.out << "spectrum:";
    for (double e : last.spectrum) o.out << " " << fmt_double(e);
    o.out << "\n";
  }
  return kOk;
}

int cmd_standard_form(const Output& o, const std::string& literal, const std::string& weight) {
  const auto v = parse_partition(literal);
  require_points(v.points(), "standard-form");
  const auto word = standard_form(v);
  const bool round_trip = evaluate_word(word) == Diagram::from_partition(v);
  Json j{{"partition", to_string(v)}, {"word", to_string(word)}, {"round_trip", round_trip}};
  bool ok = round_trip;
  std::string extra;
  if (!weight.empty()) {
    const Weight w = parse_weight(weight);
    const Rational value = word_expectation(word_sectors(w, v.size()), word);
    const Rational t = evaluate(w, v);
    j["weight"] = w.name();
    j["operator_value"] = to_string(value);
    j["t"] = to_string(t);
    ok = ok && value == t;
    extra = "operator_value=" + to_string(value) + " t=" + to_string(t) + "\n";
  }
  const std::string f = o.pick("text");
  if (f == "json") o.json(j);
  else if (f == "csv") o.out << csv_of(j);
  else o.out << to_string(word) << "\n" << extra;
  return ok ? kOk : kNegative;
}

struct FockOptions {
  std::string weight = "q:1/2";
  int dim = 2;
  int levels = 3;
  int length = 6;
  std::vector<std::string> patterns;
  bool bounds = false;
  int samples = 100;
  unsigned seed = 1;
};

Json bounds_json(const BoundsReport& r) {
  Json a = Json::array();
  for (const auto& l : r.levels)
    a.push_back({{"level", l.level}, {"create_ratio", to_string(l.create_ratio)}, {"annihilate_ratio", to_string(l.annihilate_ratio)},
                 {"random_create_ratio", l.random_create_ratio}, {"random_annihilate_ratio", l.random_annihilate_ratio}});
  return a;
}

int cmd_fock_sim(const Output& o, const FockOptions& opt) {
  if (opt.samples < 0) throw UsageError("--samples must be >= 0");
  require_points(opt.length, "fock-sim");
  const Weight w = parse_weight(opt.weight);
  const auto model = fock_model(w, opt.dim, opt.levels, opt.length);
  Json ranks = Json::array();
  for (const auto& l : model.levels) ranks.push_back(l.rank());
  Json values = Json::array();
  bool ok = true;
  std::string text;
  for (const auto& s : opt.patterns) {
    const auto p = parse_pattern(s, opt.dim);
    if (static_cast<int>(p.size()) > opt.length)
      throw UsageError("monomial '" + to_string(p) + "' is longer than --length " + std::to_string(opt.length));
    const Rational a = model.vacuum_expectation(p);
    const Rational b = formal_vacuum_expectation(w, p);
    const Rational c = fock_moment(w, p);
    ok = ok && a == b && b == c;
    values.push_back({{"pattern", to_string(p)}, {"matrix", to_string(a)}, {"formal", to_string(b)}, {"pairing_sum", to_string(c)}});
    text += to_string(p) + " = " + to_string(a) + (a == b && b == c ? "" : " (MISMATCH formal=" + to_string(b) + " pairing_sum=" + to_string(c) + ")") + "\n";
  }
  Json j{{"weight", w.name()}, {"dim", opt.dim}, {"levels", opt.levels}, {"length", opt.length}, {"ranks", ranks}, {"values", values}};
  if (opt.bounds) {
    const auto r = creation_bounds(model, opt.samples, opt.seed);
    j["bounds"] = {{"holds", r.holds()}, {"levels", bounds_json(r)}};
    ok = ok && r.holds();
    for (const auto& l : r.levels)
      text += "level " + std::to_string(l.level) + ": create " + to_string(l.create_ratio) + " annihilate " +
              to_string(l.annihilate_ratio) + " random " + fmt_double(l.random_create_ratio) + "/" + fmt_double(l.random_annihilate_ratio) + "\n";
    text += r.holds() ? "bounds hold\n" : "bounds FAIL\n";
  }
  const std::string f = o.pick("text");
  if (f == "json") {
    o.json(j);
  } else if (f == "csv") {
    o.out << csv_row({"pattern", "matrix", "formal", "pairing_sum"});
    for (const auto& v : values)
      o.out << csv_row({v["pattern"].get<std::string>(), v["matrix"].get<std::string>(), v["formal"].get<std::string>(),
                        v["pairing_sum"].get<std::string>()});
  } else {
    o.out << "weight=" << w.name() << " ranks=" << ranks.dump() << "\n" << text;
  }
  return ok ? kOk : kNegative;
}

struct CheckOptions {
  std::string suite;
  std::string weight = "q:1/2";
  int points = 8;
  int legs = 1;
  int max_pairs = -1;  // suite-dependent default
  int dim = 2;
  int levels = 2;
  int length = 4;
};

int cmd_check(const Output& o, CheckOptions c) {
  if (c.max_pairs < 0) c.max_pairs = c.suite == "theta-identity" ? 1 : 2;
  const Weight w = parse_weight(c.weight);
  Json checks = Json::object();
  Json info = Json::object();
  const auto sizes = [&](int pts) { require_points(pts, "check " + c.suite); };
  if (c.suite == "multiplicative") {
    sizes(c.points);
    const auto bad = is_multiplicative_upto(w, c.points);
    checks["multiplicative"] = bad ? Json{{"v1", to_string(bad->v1)}, {"v2", to_string(bad->v2)}, {"k", bad->k},
                                          {"whole", to_string(bad->whole)}, {"product", to_string(bad->product)}}
                                   : Json("pass");
  } else if (c.suite == "rotation") {
    sizes(c.points);
    const auto bad = is_rotation_invariant_upto(w, c.points);
    checks["rotation"] = bad ? Json{{"partition", to_string(bad->v)}, {"rotated", to_string(rotate(bad->v))},
                                    {"value", to_string(bad->value)}, {"rotated_value", to_string(bad->rotated)}}
                             : Json("pass");
  } else if (c.suite == "j-isometry") {
    sizes(c.legs + 1 + 2 * c.max_pairs);
    const auto bad = j_isometry_defect(w, c.legs, c.max_pairs);
    checks["j_isometry"] = bad ? Json{{"d1", to_string(bad->d1)}, {"d2", to_string(bad->d2)}, {"after", to_string(bad->after)},
                                      {"before", to_string(bad->before)}}
                               : Json("pass");
  } else if (c.suite == "theta-identity") {
    sizes(2 * c.legs + 4 * c.max_pairs + 4);
    const auto r = theta_quadratic_identity(w, c.legs, c.max_pairs);
    auto case_json = [](const ThetaCase& t) {
      return Json{{"d1", to_string(t.d1)}, {"d2", to_string(t.d2)}, {"lhs", to_string(t.lhs)}, {"rhs", to_string(t.rhs)}};
    };
    checks["quadratic_identity"] = r.failure ? case_json(*r.failure) : Json("pass");
    checks["counting_identities"] = r.counting_failure ? case_json(*r.counting_failure) : Json("pass");
    info["factor"] = to_string(r.factor);
    info["cases"] = r.cases;
    info["factor_q_times_minus_one_to_n"] = r.literal_failure ? case_json(*r.literal_failure) : Json("holds");
  } else if (c.suite == "positivity") {
    for (int n = 0; n <= c.legs; ++n) {
      sizes(n + 2 * c.max_pairs);
      const auto m = gram_model(w, n, c.max_pairs);
      checks["sector_" + std::to_string(n)] = m.positive() ? Json("pass") : Json{{"witness", rational_array(m.certificate.witness)}};
    }
  } else if (c.suite == "standard-form") {
    sizes(c.points);
    Json fails = Json::array();
    std::size_t count = 0;
    for (int r = 1; 2 * r <= c.points; ++r) {
      const auto sectors = word_sectors(w, r);
      for (const auto& v : enumerate(2 * r)) {
        ++count;
        const auto word = standard_form(v);
        const bool trip = evaluate_word(word) == Diagram::from_partition(v);
        const Rational value = word_expectation(sectors, word);
        if (!trip || value != w(v) || fails.empty())
          if (!trip || value != w(v))
            fails.push_back({{"partition", to_string(v)}, {"word", to_string(word)}, {"operator_value", to_string(value)}, {"t", to_string(w(v))}});
      }
    }
    checks["standard_form"] = fails.empty() ? Json("pass") : fails.front();
    info["partitions"] = count;
  } else if (c.suite == "bounds") {
    sizes(c.length);
    const auto model = fock_model(w, c.dim, c.levels, c.length);
    const auto r = creation_bounds(model);
    checks["bounds"] = r.holds() ? Json("pass") : Json{{"levels", bounds_json(r)}};
    info["levels"] = bounds_json(r);
  } else {
    throw UsageError("unknown suite '" + c.suite + "'");
  }
  bool ok = true;
  for (const auto& [k, v] : checks.items()) ok = ok && v.is_string();
  Json j{{"suite", c.suite}, {"weight", w.name()}, {"checks", checks}};
  if (!info.empty()) j["info"] = info;
  const std::string f = o.pick("text");
  if (f == "json") {
    o.json(j);
  } else if (f == "csv") {
    o.out << csv_row({"check", "result"});
    for (const auto& [k, v] : checks.items()) o.out << csv_row({k, v.is_string() ? v.get<std::string>() : v.dump()});
  } else {
    for (const auto& [k, v] : checks.items()) o.out << (v.is_string() ? "PASS " : "FAIL ") << k << (v.is_string() ? "" : " " + v.dump()) << "\n";
    for (const auto& [k, v] : info.items()) o.out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  return ok ? kOk : kNegative;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pair partitions, broken pair partitions and deformed Gaussian/Fock states with exact arithmetic."};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format;
  app.add_option("--format", format, "Output mode (default depends on the command)")->check(CLI::IsMember({"text", "json", "csv"}));

  int points = -1, legs = 0, right = 0, max_pairs = 0;
  auto* en = app.add_subcommand("enumerate", "List pair partitions of N points, or diagrams with --legs/--right/--max-pairs");
  en->add_option("points", points, "Number of points");
  auto* en_legs = en->add_option("--legs", legs, "Left legs (diagram mode)");
  auto* en_right = en->add_option("--right", right, "Right legs (diagram mode)");
  en->add_option("--max-pairs", max_pairs, "Maximal pair count (diagram mode)");

  std::string literal;
  auto* st = app.add_subcommand("stats", "Crossings and blocks of a pair partition");
  st->add_option("partition", literal, "Partition literal, e.g. (1,3)(2,4)")->required();

  std::string weight = "q:1/2";
  auto* ev = app.add_subcommand("eval", "t(V) of a partition, or t-hat of a BP{...} diagram");
  ev->add_option("--weight", weight, "bosonic | free | fermionic | q:<r> | qcr:<r>");
  ev->add_option("literal", literal, "Partition or diagram literal")->required();

  std::string word, pattern;
  int dim = 0;
  auto* mo = app.add_subcommand("moment", "Gaussian moment of a field word or Fock moment of a pattern");
  mo->add_option("--weight", weight, "Weight name, e.g. q:1/2");
  mo->add_option("--word", word, "Field word, e.g. \"w:e1 w:e1\"");
  mo->add_option("--pattern", pattern, "Creation/annihilation word, e.g. \"a:e1 c:e1\"");
  mo->add_option("--dim", dim, "Label dimension (default: inferred)");

  std::string transform;
  bool inverse = false, moments = false;
  std::vector<std::string> inner_pair;
  auto* wi = app.add_subcommand("wick", "Wick/moment transforms and inner products");
  wi->add_option("--weight", weight, "Weight name, e.g. q:1/2");
  wi->add_option("--transform", transform, "Monomial, e.g. \"(1,3) 2:e1 4:e2\"");
  wi->add_flag("--inverse", inverse, "Expand a moment monomial in Wick products");
  wi->add_option("--inner", inner_pair, "Two monomials")->expected(2);
  wi->add_flag("--moments", moments, "Inner product of moment monomials instead of Wick products");
  wi->add_option("--dim", dim, "Label dimension (default: inferred)");

  auto* gr = app.add_subcommand("gram", "Gram matrix of a sector");
  gr->add_option("--weight", weight, "Weight name, e.g. q:1/2");
  gr->add_option("--legs", legs, "Sector (left legs)");
  gr->add_option("--max-pairs", max_pairs, "Truncation");

  bool exact = false, use_float = false;
  double tol = 1e-9;
  auto* ps = app.add_subcommand("psd", "Positive-semidefiniteness certificate of a sector Gram matrix");
  ps->add_option("--weight", weight, "Weight name, e.g. q:1/2");
  ps->add_option("--legs", legs, "Sector (left legs)");
  ps->add_option("--max-pairs", max_pairs, "Truncation");
  auto* ex = ps->add_flag("--exact", exact, "Exact rational LDL^T (default)");
  ps->add_flag("--float", use_float, "Double-precision LDL^T with --tol")->excludes(ex);
  ps->add_option("--tol", tol, "Tolerance in float mode");

  int levels = 2;
  auto* th = app.add_subcommand("theta", "Spectrum of theta on sectors 0..levels");
  th->add_option("--weight", weight, "Weight name, e.g. q:1/2");
  th->add_option("--levels", levels, "Highest sector");
  th->add_option("--max-pairs", max_pairs, "Truncation (the table runs 0..max-pairs)")->default_val(2);
  th->add_option("--tol", tol, "Eigensolver tolerance");

  std::string sf_weight;
  auto* sf = app.add_subcommand("standard-form", "Factorize a partition into hooks, cohooks and leg permutations");
  sf->add_option("partition", literal, "Partition literal")->required();
  sf->add_option("--weight", sf_weight, "Also evaluate <xi, W xi> with this weight");

  FockOptions fo;
  auto* fs = app.add_subcommand("fock-sim", "Truncated Fock matrix model");
  fs->add_option("--weight", fo.weight, "Weight name, e.g. q:1/2");
  fs->add_option("--dim", fo.dim, "Number of colors (1..3)");
  fs->add_option("--levels", fo.levels, "Level cap N (0..4)");
  fs->add_option("--length", fo.length, "Monomial length cap");
  fs->add_option("--pattern", fo.patterns, "Monomial(s) to evaluate");
  fs->add_flag("--bounds", fo.bounds, "Check creation/annihilation bounds");
  fs->add_option("--samples", fo.samples, "Random vectors per level");
  fs->add_option("--seed", fo.seed, "Random seed");

  CheckOptions co;
  auto* ck = app.add_subcommand("check", "Run a property suite");
  ck->add_option("suite", co.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"multiplicative", "rotation", "j-isometry", "theta-identity", "positivity", "standard-form", "bounds"}));
  ck->add_option("--weight", co.weight, "Weight name, e.g. q:1/2");
  ck->add_option("--points", co.points, "Point bound");
  ck->add_option("--legs", co.legs, "Legs");
  ck->add_option("--max-pairs", co.max_pairs, "Pair bound (default 2, theta-identity 1)");
  ck->add_option("--dim", co.dim, "Colors (bounds)");
  ck->add_option("--levels", co.levels, "Level cap (bounds)");
  ck->add_option("--length", co.length, "Length cap (bounds)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const Output o{out, format};
  try {
    if (*en) return cmd_enumerate(o, points, legs, right, max_pairs, en_legs->count() > 0 || en_right->count() > 0);
    if (*st) return cmd_stats(o, literal);
    if (*ev) return cmd_eval(o, weight, literal);
    if (*mo) return cmd_moment(o, weight, word, pattern, dim);
    if (*wi) return cmd_wick(o, weight, transform, inverse, inner_pair, moments, dim);
    if (*gr) return cmd_gram(o, weight, legs, max_pairs);
    if (*ps) return cmd_psd(o, weight, legs, max_pairs, use_float, tol);
    if (*th) return cmd_theta(o, weight, levels, max_pairs, tol);
    if (*sf) return cmd_standard_form(o, literal, sf_weight);
    if (*fs) return cmd_fock_sim(o, fo);
    if (*ck) return cmd_check(o, co);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "negative: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}

}  // namespace gbm::cli
