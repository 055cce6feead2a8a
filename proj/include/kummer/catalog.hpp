#pragma once
// Fibration catalog: one key-value text file per fibration, every equation a
// formula string. Keys:
//   id, principal (variants only), source, parameter, equation,
//   fiber: <position|oo> <root lattice>, torsion,
//   section / torsion_section: <name> | <x> | <y>  (y = ? : recover y from x,
//     sign undetermined),
//   mw_basis: names..., mw_gram: row; row (comma-separated rationals),
//   lattice: <name>, height: <section> <value> (a worked height to reproduce),
//   sum: <name> = <section> +/- <section> ... (group-law combination),
//   erratum: negate <section> (printed sign disagrees with the printed Gram),
//   invariant_equation: the same surface in alpha, beta, gamma after
//     t -> mu t, x -> mu^4 x, y -> mu^6 y with mu = I5/I2^2.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kummer/elliptic.hpp"
#include "kummer/formula.hpp"
#include "kummer/igusa.hpp"
#include "kummer/ns_model.hpp"

namespace kummer {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ParamEnv = std::map<std::string, Rat>;

/// a, b, c plus the Igusa-Clebsch values some catalog equations are written in.
inline ParamEnv param_env(const GenusTwoParams& p) {
  auto ic = ic_from_sigma(p);
  ParamEnv env{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"I2", ic.I2}, {"I4", ic.I4}, {"I6", ic.I6}, {"I10", ic.I10}, {"I5", *ic.I5}};
  if (ic.I2 != 0) {
    auto n = normalize(ic);
    env["alpha"] = n.alpha;
    env["beta"] = n.beta;
    env["gamma"] = n.gamma;
    env["mu"] = n.mu;
  }
  return env;
}

struct FiberEntry {
  bool infinity = false;
  std::string position;  // formula text in a, b, c
  std::string lattice;   // A1, D4, E7, ...
};

struct SectionEntry {
  std::string name;
  std::string x, y;
  bool torsion = false;
};

struct FibrationRecord {
  std::string id;
  std::string principal;  // set for variant records
  std::string source;     // fibration the parameter is written on
  std::string parameter;  // in the source's t, x, y
  std::string parameter_erratum;  // corrected parameter when the printed one fails
  std::string equation;   // "lhs = rhs" in t, x, y
  std::string invariant_equation;
  std::vector<FiberEntry> fibers;
  std::string torsion = "0";
  std::vector<SectionEntry> sections;
  std::vector<std::string> mw_basis;
  std::optional<RatMatrix> mw_gram;
  std::string lattice;
  std::vector<std::pair<std::string, Rat>> heights;
  std::vector<std::string> negated;
  struct Sum {
    std::string name;
    std::vector<std::pair<int, std::string>> terms;  // (sign, section)
  };
  std::vector<Sum> sums;
  std::string path;

  bool is_variant() const { return !principal.empty(); }
  const SectionEntry& section(const std::string& name) const {
    for (const auto& s : sections)
      if (s.name == name) return s;
    throw CatalogError("fibration " + id + ": no section " + name);
  }
  int torsion_order() const {
    if (torsion == "0") return 1;
    int n = 1;
    std::stringstream ss(torsion);
    std::string part;
    while (std::getline(ss, part, '+')) {
      if (part.rfind("Z/", 0) != 0) throw CatalogError("bad torsion " + torsion);
      n *= std::stoi(part.substr(2));
    }
    return n;
  }
  /// e.g. "D4^2 A1^6" in the same order as FiberConfiguration::root_type.
  std::string root_type() const {
    FiberConfiguration cfg;
    for (const auto& f : fibers) {
      KodairaFiber k;
      char fam = f.lattice[0];
      int n = std::stoi(f.lattice.substr(1));
      if (fam == 'A') {
        k.kind = FiberKind::In;
        k.n = n + 1;
      } else if (fam == 'D') {
        k.kind = FiberKind::InStar;
        k.n = n - 4;
      } else {
        k.kind = n == 6 ? FiberKind::IVStar : n == 7 ? FiberKind::IIIStar : FiberKind::IIStar;
      }
      k.place = Place::inf();
      cfg.fibers.push_back(k);
    }
    return cfg.root_type();
  }
};

namespace detail {
inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(trim(part));
  return out;
}
inline RatMatrix parse_matrix(const std::string& text) {
  auto rows = split(text, ';');
  RatMatrix m(rows.size(), rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    auto cells = split(rows[i], ',');
    if (cells.size() != rows.size()) throw CatalogError("matrix is not square: " + text);
    for (size_t j = 0; j < cells.size(); ++j) m(i, j) = parse_rat(cells[j]);
  }
  return m;
}
}  // namespace detail

inline FibrationRecord parse_fibration(std::istream& in, const std::string& path = "<stream>") {
  FibrationRecord r;
  r.path = path;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw CatalogError(path + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#') continue;
    size_t colon = s.find(':');
    if (colon == std::string::npos) fail("expected 'key: value'");
    std::string key = detail::trim(s.substr(0, colon)), val = detail::trim(s.substr(colon + 1));
    if (key == "id") r.id = val;
    else if (key == "principal") r.principal = val;
    else if (key == "source") r.source = val;
    else if (key == "parameter") r.parameter = val;
    else if (key == "equation") r.equation = val;
    else if (key == "invariant_equation") r.invariant_equation = val;
    else if (key == "torsion") r.torsion = val;
    else if (key == "lattice") r.lattice = val;
    else if (key == "mw_gram") r.mw_gram = detail::parse_matrix(val);
    else if (key == "mw_basis") {
      std::stringstream ss(val);
      std::string n;
      while (ss >> n) r.mw_basis.push_back(n);
    } else if (key == "fiber") {
      size_t sp = val.find_last_of(' ');
      if (sp == std::string::npos) fail("fiber needs a position and a type");
      FiberEntry f;
      f.position = detail::trim(val.substr(0, sp));
      f.lattice = val.substr(sp + 1);
      f.infinity = f.position == "oo";
      if (f.lattice.size() < 2 || std::string("ADE").find(f.lattice[0]) == std::string::npos) fail("bad fiber type");
      r.fibers.push_back(f);
    } else if (key == "section" || key == "torsion_section") {
      auto parts = detail::split(val, '|');
      if (parts.size() != 3) fail("section needs name | x | y");
      r.sections.push_back({parts[0], parts[1], parts[2], key == "torsion_section"});
    } else if (key == "sum") {
      auto eq = detail::split(val, '=');
      if (eq.size() != 2) fail("sum needs '<name> = <terms>'");
      FibrationRecord::Sum sm{eq[0], {}};
      std::stringstream ss(eq[1]);
      std::string tok;
      int sign = 1;
      while (ss >> tok) {
        if (tok == "+" || tok == "-") {
          sign = tok == "-" ? -1 : 1;
          continue;
        }
        if (tok[0] == '-') sm.terms.push_back({-sign, tok.substr(1)});
        else sm.terms.push_back({sign, tok});
        sign = 1;
      }
      if (sm.terms.empty()) fail("empty sum");
      r.sums.push_back(sm);
    } else if (key == "erratum") {
      if (val.rfind("negate ", 0) == 0) r.negated.push_back(detail::trim(val.substr(7)));
      else if (val.rfind("parameter ", 0) == 0) r.parameter_erratum = detail::trim(val.substr(10));
      else fail("erratum must be 'negate <section>' or 'parameter <formula>'");
    } else if (key == "height") {
      size_t sp = val.find(' ');
      if (sp == std::string::npos) fail("height needs a section and a value");
      r.heights.push_back({val.substr(0, sp), parse_rat(detail::trim(val.substr(sp + 1)))});
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (r.id.empty()) throw CatalogError(path + ": missing id");
  if (r.equation.empty() && !r.is_variant()) throw CatalogError(path + ": missing equation");
  return r;
}

inline FibrationRecord load_fibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog file " + path);
  return parse_fibration(in, path);
}

/// Sort key: numeric part, then variant suffix.
inline std::pair<int, std::string> fibration_order(const std::string& id) {
  size_t i = 0;
  while (i < id.size() && std::isdigit(static_cast<unsigned char>(id[i]))) ++i;
  return {i ? std::stoi(id.substr(0, i)) : 0, id.substr(i)};
}

inline std::vector<FibrationRecord> load_catalog(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw CatalogError("catalog directory missing: " + dir);
  std::vector<FibrationRecord> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".fib") out.push_back(load_fibration(e.path().string()));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return fibration_order(a.id) < fibration_order(b.id); });
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i].id == out[i - 1].id) throw CatalogError("duplicate fibration id " + out[i].id);
  return out;
}

inline const FibrationRecord& find_fibration(const std::vector<FibrationRecord>& cat, const std::string& id) {
  for (const auto& r : cat)
    if (r.id == id) return r;
  throw CatalogError("no fibration " + id + " in catalog");
}

/// Weierstrass model from "lhs = rhs": rhs - lhs must read
/// k (x^3 + a2 x^2 + a4 x + a6 - y^2 - a1 xy - a3 y) for a constant k.
inline WeierstrassModel weierstrass_from_equation(const std::string& equation, const ParamEnv& env) {
  size_t eq = equation.find('=');
  if (eq == std::string::npos) throw CatalogError("equation has no '=': " + equation);
  std::vector<std::string> vars{"t", "x", "y"};
  MFrac lhs = eval_formula_poly(parse_formula(equation.substr(0, eq)), vars, env);
  MFrac rhs = eval_formula_poly(parse_formula(equation.substr(eq + 1)), vars, env);
  MFrac f = (rhs - lhs).tidy();
  if (!f.den.is_constant()) throw CatalogError("equation is not polynomial: " + equation);
  MPoly F = f.num.scaled(1 / f.den.constant_value());
  auto coeff = [&](int ex, int ey) {
    UPoly u;
    for (const auto& [mono, c] : F.terms)
      if (mono[1] == ex && mono[2] == ey) {
        UPoly m = UPoly::monomial(c, mono[0]);
        u += m;
      }
    return u;
  };
  UPoly kx = coeff(3, 0), ky = coeff(0, 2);
  if (kx.deg() != 0 || ky.deg() != 0 || kx.c[0] != -ky.c[0])
    throw CatalogError("equation is not in Weierstrass shape: " + equation);
  Rat k = kx.c[0];
  for (const auto& [mono, c] : F.terms) {
    int ex = mono[1], ey = mono[2];
    bool ok = (ey == 0 && ex <= 3) || (ey == 1 && ex <= 1) || (ey == 2 && ex == 0);
    if (!ok) throw CatalogError("unexpected monomial in equation: " + equation);
  }
  WeierstrassModel w;
  w.a[0] = -coeff(1, 1).scaled(1 / k);
  w.a[1] = coeff(2, 0).scaled(1 / k);
  w.a[2] = -coeff(0, 1).scaled(1 / k);
  w.a[3] = coeff(1, 0).scaled(1 / k);
  w.a[4] = coeff(0, 0).scaled(1 / k);
  return w;
}

inline WeierstrassModel model_of(const FibrationRecord& r, const ParamEnv& env) {
  return weierstrass_from_equation(r.equation, env);
}

/// t -> mu t, x -> mu^4 x, y -> mu^6 y, divided through by mu^12.
inline WeierstrassModel mu_rescaled(const WeierstrassModel& w, const Rat& mu) {
  static constexpr int weight[5] = {1, 2, 3, 4, 6};
  WeierstrassModel r = w;
  for (int k = 0; k < 5; ++k) {
    Rat m = 1;
    for (auto& c : r.a[k].c) c *= m, m *= mu;
    r.a[k] = r.a[k].scaled(1 / pow(mu, 2 * weight[k]));
  }
  return r;
}

/// Exact equality of the rescaled equation with the invariant form.
inline bool invariant_form_matches(const FibrationRecord& r, const ParamEnv& env) {
  if (r.invariant_equation.empty()) throw CatalogError(r.id + ": no invariant_equation");
  if (!env.count("gamma")) throw std::domain_error("I2 = 0: alpha, beta, gamma undefined");
  return mu_rescaled(model_of(r, env), env.at("mu")).a == weierstrass_from_equation(r.invariant_equation, env).a;
}

/// A listed section; for "y = ?" the square root of the right-hand side at x
/// is taken with the sign that makes its leading coefficient positive.
inline SectionPoint section_point(const SectionEntry& s, const ParamEnv& env, const WeierstrassModel& w) {
  RatFunc x = eval_formula_ratfunc(s.x, env);
  if (s.y != "?") return SectionPoint::at(x, eval_formula_ratfunc(s.y, env));
  if (!w.a[0].zero() || !w.a[2].zero()) throw CatalogError("section " + s.name + ": y = ? needs a1 = a3 = 0");
  RatFunc rhs = x * x * x + RatFunc(w.a[1]) * x * x + RatFunc(w.a[3]) * x + RatFunc(w.a[4]);
  // y = sqrt(N D) / D
  auto root = poly_sqrt(rhs.num() * rhs.den());
  if (!root) throw CatalogError("section " + s.name + ": right-hand side is not a square");
  return SectionPoint::at(x, RatFunc(*root) / RatFunc(rhs.den()));
}

inline std::optional<Rat> fiber_position(const FiberEntry& f, const ParamEnv& env) {
  if (f.infinity) return std::nullopt;
  return eval_formula(parse_formula(f.position), env);
}

/// Pre-flight: every printed fiber position is distinct at this specialization.
inline std::vector<std::string> position_collisions(const std::vector<FibrationRecord>& cat, const ParamEnv& env) {
  std::vector<std::string> out;
  for (const auto& r : cat) {
    std::vector<Rat> seen;
    for (const auto& f : r.fibers) {
      if (f.infinity) continue;
      Rat v;
      try {
        v = *fiber_position(f, env);
      } catch (const std::exception& e) {
        out.push_back("fibration " + r.id + ": position " + f.position + " undefined");
        continue;
      }
      if (std::find(seen.begin(), seen.end(), v) != seen.end())
        out.push_back("fibration " + r.id + ": positions collide at t=" + v.get_str());
      seen.push_back(v);
    }
  }
  return out;
}

}  // namespace kummer
