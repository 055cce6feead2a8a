#pragma once
// Verification of one catalog fibration at a specialization: fiber types at
// the listed positions, Euler sum, torsion, section heights, the MW Gram
// matrix and the NS discriminant.

#include <algorithm>
#include <string>
#include <vector>

#include "kummer/catalog.hpp"
#include "kummer/elliptic.hpp"
#include "kummer/lattice.hpp"

namespace kummer {

struct CheckItem {
  std::string id;
  bool pass = false;
  std::string expected, computed;
};

struct FibrationAnalysis {
  std::string id;
  MinimalModel model;
  FiberConfiguration config;
  TorsionInfo torsion;
  RatMatrix gram;
  Rat mw_det = 1;
  Rat discriminant = 0;
  std::vector<CheckItem> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {
inline std::string place_key(const Place& p) { return p.infinity ? "oo" : to_string(p.position()); }

inline std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}
}  // namespace detail

inline FibrationAnalysis analyze_fibration(const FibrationRecord& rec, const ParamEnv& env) {
  FibrationAnalysis an;
  an.id = rec.id;
  const std::string pre = "fibration/" + rec.id + "/";
  auto note = [&](const std::string& what, bool pass, std::string expected, std::string computed) {
    an.checks.push_back({pre + what, pass, std::move(expected), std::move(computed)});
  };

  WeierstrassModel w = model_of(rec, env);
  an.model = minimalize(w);
  const MinimalModel& m = an.model;
  an.config = fiber_configuration(m);

  // Fibers at the printed positions, and nothing reducible elsewhere.
  std::vector<std::string> want, got;
  bool fibers_ok = true;
  for (const auto& f : rec.fibers) {
    Place pl = f.infinity ? Place::inf() : Place::at(*fiber_position(f, env));
    KodairaFiber k = kodaira_at(m, pl);
    want.push_back(detail::place_key(pl) + ":" + f.lattice);
    got.push_back(detail::place_key(pl) + ":" + (k.reducible() ? k.root_lattice() : k.type()));
    if (!k.reducible() || k.root_lattice() != f.lattice) fibers_ok = false;
  }
  std::vector<std::string> extra;
  for (const auto& k : an.config.fibers) {
    if (k.reducible()) {
      bool listed = false;
      for (const auto& f : rec.fibers) {
        Place pl = f.infinity ? Place::inf() : Place::at(*fiber_position(f, env));
        if (pl == k.place) listed = true;
      }
      if (!listed) extra.push_back(k.place.to_string() + ":" + k.root_lattice());
    } else if (!(k.kind == FiberKind::In && k.n == 1)) {
      extra.push_back(k.place.to_string() + ":" + k.type());
    }
  }
  if (!extra.empty()) {
    fibers_ok = false;
    got.push_back("unexpected " + detail::join(extra, ","));
  }
  note("fibers", fibers_ok, detail::join(want), detail::join(got));
  note("euler", an.config.euler_sum == 24, "24", std::to_string(an.config.euler_sum));

  an.torsion = torsion_subgroup(m);
  note("torsion", an.torsion.structure == rec.torsion && an.torsion.certified, rec.torsion,
      an.torsion.structure + (an.torsion.certified ? "" : " (bound " + std::to_string(an.torsion.bound) + ")"));

  HeightPairing hp(m);
  std::map<std::string, SectionPoint> listed;  // minimal coordinates
  std::vector<std::string> unsigned_names;      // y recovered up to sign
  for (const auto& s : rec.sections) {
    SectionPoint P = section_point(s, env, w);
    bool on = on_curve(w, P);
    note("section/" + s.name + "/on-curve", on, "true", on ? "true" : "false");
    if (!on) continue;
    if (std::find(rec.negated.begin(), rec.negated.end(), s.name) != rec.negated.end()) {
      P = neg(w, P);
      note("section/" + s.name + "/erratum", true, "as printed", "negated");
    }
    if (s.y == "?") unsigned_names.push_back(s.name);
    listed[s.name] = m.map_point(P);
    if (s.torsion) {
      auto ord = torsion_order(w, P);
      Rat h = hp.height(listed[s.name]);
      note("section/" + s.name + "/torsion", ord && *ord > 1 && h == 0, "order>1 height 0",
           "order " + (ord ? std::to_string(*ord) : std::string("inf")) + " height " + to_string(h));
    }
  }

  // Bit i of the pattern negates the i-th section listed with y = ?.
  auto build = [&](unsigned pattern, std::string* missing) {
    auto pts = listed;
    for (size_t i = 0; i < unsigned_names.size(); ++i)
      if (pattern >> i & 1) pts[unsigned_names[i]] = neg(m.w, pts[unsigned_names[i]]);
    for (const auto& sm : rec.sums) {
      SectionPoint acc = SectionPoint::zero();
      for (const auto& [sign, name] : sm.terms) {
        if (!pts.count(name)) {
          if (missing) *missing = name;
          return pts;
        }
        acc = add(m.w, acc, sign > 0 ? pts[name] : neg(m.w, pts[name]));
      }
      pts[sm.name] = acc;
    }
    return pts;
  };
  auto basis_of = [&](const std::map<std::string, SectionPoint>& pts, std::vector<SectionPoint>& basis) {
    basis.clear();
    for (const auto& n : rec.mw_basis) {
      if (!pts.count(n)) return false;
      basis.push_back(pts.at(n));
    }
    return true;
  };

  unsigned pattern = 0;
  std::vector<SectionPoint> basis;
  if (!unsigned_names.empty() && rec.mw_gram) {
    bool found = false;
    for (unsigned pat = 0; pat < (1u << unsigned_names.size()) && !found; ++pat) {
      if (basis_of(build(pat, nullptr), basis) && hp.gram(basis) == *rec.mw_gram) {
        pattern = pat;
        found = true;
      }
    }
    std::string signs;
    for (size_t i = 0; i < unsigned_names.size(); ++i)
      signs += (i ? " " : "") + unsigned_names[i] + (pattern >> i & 1 ? ":-" : ":+");
    note("section-signs", found, "a sign choice matching the printed Gram", found ? signs : "none");
  }
  std::string missing;
  auto pts = build(pattern, &missing);
  if (!missing.empty()) note("sums", false, "defined summands", "missing " + missing);

  for (const auto& [name, value] : rec.heights) {
    if (!pts.count(name)) {
      note("height/" + name, false, to_string(value), "section unavailable");
      continue;
    }
    Rat h = hp.height(pts[name]);
    note("height/" + name, h == value, to_string(value), to_string(h));
  }

  if (!basis_of(pts, basis)) {
    note("mw-gram", false, "basis sections", "missing section");
    return an;
  }
  an.gram = hp.gram(basis);
  an.mw_det = basis.empty() ? Rat(1) : det(an.gram);
  if (rec.mw_gram) note("mw-gram", an.gram == *rec.mw_gram, matrix_to_string(*rec.mw_gram), matrix_to_string(an.gram));
  if (!basis.empty()) {
    bool pd = positive_definite(an.gram);
    note("mw-positive", pd, "true", pd ? "true" : "false");
  }
  if (!rec.lattice.empty()) {
    RatMatrix named = parse_lattice_name(rec.lattice);
    bool iso = named.rows == an.gram.rows && (named.rows == 0 || is_isometric(an.gram, named));
    note("mw-lattice", iso, rec.lattice, iso ? rec.lattice : "det " + to_string(an.mw_det));
  }
  an.discriminant = ns_discriminant(an.config, an.mw_det, an.torsion.order);
  note("ns-discriminant", an.discriminant == 64, "64", to_string(an.discriminant));
  return an;
}

}  // namespace kummer
