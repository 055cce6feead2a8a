// kummer: command-line driver for the verification suite.
//
//   kummer verify [--fibration id|all] [--params a,b,c] [--seed n] [--json path] [--timings] [--data dir]
//   kummer divisor-table verify [--json path] [--data dir]
//   kummer polytope check --walls f --vertices f --group f [--json path]
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 a catalog or input file
// is missing, 3 the report path is unwritable, 64 bad arguments.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "kummer/suite.hpp"

using namespace kummer;

namespace {

constexpr int kUsage = 64;

struct Common {
  std::string json;
  bool timings = false;
};

int finish(const Report& r, const Common& o) {
  std::cout << report_text(r, o.timings);
  if (!o.json.empty() && !write_file(o.json, report_json(r, o.timings))) {
    std::cerr << "kummer: cannot write report to " << o.json << "\n";
    return 3;
  }
  return r.ok() ? 0 : 1;
}

int polytope_check(const std::string& walls, const std::string& vertices, const std::string& group, const Common& o) {
  for (const auto& f : {walls, vertices, group})
    if (!std::filesystem::exists(f)) {
      std::cerr << "kummer: missing input file " << f << "\n";
      return 2;
    }
  Report r;
  auto H = read_walls(walls);
  auto reps = read_points(vertices, H.dim);
  auto G = read_group(group, H.dim);
  for (size_t i = 0; i < reps.size(); ++i) {
    bool v = is_vertex(H, reps[i]);
    r.checks.push_back({"polytope/representative-" + std::to_string(i + 1) + "/vertex", v, "vertex", v ? "vertex" : "not a vertex"});
  }
  std::string why;
  bool perm = G.permutes_walls(H, &why);
  r.checks.push_back({"polytope/group-permutes-walls", perm, "true", perm ? "true" : why});
  if (r.ok()) {
    auto a = adjacency_complete_check(H, reps, G);
    for (size_t i = 0; i < reps.size(); ++i)
      r.checks.push_back({"polytope/representative-" + std::to_string(i + 1) + "/neighbors", true, "edge neighbors",
                          std::to_string(a.neighbor_counts[i])});
    std::string got = a.complete ? "complete" : a.bounded ? "incomplete" : "unbounded";
    if (!a.misses.empty()) {
      got += ", witness (";
      for (size_t j = 0; j < a.misses[0].point.size(); ++j) got += (j ? " " : "") + to_string(a.misses[0].point[j]);
      got += ") from representative " + std::to_string(a.misses[0].representative + 1);
    }
    r.checks.push_back({"polytope/complete", a.complete, "complete", got});
    r.checks.push_back({"polytope/orbit-points", true, "union of orbits", std::to_string(a.orbit_points)});
  }
  return finish(r, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of elliptic fibrations on the generic Jacobian Kummer surface"};
  app.require_subcommand(1);
  Common o;
  std::string params = "2,3,5", fibration;
  unsigned long long seed = 1;

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--params", params, "a,b,c as rationals p/q")->capture_default_str();
  verify->add_option("--fibration", fibration, "a catalog id, or all");
  verify->add_option("--seed", seed, "seed for random specializations")->capture_default_str();
  verify->add_option("--json", o.json, "structured report path");
  verify->add_flag("--timings", o.timings, "record elapsed_ms (breaks byte-identical output)");
  std::string data = KUMMER_DATA_DIR;
  verify->add_option("--data", data, "catalog directory")->capture_default_str();

  auto* table = app.add_subcommand("divisor-table", "elliptic divisor table");
  auto* table_verify = table->add_subcommand("verify", "check every row");
  table->require_subcommand(1);
  table_verify->add_option("--json", o.json, "structured report path");
  table_verify->add_option("--data", data, "catalog directory")->capture_default_str();

  auto* poly = app.add_subcommand("polytope", "polytope tools");
  poly->require_subcommand(1);
  auto* check = poly->add_subcommand("check", "adjacency completeness of a vertex-orbit list");
  std::string walls, vertices, group;
  check->add_option("--walls", walls, "wall file")->required();
  check->add_option("--vertices", vertices, "representative vertices")->required();
  check->add_option("--group", group, "group generators")->required();
  check->add_option("--json", o.json, "structured report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*verify) {
      SuiteOptions so;
      so.seed = seed;
      so.data_dir = data;
      try {
        so.params = parse_params(params);
      } catch (const std::exception& e) {
        std::cerr << "kummer: --params: " << e.what() << "\n";
        return kUsage;
      }
      Suite s(so);
      if (fibration.empty()) {
        s.full();
      } else {
        std::vector<std::string> ids;
        if (fibration == "all")
          for (const auto& r : s.catalog()) ids.push_back(r.id);
        else
          ids.push_back(find_fibration(s.catalog(), fibration).id);
        for (const auto& id : ids) {
          s.fibration(id);
          const auto& rec = find_fibration(s.catalog(), id);
          if (!rec.is_variant() && !rec.source.empty() && !rec.parameter.empty()) s.neighbor(rec.source, id);
          if (!rec.invariant_equation.empty())
            s.run(10, [&](std::vector<Check>& out) {
              bool ok = invariant_form_matches(rec, s.env());
              out.push_back({"igusa/invariant-form/" + id, ok, "alpha-beta-gamma form after mu-scaling", ok ? "equal" : "differs"});
            });
        }
      }
      return finish(s.report(), o);
    }
    if (*table_verify) {
      SuiteOptions so;
      so.data_dir = data;
      Suite s(so);
      s.divisor_table();
      return finish(s.report(), o);
    }
    if (*check) return polytope_check(walls, vertices, group, o);
  } catch (const MissingCatalog& e) {
    std::cerr << "kummer: " << e.what() << "\n";
    return 2;
  } catch (const CatalogError& e) {
    std::cerr << "kummer: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "kummer: " << e.what() << "\n";
    return 1;
  }
  return kUsage;
}
