// mlschur: command-line front end. Every subcommand prints one JSON report.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "mlschur/cohomology.hpp"
#include "mlschur/exterior.hpp"
#include "mlschur/liesq.hpp"
#include "mlschur/verify.hpp"

using namespace mlschur;
using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string group;
  std::string star = "trivial";
  long long modulus = 0;
  std::size_t max_cosets = 200000;
  std::size_t budget = 200000;
  std::string manifest = "builtin";
  bool witness = false;
  bool timing = false;
};

// exit codes
constexpr int ok = 0, failed = 1, usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json invariants(const AbelianInvariants& a) { return a.factors; }

json table_json(const std::vector<std::vector<Elem>>& rows) { return rows; }

FiniteGroup load_group(const Options& o) {
  if (o.group.empty())
    throw UsageError("--group is required");
  try {
    return group_from_spec(o.group, o.max_cosets);
  } catch (const GroupError& e) {
    throw UsageError(e.what());
  } catch (const PresentationError& e) {
    throw UsageError(e.what());
  }
}

StarTable load_star(const FiniteGroup& g, const Options& o) {
  try {
    return star_from_spec(g, o.star);
  } catch (const GroupError& e) {
    throw UsageError(e.what());
  }
}

json base_inputs(const Options& o, bool with_star) {
  json in;
  in["group"] = o.group;
  if (with_star)
    in["star"] = o.star;
  return in;
}

Residue modulus_or(const Options& o, const FiniteGroup& g) {
  Residue m = o.modulus ? o.modulus : g.order();
  if (m < 2)
    throw UsageError("modulus must be at least 2");
  return m;
}

json manifest_row_json(const ManifestRow& r) {
  json j;
  j["name"] = r.name;
  j["group"] = r.group;
  j["star"] = r.star;
  return j;
}

std::vector<ManifestRow> load_manifest(const std::string& path) {
  if (path == "builtin")
    return builtin_manifest();
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot open manifest " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("manifest: ") + e.what());
  }
  std::vector<ManifestRow> rows;
  auto inv = [](const json& v) {
    return normalize_invariants(v.get<std::vector<long long>>());
  };
  for (const auto& r : j) {
    ManifestRow row;
    row.name = r.value("name", r.at("group").get<std::string>());
    row.group = r.at("group").get<std::string>();
    row.star = r.value("star", std::string("trivial"));
    row.skip = r.value("skip", std::string());
    if (r.contains("expected")) {
      const auto& x = r["expected"];
      if (x.contains("exterior"))
        row.expected.exterior = inv(x["exterior"]);
      if (x.contains("exterior_order"))
        row.expected.exterior_order = x["exterior_order"].get<int>();
      if (x.contains("exterior_involutions"))
        row.expected.exterior_involutions = x["exterior_involutions"].get<int>();
      if (x.contains("schur"))
        row.expected.schur = inv(x["schur"]);
      if (x.contains("lie_simple"))
        row.expected.lie_simple = x["lie_simple"].get<bool>();
      if (x.contains("tilde"))
        row.expected.tilde = inv(x["tilde"]);
    }
    rows.push_back(row);
  }
  return rows;
}

// each command fills the report and returns an exit code

int cmd_group_build(const Options& o, json&) {
  std::cout << format_group(load_group(o));
  return ok;
}

int cmd_group_print(const Options& o, json& r) {
  auto g = load_group(o);
  r["inputs"] = base_inputs(o, false);
  json gens = json::array();
  for (const auto& m : g.generators())
    gens.push_back({{"name", m.name}, {"element", m.element}});
  r["order"] = g.order();
  r["generators"] = gens;
  r["abelian"] = g.is_abelian();
  r["exponent"] = exponent(g);
  r["center_order"] = center(g).order();
  r["commutator_order"] = commutator_subgroup(g).order();
  r["invariants"] = invariants(abelianization_invariants(g));
  if (o.witness)
    r["table"] = table_json(g.cayley());
  return ok;
}

int cmd_mla_check(const Options& o, json& r) {
  auto g = load_group(o);
  r["inputs"] = base_inputs(o, true);
  StarTable s;
  try {
    s = load_star(g, o);
  } catch (const Inconsistent& e) {
    r["valid"] = false;
    r["violation"] = {{"axiom", e.axiom}, {"witness", e.witness}, {"message", e.what()}};
    return failed;
  }
  auto bad = check_star_axioms(g, s);
  r["valid"] = !bad;
  if (bad) {
    r["violation"] = {{"axiom", bad->axiom}, {"witness", bad->witness}};
    return failed;
  }
  auto derived = check_derived_identities(g, s);
  r["derived_identities"] = !derived;
  r["classification"] = to_string(classify_star(g, s));
  r["image_order"] = star_image_subgroup(g, s).order();
  r["product_order"] = star_commutator_product(g, s).order();
  if (o.witness)
    r["table"] = table_json(s.rows());
  return derived ? failed : ok;
}

int cmd_mla_enumerate(const Options& o, json& r) {
  auto g = load_group(o);
  r["inputs"] = base_inputs(o, false);
  auto all = enumerate_stars(g, o.budget);
  r["count"] = all.size();
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& m : all)
    ++counts[int(m.classification)];
  r["trivial"] = counts[0];
  r["improper"] = counts[1];
  r["proper"] = counts[2];
  if (g.order() <= 8)
    r["orbits"] = orbit_count(g, all);
  if (o.witness) {
    json list = json::array();
    for (const auto& m : all)
      list.push_back({{"classification", to_string(m.classification)}, {"table", m.star.rows()}});
    r["structures"] = list;
  }
  return ok;
}

int cmd_mla_classify(const Options& o, json& r) {
  auto g = load_group(o);
  r["inputs"] = base_inputs(o, true);
  auto s = load_star(g, o);
  r["classification"] = to_string(classify_star(g, s));
  try {
    r["lie_simple"] = is_lie_simple(g, o.budget);
  } catch (const BudgetExceeded&) {
    r["lie_simple"] = nullptr;
  }
  return ok;
}

int cmd_ext_square(const Options& o, json& r) {
  auto g = load_group(o);
  r["inputs"] = base_inputs(o, false);
  auto e = exterior_square(g, o.max_cosets);
  r["order"] = e.square.order();
  r["abelian"] = e.square.is_abelian();
  r["invariants"] = invariants(abelianization_invariants(e.square));
  auto m = schur_multiplier(e);
  r["schur"] = invariants(m);
  r["commutator_order"] = commutator_subgroup(g).order();
  r["exact"] = e.square.order() == m.order() * commutator_subgroup(g).order();
  r["cosets_defined"] = e.stats.cosets_defined;
  if (o.witness) {
    std::vector<std::vector<Elem>> w(std::size_t(g.order()));
    for (Elem x = 0; x < g.order(); ++x)
      for (Elem y = 0; y < g.order(); ++y)
        w[std::size_t(x)].push_back(e.wedge(x, y));
    r["wedge"] = w;
  }
  return ok;
}

int cmd_ext_jsub(const Options& o, json& r) {
  auto g = load_group(o);
  r["inputs"] = base_inputs(o, true);
  auto s = load_star(g, o);
  auto e = exterior_square(g, o.max_cosets);
  auto j = j_subgroup(e, s);
  r["square_order"] = e.square.order();
  r["j_order"] = j.generated.order();
  r["closure_order"] = j.closure.order();
  r["normal"] = j.normal;
  r["invariants"] = invariants(mod_j_dual_invariants(e, s));
  auto phi = attach_phi(e, s);
  r["phi_image_order"] = image(e.square, g, phi).order();
  return ok;
}

int cmd_liesq(const Options& o, json& r) {
  auto g = load_group(o);
  r["inputs"] = base_inputs(o, true);
  auto s = load_star(g, o);
  auto l = lie_exterior_square(g, s, o.max_cosets);
  r["order"] = l.group_part.order();
  r["abelian"] = l.group_part.is_abelian();
  r["invariants"] = invariants(abelianization_invariants(l.group_part));
  r["star"] = to_string(classify_star(l.group_part, l.tilde_star));
  r["target_order"] = star_commutator_product(g, s).order();
  auto ker = kernel(l.group_part, g, l.to_target);
  r["kernel"] = is_abelian(l.group_part, ker) ? invariants(abelian_invariants(l.group_part, ker))
                                               : json(nullptr);
  auto tilde = tilde_schur(g, s);
  r["tilde"] = invariants(tilde);
  r["sequence_exact"] = verify_sequence3(l, tilde);
  if (o.witness)
    r["tilde_star"] = table_json(l.tilde_star.rows());
  return ok;
}

json cohomology_json(const CohomologyGroup& c, bool ml, bool witness) {
  json j;
  j["modulus"] = c.modulus;
  j["invariants"] = invariants(c.invariants);
  if (witness) {
    json gens = json::array();
    for (const auto& p : c.generators) {
      json one{{"f", p.f}};
      if (ml)
        one["h"] = p.h;
      gens.push_back(one);
    }
    j["generators"] = gens;
  }
  return j;
}

int cmd_cohom_h2(const Options& o, json& r) {
  auto g = load_group(o);
  Residue m = modulus_or(o, g);
  r["inputs"] = base_inputs(o, false);
  r["inputs"]["modulus"] = m;
  auto c = cohomology_json(h2_group(g, m), false, o.witness);
  r["invariants"] = c["invariants"];
  if (o.witness)
    r["witnesses"] = c["generators"];
  r["universal_coefficients"] = universal_coefficients_check(g, m);
  return ok;
}

int cmd_cohom_h2ml(const Options& o, json& r) {
  auto g = load_group(o);
  Residue m = modulus_or(o, g);
  r["inputs"] = base_inputs(o, true);
  r["inputs"]["modulus"] = m;
  auto s = load_star(g, o);
  auto c = cohomology_json(h2ml_group(g, s, m), true, o.witness);
  r["invariants"] = c["invariants"];
  r["ptilde_kernel"] = invariants(ptilde_kernel(g, s, m));
  if (o.witness)
    r["witnesses"] = c["generators"];
  return ok;
}

int cmd_schur(const Options& o, json& r) {
  auto g = load_group(o);
  r["inputs"] = base_inputs(o, false);
  r["invariants"] = invariants(schur_multiplier(g, o.max_cosets));
  return ok;
}

int cmd_schur_ml(const Options& o, json& r) {
  auto g = load_group(o);
  r["inputs"] = base_inputs(o, true);
  auto s = load_star(g, o);
  r["invariants"] = invariants(tilde_schur(g, s));
  if (o.witness) {
    auto integral = tilde_schur_integral(g, s);
    r["integral"] = {{"invariants", invariants(integral.torsion)}, {"complete", integral.complete}};
  }
  return ok;
}

int cmd_verify_table(const Options& o, json& r) {
  auto rows = load_manifest(o.manifest);
  r["inputs"] = {{"manifest", o.manifest}};
  VerifyOptions vo{o.max_cosets, o.budget};
  json out = json::array();
  int failures = 0, passes = 0, skips = 0;
  for (const auto& row : rows) {
    auto v = verify_row(row, vo);
    json j = manifest_row_json(row);
    j["status"] = to_string(v.status);
    if (v.computed) {
      const auto& c = *v.computed;
      j["computed"] = {{"exterior", c.exterior ? invariants(*c.exterior) : json(nullptr)},
                       {"exterior_order", c.exterior_order},
                       {"schur", invariants(c.schur)},
                       {"lie_simple", c.lie_simple ? json(*c.lie_simple) : json(nullptr)},
                       {"classification", c.classification},
                       {"tilde", invariants(c.tilde)}};
    }
    if (!v.mismatches.empty())
      j["mismatches"] = v.mismatches;
    if (!v.reason.empty())
      j["reason"] = v.reason;
    if (o.timing)
      j["seconds"] = v.seconds;
    out.push_back(j);
    failures += v.status == RowStatus::fail;
    passes += v.status == RowStatus::pass;
    skips += v.status == RowStatus::skipped;
  }
  r["rows"] = out;
  r["summary"] = {{"pass", passes}, {"fail", failures}, {"skipped", skips}};
  return failures ? failed : ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur multipliers of multiplicative Lie algebras on finite groups"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&, json&)> action;
  std::string command;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<int(const Options&, json&)> fn, bool star, bool modulus) {
    auto* c = parent->add_subcommand(name, help);
    c->add_option("--group,-g", o.group, "group spec (Z6, V4, D3, Q2, SL23, M8,3,2, Z2xZ4, file:path)");
    if (star)
      c->add_option("--star,-s", o.star, "star spec (trivial, commutator, a*b=b^2, file:path)");
    if (modulus)
      c->add_option("-m,--modulus", o.modulus, "coefficient modulus (default |K|)");
    c->add_option("--max-cosets", o.max_cosets, "coset enumeration budget");
    c->add_option("--budget", o.budget, "structure search budget");
    c->add_flag("--witness", o.witness, "include tables and representatives");
    c->add_flag("--timing", o.timing, "include wall-clock time");
    std::string full = parent == &app ? name : parent->get_name() + " " + name;
    c->callback([&action, &command, fn, full]() {
      action = fn;
      command = full;
    });
    return c;
  };

  auto* group = app.add_subcommand("group", "build or describe a group");
  group->require_subcommand(1);
  leaf(group, "build", "print the group in table file format", cmd_group_build, false, false);
  leaf(group, "print", "summary of a group", cmd_group_print, false, false);
  auto* mla = app.add_subcommand("mla", "multiplicative Lie algebra structures");
  mla->require_subcommand(1);
  leaf(mla, "check", "validate a star against the axioms", cmd_mla_check, true, false);
  leaf(mla, "enumerate", "all structures on a group", cmd_mla_enumerate, false, false);
  leaf(mla, "classify", "trivial / improper / proper", cmd_mla_classify, true, false);
  auto* ext = app.add_subcommand("ext", "non-abelian exterior square");
  ext->require_subcommand(1);
  leaf(ext, "square", "the exterior square and M(K)", cmd_ext_square, false, false);
  leaf(ext, "jsub", "the subgroup J of a star", cmd_ext_jsub, true, false);
  leaf(&app, "liesq", "Lie exterior square", cmd_liesq, true, false);
  auto* cohom = app.add_subcommand("cohom", "second cohomology with Z/m coefficients");
  cohom->require_subcommand(1);
  leaf(cohom, "h2", "ordinary H^2", cmd_cohom_h2, false, true);
  leaf(cohom, "h2ml", "multiplicative Lie H^2", cmd_cohom_h2ml, true, true);
  leaf(&app, "schur", "Schur multiplier M(K)", cmd_schur, false, false);
  leaf(&app, "schur-ml", "Schur multiplier of the multiplicative Lie algebra", cmd_schur_ml, true,
       false);
  auto* verify = app.add_subcommand("verify", "verification harness");
  verify->require_subcommand(1);
  leaf(verify, "table", "run a manifest of table rows", cmd_verify_table, false, false)
      ->add_option("--manifest", o.manifest, "manifest path or 'builtin'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  json report;
  report["command"] = command;
  auto t0 = std::chrono::steady_clock::now();
  int code;
  try {
    code = action(o, report);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failed;
  }
  if (command == "group build")
    return code;
  if (o.timing)
    report["timing"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << report.dump(2) << "\n";
  return code;
}
