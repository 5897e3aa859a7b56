#include "mlschur/verify.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mlschur/cohomology.hpp"
#include "mlschur/exterior.hpp"
#include "mlschur/presentation.hpp"

namespace mlschur {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw GroupError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int parse_int(const std::string& s, const std::string& spec) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(c); }))
    throw GroupError("bad group spec '" + spec + "'");
  return std::stoi(s);
}

FiniteGroup factor_from_spec(std::string f, const std::string& spec) {
  f = trim(f);
  if (f == "1")
    return FiniteGroup();
  if (f == "V4")
    return klein_four();
  if (f == "SL23" || f == "SL(2,3)")
    return sl_2_3();
  if (f.size() >= 2 && (f[0] == 'Z' || f[0] == 'C'))
    return cyclic(parse_int(f.substr(1), spec));
  if (f.size() >= 2 && f[0] == 'D')
    return dihedral(parse_int(f.substr(1), spec));
  if (f.size() >= 2 && f[0] == 'Q')
    return dicyclic(parse_int(f.substr(1), spec));
  if (f.size() >= 2 && f[0] == 'M') {
    std::vector<int> args;
    std::stringstream ss(f.substr(1));
    std::string part;
    while (std::getline(ss, part, ','))
      args.push_back(parse_int(trim(part), spec));
    if (args.size() != 3)
      throw GroupError("metacyclic spec needs M<m>,<n>,<alpha>: '" + spec + "'");
    return metacyclic(args[0], args[1], args[2]);
  }
  throw GroupError("unknown group '" + f + "'");
}

std::string show(const std::optional<AbelianInvariants>& a) { return a ? a->str() : "n/a"; }

} // namespace

FiniteGroup group_from_spec(const std::string& spec_in, std::size_t max_cosets) {
  std::string spec = trim(spec_in);
  if (spec.rfind("file:", 0) == 0)
    return parse_group(read_file(spec.substr(5)));
  if (spec.find("gens:") != std::string::npos) {
    auto res = todd_coxeter(parse_presentation(spec), max_cosets);
    return res.group;
  }
  // top-level products; metacyclic arguments contain no 'x'
  FiniteGroup g;
  bool first = true;
  std::size_t pos = 0;
  while (true) {
    auto next = spec.find('x', pos);
    auto f = factor_from_spec(spec.substr(pos, next == std::string::npos ? next : next - pos), spec);
    g = first ? f : direct_product(g, f);
    first = false;
    if (next == std::string::npos)
      break;
    pos = next + 1;
  }
  return g.relabeled(spec);
}

StarTable star_from_spec(const FiniteGroup& g, const std::string& spec_in) {
  std::string spec = trim(spec_in);
  if (spec.rfind("file:", 0) == 0)
    return parse_star(read_file(spec.substr(5)), g);
  if (spec == "improper")
    return commutator_star(g);
  return parse_star_sugar(spec, g);
}

std::string to_string(RowStatus s) {
  switch (s) {
  case RowStatus::pass:
    return "pass";
  case RowStatus::fail:
    return "fail";
  case RowStatus::skipped:
    return "skipped";
  }
  return "?";
}

std::vector<ManifestRow> builtin_manifest() {
  auto inv = [](std::vector<long long> f) { return normalize_invariants(f); };
  std::vector<ManifestRow> rows;
  for (int n : {2, 6, 12}) {
    ManifestRow r{"Z" + std::to_string(n), "Z" + std::to_string(n), "trivial", {}, ""};
    r.expected.exterior = inv({});
    r.expected.schur = inv({});
    r.expected.lie_simple = true;
    r.expected.tilde = inv({});
    rows.push_back(r);
  }
  {
    ManifestRow r{"V4", "V4", "a*b=a", {}, ""};
    r.expected.exterior = inv({2});
    r.expected.schur = inv({2});
    r.expected.lie_simple = false;
    r.expected.tilde = inv({2, 2});
    rows.push_back(r);
  }
  {
    ManifestRow r{"SL(2,3)", "SL23", "commutator", {}, ""};
    r.expected.exterior_order = 8;
    r.expected.exterior_involutions = 1;
    r.expected.schur = inv({});
    r.expected.lie_simple = true;
    r.expected.tilde = inv({2, 2});
    rows.push_back(r);
  }
  for (int n = 2; n <= 4; ++n)
    for (int i = 1; i <= 2 * n - 1; ++i) {
      ManifestRow r{"Q" + std::to_string(n) + " a*b=b^" + std::to_string(i), "Q" + std::to_string(n),
                    "a*b=b^" + std::to_string(i), {}, ""};
      r.expected.exterior = inv({n});
      r.expected.schur = inv({});
      r.expected.tilde = inv({std::gcd(n, i)});
      rows.push_back(r);
    }
  for (int n = 3; n <= 6; ++n)
    for (int i = 1; i <= n; ++i) {
      ManifestRow r{"D" + std::to_string(n) + " a*b=b^" + std::to_string(i), "D" + std::to_string(n),
                    "a*b=b^" + std::to_string(i), {}, ""};
      r.expected.exterior = inv({n});
      r.expected.schur = n % 2 ? inv({}) : inv({2});
      r.expected.lie_simple = false;
      r.expected.tilde = n % 2 ? inv({n}) : inv({2, n});
      rows.push_back(r);
    }
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {4, 6}, {6, 9}}) {
    std::string g = "Z" + std::to_string(m) + "xZ" + std::to_string(n);
    ManifestRow r{g, g, "trivial", {}, ""};
    int d = std::gcd(m, n);
    r.expected.exterior = inv({d});
    r.expected.schur = inv({d});
    r.expected.lie_simple = false;
    r.expected.tilde = inv({d, d});
    rows.push_back(r);
  }
  {
    ManifestRow r{"Q2xZ3", "Q2xZ3", "commutator", {}, ""};
    r.expected.exterior = inv({2});
    r.expected.schur = inv({});
    r.expected.lie_simple = true;
    r.expected.tilde = inv({2});
    rows.push_back(r);
  }
  for (auto [p, alpha] : std::vector<std::pair<int, int>>{{3, 2}, {5, 2}, {17, 2}}) {
    std::string g = "M8," + std::to_string(p) + "," + std::to_string(alpha);
    ManifestRow r{g, g, "commutator", {}, ""};
    r.expected.exterior = inv({p});
    r.expected.schur = inv({});
    r.expected.lie_simple = true;
    r.expected.tilde = inv({p});
    rows.push_back(r);
  }
  for (int p : {3, 7}) {
    std::string pres = "gens: a b c d ; rels: a^4, b^2, c^2, d^" + std::to_string(p) +
                       ", [a,b], [a,c], [b,c], d^-1 a d = b, d^-1 b d = c, d^-1 c d = a b";
    ManifestRow r{"<a,b,c,d> p=" + std::to_string(p), pres, "commutator", {}, ""};
    r.expected.exterior = inv({2, 2, 2});
    r.expected.schur = inv({});
    r.expected.lie_simple = true;
    r.expected.tilde = inv({2, 2, 2});
    if (p == 3)
      r.skip = "inconsistent-presentation";
    rows.push_back(r);
  }
  return rows;
}

VerificationRow verify_row(const ManifestRow& row, const VerifyOptions& opt) {
  VerificationRow out;
  out.row = row;
  auto t0 = std::chrono::steady_clock::now();
  auto done = [&]() {
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  };
  try {
    FiniteGroup k = group_from_spec(row.group, opt.max_cosets);
    if (!row.skip.empty()) {
      out.status = RowStatus::skipped;
      out.reason = row.skip + ": the presentation defines a group of order " +
                   std::to_string(k.order());
      return done();
    }
    ComputedValues c;
    c.group_order = k.order();
    auto e = exterior_square(k, opt.max_cosets);
    if (e.square.is_abelian())
      c.exterior = abelian_invariants(e.square);
    c.exterior_order = e.square.order();
    for (Elem x = 0; x < e.square.order(); ++x)
      c.exterior_involutions += element_order(e.square, x) == 2;
    c.schur = schur_multiplier(e);
    StarTable s = star_from_spec(k, row.star);
    c.classification = to_string(classify_star(k, s));
    try {
      c.lie_simple = is_lie_simple(k, opt.budget);
    } catch (const BudgetExceeded&) {
    }
    c.tilde = tilde_schur(k, s);
    out.computed = c;

    const auto& x = row.expected;
    auto check = [&](const char* what, bool ok, const std::string& want, const std::string& got) {
      if (!ok)
        out.mismatches.push_back(std::string(what) + ": expected " + want + ", got " + got);
    };
    if (x.exterior)
      check("exterior", c.exterior == x.exterior, x.exterior->str(), show(c.exterior));
    if (x.exterior_order)
      check("exterior order", c.exterior_order == *x.exterior_order,
            std::to_string(*x.exterior_order), std::to_string(c.exterior_order));
    if (x.exterior_involutions)
      check("exterior involutions", c.exterior_involutions == *x.exterior_involutions,
            std::to_string(*x.exterior_involutions), std::to_string(c.exterior_involutions));
    if (x.schur)
      check("schur", c.schur == *x.schur, x.schur->str(), c.schur.str());
    if (x.lie_simple)
      check("lie simple", c.lie_simple == x.lie_simple, *x.lie_simple ? "true" : "false",
            c.lie_simple ? (*c.lie_simple ? "true" : "false") : "unknown");
    if (x.tilde)
      check("tilde", c.tilde == *x.tilde, x.tilde->str(), c.tilde.str());
    out.status = out.mismatches.empty() ? RowStatus::pass : RowStatus::fail;
  } catch (const EnumerationOverflow& ex) {
    out.status = RowStatus::skipped;
    out.reason = std::string("budget: ") + ex.what();
  } catch (const BudgetExceeded& ex) {
    out.status = RowStatus::skipped;
    out.reason = std::string("budget: ") + ex.what();
  } catch (const NoStabilization& ex) {
    out.status = RowStatus::skipped;
    out.reason = std::string("no-stabilization: ") + ex.what();
  } catch (const Inconsistent& ex) {
    out.status = RowStatus::skipped;
    out.reason = std::string("invalid-structure: ") + ex.what();
  } catch (const std::exception& ex) {
    out.status = RowStatus::skipped;
    out.reason = std::string("error: ") + ex.what();
  }
  return done();
}

std::vector<VerificationRow> run_table_verification(const std::vector<ManifestRow>& rows,
                                                    const VerifyOptions& opt) {
  std::vector<VerificationRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows)
    out.push_back(verify_row(r, opt));
  return out;
}

} // namespace mlschur
