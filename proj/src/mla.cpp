#include "mlschur/mla.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "mlschur/exterior.hpp"

namespace mlschur {

StarTable::StarTable(const std::vector<std::vector<Elem>>& rows) : n_(int(rows.size())) {
  for (const auto& r : rows) {
    if (r.size() != rows.size())
      throw GroupError("star table is not square");
    t_.insert(t_.end(), r.begin(), r.end());
  }
}

std::vector<std::vector<Elem>> StarTable::rows() const {
  std::vector<std::vector<Elem>> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    out[std::size_t(i)].assign(t_.begin() + std::ptrdiff_t(i) * n_,
                               t_.begin() + std::ptrdiff_t(i + 1) * n_);
  return out;
}

std::string AxiomViolation::str() const {
  std::string s = "axiom " + std::to_string(axiom) + " fails at (";
  for (std::size_t i = 0; i < witness.size(); ++i)
    s += (i ? "," : "") + std::to_string(witness[i]);
  return s + ")";
}

Inconsistent::Inconsistent(const std::string& what, int axiom_, std::vector<Elem> witness_)
    : std::runtime_error(what), axiom(axiom_), witness(std::move(witness_)) {}

BudgetExceeded::BudgetExceeded(std::size_t b)
    : std::runtime_error("search budget of " + std::to_string(b) + " exceeded"), budget(b) {}

namespace {

void check_shape(const FiniteGroup& g, const StarTable& s) {
  if (s.size() != g.order())
    throw GroupError("star table has order " + std::to_string(s.size()) + ", group has " +
                     std::to_string(g.order()));
  for (Elem v : s.data())
    if (v < 0 || v >= g.order())
      throw GroupError("star table entry out of range");
}

} // namespace

std::optional<AxiomViolation> check_star_axioms(const FiniteGroup& g, const StarTable& s) {
  check_shape(g, s);
  const int n = g.order();
  const Elem e = g.identity();
  for (Elem x = 0; x < n; ++x)
    if (s(x, x) != e)
      return AxiomViolation{1, {x}};
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (s(x, g.mul(y, z)) != g.mul(s(x, y), g.conj(y, s(x, z))))
          return AxiomViolation{2, {x, y, z}};
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (s(g.mul(x, y), z) != g.mul(g.conj(x, s(y, z)), s(x, z)))
          return AxiomViolation{3, {x, y, z}};
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        Elem a = s(s(x, y), g.conj(y, z));
        Elem b = s(s(y, z), g.conj(z, x));
        Elem c = s(s(z, x), g.conj(x, y));
        if (g.mul(g.mul(a, b), c) != e)
          return AxiomViolation{4, {x, y, z}};
      }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (g.conj(z, s(x, y)) != s(g.conj(z, x), g.conj(z, y)))
          return AxiomViolation{5, {x, y, z}};
  return std::nullopt;
}

std::optional<AxiomViolation> check_derived_identities(const FiniteGroup& g, const StarTable& s) {
  check_shape(g, s);
  const int n = g.order();
  const Elem e = g.identity();
  for (Elem x = 0; x < n; ++x)
    if (s(e, x) != e || s(x, e) != e)
      return AxiomViolation{1, {x}};
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (g.mul(s(x, y), s(y, x)) != e)
        return AxiomViolation{2, {x, y}};
  // ^(x*y) w = ^[x,y] w for every value w = u*v
  std::set<Elem> values(s.data().begin(), s.data().end());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Elem p = s(x, y), q = g.comm(x, y);
      if (p == q)
        continue;
      for (Elem w : values)
        if (g.conj(p, w) != g.conj(q, w)) {
          for (Elem u = 0; u < n; ++u)
            for (Elem v = 0; v < n; ++v)
              if (g.conj(p, s(u, v)) != g.conj(q, s(u, v)))
                return AxiomViolation{3, {x, y, u, v}};
        }
    }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (g.comm(s(x, y), z) != s(g.comm(x, y), z))
          return AxiomViolation{4, {x, y, z}};
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Elem inv_xy = g.inv(s(x, y));
      if (s(g.inv(x), y) != g.conj(g.inv(x), inv_xy) ||
          s(x, g.inv(y)) != g.conj(g.inv(y), inv_xy))
        return AxiomViolation{5, {x, y}};
    }
  return std::nullopt;
}

StarTable trivial_star(const FiniteGroup& g) { return StarTable(g.order(), g.identity()); }

StarTable commutator_star(const FiniteGroup& g) {
  StarTable s(g.order(), g.identity());
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y)
      s.set(x, y, g.comm(x, y));
  return s;
}

StarTable expand_star_from_generators(const FiniteGroup& g, std::span<const StarAssignment> pairs) {
  return expand_star_from_generators(g, g.generator_elements(), pairs);
}

StarTable expand_star_from_generators(const FiniteGroup& g, std::span<const Elem> gens_in,
                                      std::span<const StarAssignment> pairs) {
  const int n = g.order();
  const Elem e = g.identity();
  std::vector<Elem> gens;
  for (Elem x : gens_in)
    if (x != e && std::find(gens.begin(), gens.end(), x) == gens.end())
      gens.push_back(x);
  if (subgroup_generated(g, gens).order() != n)
    throw GroupError("marked generators do not generate the group");

  // values on generator pairs
  std::map<std::pair<Elem, Elem>, Elem> val;
  for (const auto& p : pairs) {
    if (p.value < 0 || p.value >= n)
      throw GroupError("star value out of range");
    auto put = [&](Elem x, Elem y, Elem v) {
      auto [it, fresh] = val.emplace(std::make_pair(x, y), v);
      if (!fresh && it->second != v)
        throw Inconsistent("conflicting values for a generator pair", 2, {x, y});
    };
    put(p.x, p.y, p.value);
    put(p.y, p.x, g.inv(p.value));
  }
  for (Elem a : gens) {
    auto it = val.find({a, a});
    if (it != val.end() && it->second != e)
      throw Inconsistent("x*x must be 1", 1, {a});
    val[{a, a}] = e;
  }
  for (Elem a : gens)
    for (Elem b : gens)
      if (!val.count({a, b}))
        throw GroupError("no value given for " + g.element_name(a) + "*" + g.element_name(b));

  // shortest words: t = parent[t] * gens[pgen[t]]
  std::vector<Elem> order{e}, parent(std::size_t(n), -1);
  std::vector<int> pgen(std::size_t(n), -1);
  std::vector<char> seen(std::size_t(n), 0);
  seen[std::size_t(e)] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Elem t = g.mul(order[i], gens[j]);
      if (!seen[std::size_t(t)]) {
        seen[std::size_t(t)] = 1;
        parent[std::size_t(t)] = order[i];
        pgen[std::size_t(t)] = int(j);
        order.push_back(t);
      }
    }

  StarTable s(n, e);
  // generator rows by axiom 2: a*(yh) = (a*y) ^y(a*h)
  for (Elem a : gens)
    for (std::size_t i = 1; i < order.size(); ++i) {
      Elem t = order[i], y = parent[std::size_t(t)];
      Elem h = gens[std::size_t(pgen[std::size_t(t)])];
      s.set(a, t, g.mul(s(a, y), g.conj(y, val[{a, h}])));
    }
  // remaining rows by axiom 3: (ph)*z = ^p(h*z) (p*z)
  std::set<Elem> is_gen(gens.begin(), gens.end());
  for (std::size_t i = 1; i < order.size(); ++i) {
    Elem x = order[i];
    if (is_gen.count(x))
      continue;
    Elem p = parent[std::size_t(x)], h = gens[std::size_t(pgen[std::size_t(x)])];
    for (Elem z = 0; z < n; ++z)
      s.set(x, z, g.mul(g.conj(p, s(h, z)), s(p, z)));
  }
  for (const auto& [k, v] : val)
    if (s(k.first, k.second) != v)
      throw Inconsistent("generator values are not consistent with axiom 2", 2,
                         {k.first, k.second});
  if (auto bad = check_star_axioms(g, s))
    throw Inconsistent("expanded table breaks " + bad->str(), bad->axiom, bad->witness);
  return s;
}

std::vector<EquivariantMap> equivariant_homs(const FiniteGroup& g) {
  Subgroup c = commutator_subgroup(g);
  FiniteGroup h = subgroup_as_group(g, c);
  auto hgens = minimal_generating_set(h);
  auto ggens = small_generating_set(g);
  auto index_in_c = [&](Elem x) {
    auto it = std::lower_bound(c.members.begin(), c.members.end(), x);
    return Elem(it - c.members.begin());
  };
  std::vector<EquivariantMap> out;
  std::vector<Elem> imgs(hgens.size(), 0);
  while (true) {
    if (auto f = extend_hom(h, g, hgens, imgs)) {
      bool ok = true;
      for (Elem x : ggens) {
        for (std::size_t i = 0; i < c.members.size() && ok; ++i) {
          Elem cx = g.conj(x, c.members[i]);
          ok = f->images[std::size_t(index_in_c(cx))] == g.conj(x, f->images[i]);
        }
        if (!ok)
          break;
      }
      if (ok)
        out.push_back({c, f->images});
    }
    std::size_t i = 0;
    while (i < imgs.size() && ++imgs[i] == g.order())
      imgs[i++] = 0;
    if (i == imgs.size())
      break;
  }
  return out;
}

StarTable star_from_equivariant_hom(const FiniteGroup& g, const EquivariantMap& phi) {
  Subgroup c = commutator_subgroup(g);
  if (!(phi.domain == c) || phi.images.size() != c.members.size())
    throw GroupError("map must be defined on the commutator subgroup");
  FiniteGroup h = subgroup_as_group(g, c);
  if (!is_homomorphism(h, g, GroupHom{phi.images}))
    throw GroupError("map is not a homomorphism");
  auto at = [&](Elem x) {
    auto it = std::lower_bound(c.members.begin(), c.members.end(), x);
    return phi.images[std::size_t(it - c.members.begin())];
  };
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem m : c.members)
      if (at(g.conj(x, m)) != g.conj(x, at(m)))
        throw GroupError("map is not equivariant");
  StarTable s(g.order(), g.identity());
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y)
      s.set(x, y, at(g.comm(x, y)));
  if (auto bad = check_star_axioms(g, s))
    throw Inconsistent("table from the equivariant map breaks " + bad->str(), bad->axiom,
                       bad->witness);
  return s;
}

std::string to_string(StarClass c) {
  switch (c) {
  case StarClass::trivial:
    return "trivial";
  case StarClass::improper:
    return "improper";
  default:
    return "proper";
  }
}

StarClass classify_star(const FiniteGroup& g, const StarTable& s) {
  check_shape(g, s);
  if (s == trivial_star(g))
    return StarClass::trivial;
  if (s == commutator_star(g))
    return StarClass::improper;
  return StarClass::proper;
}

std::vector<MlaStructure> enumerate_stars(const FiniteGroup& g, std::size_t budget) {
  auto gens = minimal_generating_set(g);
  std::vector<std::pair<Elem, Elem>> slots;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      slots.push_back({gens[i], gens[j]});
  double total = 1;
  for (std::size_t i = 0; i < slots.size(); ++i)
    total *= g.order();
  if (total > double(budget))
    throw BudgetExceeded(budget);
  std::vector<MlaStructure> out;
  std::vector<Elem> vals(slots.size(), 0);
  while (true) {
    std::vector<StarAssignment> as;
    for (std::size_t i = 0; i < slots.size(); ++i)
      as.push_back({slots[i].first, slots[i].second, vals[i]});
    try {
      auto s = expand_star_from_generators(g, gens, as);
      out.push_back({s, classify_star(g, s)});
    } catch (const Inconsistent&) {
    }
    std::size_t i = 0;
    while (i < vals.size() && ++vals[i] == g.order())
      vals[i++] = 0;
    if (i == vals.size())
      break;
  }
  std::sort(out.begin(), out.end(),
            [](const MlaStructure& a, const MlaStructure& b) { return a.star < b.star; });
  return out;
}

bool is_lie_simple(const FiniteGroup& g, std::size_t budget) {
  if (schur_multiplier(g).trivial()) {
    for (const auto& phi : equivariant_homs(g)) {
      try {
        if (classify_star(g, star_from_equivariant_hom(g, phi)) == StarClass::proper)
          return false;
      } catch (const Inconsistent&) {
      }
    }
    return true;
  }
  for (const auto& m : enumerate_stars(g, budget))
    if (m.classification == StarClass::proper)
      return false;
  return true;
}

Subgroup star_image_subgroup(const FiniteGroup& g, const StarTable& s) {
  std::set<Elem> v(s.data().begin(), s.data().end());
  std::vector<Elem> gens(v.begin(), v.end());
  return subgroup_generated(g, gens);
}

Subgroup star_commutator_product(const FiniteGroup& g, const StarTable& s) {
  std::set<Elem> v(s.data().begin(), s.data().end());
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y)
      v.insert(g.comm(x, y));
  std::vector<Elem> gens(v.begin(), v.end());
  return subgroup_generated(g, gens);
}

std::size_t orbit_count(const FiniteGroup& g, std::span<const MlaStructure> stars) {
  auto autos = automorphisms(g);
  std::set<std::vector<Elem>> canon;
  const int n = g.order();
  for (const auto& m : stars) {
    std::vector<Elem> best;
    for (const auto& a : autos) {
      std::vector<Elem> t(std::size_t(n) * std::size_t(n));
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          t[std::size_t(a[std::size_t(x)]) * std::size_t(n) + std::size_t(a[std::size_t(y)])] =
              a[std::size_t(m.star(x, y))];
      if (best.empty() || t < best)
        best = std::move(t);
    }
    canon.insert(best);
  }
  return canon.size();
}

StarTable parse_star(const std::string& text, const FiniteGroup& g) {
  std::istringstream in(text);
  std::string line, kw;
  auto next = [&](const char* what) {
    if (!std::getline(in, line))
      throw GroupError(std::string("star file: missing ") + what);
  };
  next("header");
  {
    std::istringstream ls(line);
    std::string label;
    if (!(ls >> kw >> label) || kw != "star")
      throw GroupError("star file: expected 'star <label>'");
  }
  next("order");
  int n = 0;
  {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> kw >> n) || kw != "order" || (ls >> extra))
      throw GroupError("star file: expected 'order <n>'");
  }
  if (n != g.order())
    throw GroupError("star file: order " + std::to_string(n) + " does not match the group");
  next("table");
  {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> kw) || kw != "table" || (ls >> extra))
      throw GroupError("star file: expected 'table'");
  }
  std::vector<std::vector<Elem>> rows;
  for (int i = 0; i < n; ++i) {
    next("table row");
    std::istringstream ls(line);
    std::vector<Elem> row;
    long long v;
    while (ls >> v) {
      if (v < 0 || v >= n)
        throw GroupError("star file: entry out of range on row " + std::to_string(i));
      row.push_back(Elem(v));
    }
    if (!ls.eof() || int(row.size()) != n)
      throw GroupError("star file: row " + std::to_string(i) + " must have " +
                       std::to_string(n) + " entries");
    rows.push_back(row);
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw GroupError("star file: trailing content");
  return StarTable(rows);
}

std::string format_star(const FiniteGroup& g, const StarTable& s) {
  std::string out = "star " + g.label() + "\norder " + std::to_string(g.order()) + "\ntable\n";
  for (Elem x = 0; x < s.size(); ++x) {
    for (Elem y = 0; y < s.size(); ++y)
      out += (y ? " " : "") + std::to_string(s(x, y));
    out += '\n';
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Elem named_generator(const FiniteGroup& g, const std::string& name) {
  auto x = g.generator(name);
  if (!x)
    throw GroupError("unknown generator '" + name + "' in star");
  return *x;
}

// product of factors "name" or "name^k"; "1" is the identity
Elem parse_element(const FiniteGroup& g, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  Elem acc = g.identity();
  bool any = false;
  while (in >> tok) {
    any = true;
    if (tok == "1")
      continue;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    long long k = 1;
    if (caret != std::string::npos) {
      std::string ks = tok.substr(caret + 1);
      std::size_t used = 0;
      try {
        k = std::stoll(ks, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (ks.empty() || used != ks.size())
        throw GroupError("bad exponent in '" + tok + "'");
    }
    acc = g.mul(acc, g.pow(named_generator(g, name), k));
  }
  if (!any)
    throw GroupError("empty element in star");
  return acc;
}

} // namespace

StarTable parse_star_sugar(const std::string& text, const FiniteGroup& g) {
  std::string t = trim(text);
  if (t == "trivial")
    return trivial_star(g);
  if (t == "commutator" || t == "improper")
    return commutator_star(g);
  std::vector<StarAssignment> as;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      continue;
    auto eq = item.find('=');
    auto st = item.find('*');
    if (eq == std::string::npos || st == std::string::npos || st > eq)
      throw GroupError("star assignment must look like 'a*b=b^2', got '" + item + "'");
    Elem x = named_generator(g, trim(item.substr(0, st)));
    Elem y = named_generator(g, trim(item.substr(st + 1, eq - st - 1)));
    as.push_back({x, y, parse_element(g, item.substr(eq + 1))});
  }
  if (as.empty())
    throw GroupError("empty star description");
  // unmentioned generator pairs default to 1
  auto gens = g.generator_elements();
  for (Elem a : gens)
    for (Elem b : gens) {
      bool given = a == b;
      for (const auto& p : as)
        given |= (p.x == a && p.y == b) || (p.x == b && p.y == a);
      if (!given)
        as.push_back({a, b, g.identity()});
    }
  return expand_star_from_generators(g, as);
}

} // namespace mlschur
