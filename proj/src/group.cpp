#include "mlschur/group.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <istream>
#include <ostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "mlschur/zlinalg.hpp"

namespace mlschur {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw GroupError(msg); }

std::string word_name(const std::vector<std::pair<int, int>>& runs,
                      const std::vector<MarkedGenerator>& gens) {
  if (runs.empty())
    return "1";
  std::string out;
  for (auto [g, e] : runs) {
    if (!out.empty())
      out += ' ';
    out += gens[g].name;
    if (e != 1)
      out += '^' + std::to_string(e);
  }
  return out;
}

// Greedy subgroup: candidates are added as generators only when they enlarge
// the current subgroup.
Subgroup greedy_generate(const FiniteGroup& g, std::span<const Elem> candidates) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> members{g.identity()};
  in[g.identity()] = 1;
  std::vector<Elem> gens;
  for (Elem c : candidates) {
    if (in[c])
      continue;
    gens.push_back(c);
    // close members under right multiplication by all generators so far
    std::deque<Elem> queue(members.begin(), members.end());
    while (!queue.empty()) {
      Elem x = queue.front();
      queue.pop_front();
      for (Elem s : gens) {
        Elem y = g.mul(x, s);
        if (!in[y]) {
          in[y] = 1;
          members.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return {std::move(members), std::move(gens)};
}

} // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::string label, std::vector<std::vector<Elem>> cayley,
                         std::vector<MarkedGenerator> generators)
    : label_(std::move(label)), gens_(std::move(generators)) {
  n_ = int(cayley.size());
  if (n_ == 0)
    fail("empty Cayley table");
  table_.reserve(std::size_t(n_) * n_);
  for (const auto& row : cayley) {
    if (int(row.size()) != n_)
      fail("Cayley table is not square");
    for (Elem e : row) {
      if (e < 0 || e >= n_)
        fail("Cayley table entry out of range");
      table_.push_back(e);
    }
  }
  // Latin square
  std::vector<int> seen(n_, -1);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      Elem e = mul(i, j);
      if (seen[e] == 2 * i)
        fail("Cayley table row " + std::to_string(i) + " is not a permutation");
      seen[e] = 2 * i;
    }
  }
  std::fill(seen.begin(), seen.end(), -1);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i) {
      Elem e = mul(i, j);
      if (seen[e] == j)
        fail("Cayley table column " + std::to_string(j) + " is not a permutation");
      seen[e] = j;
    }
  id_ = -1;
  for (int e = 0; e < n_ && id_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n_ && ok; ++x)
      ok = mul(e, x) == x && mul(x, e) == x;
    if (ok)
      id_ = e;
  }
  if (id_ < 0)
    fail("no identity element");
  auto assoc = [&](Elem a, Elem b, Elem c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      fail("not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(c) + ")");
  };
  if (n_ <= 64) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          assoc(a, b, c);
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(0, n_ - 1);
    long long samples = 10LL * n_ * n_;
    for (long long s = 0; s < samples; ++s)
      assoc(pick(rng), pick(rng), pick(rng));
  }
  inv_.assign(n_, -1);
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (mul(x, y) == id_) {
        inv_[x] = y;
        break;
      }
  for (const auto& g : gens_)
    if (g.element < 0 || g.element >= n_)
      fail("generator '" + g.name + "' out of range");
  compute_names();
}

void FiniteGroup::compute_names() {
  names_.assign(n_, std::string());
  // BFS over words in the marked generators and their inverses; a word is
  // kept as runs (generator, exponent).
  std::vector<std::vector<std::pair<int, int>>> words(n_);
  std::vector<char> done(n_, 0);
  done[id_] = 1;
  std::deque<Elem> queue{id_};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (int gi = 0; gi < int(gens_.size()); ++gi)
      for (int sign : {1, -1}) {
        Elem s = sign > 0 ? gens_[gi].element : inv_[gens_[gi].element];
        Elem y = mul(x, s);
        if (done[y])
          continue;
        done[y] = 1;
        auto w = words[x];
        if (!w.empty() && w.back().first == gi)
          w.back().second += sign;
        else
          w.emplace_back(gi, sign);
        if (w.back().second == 0)
          w.pop_back();
        words[y] = std::move(w);
        queue.push_back(y);
      }
  }
  for (int x = 0; x < n_; ++x)
    names_[x] = done[x] ? word_name(words[x], gens_) : "#" + std::to_string(x);
}

Elem FiniteGroup::pow(Elem g, long long k) const {
  if (k < 0) {
    g = inv_[g];
    k = -k;
  }
  Elem r = id_;
  while (k > 0) {
    if (k & 1)
      r = mul(r, g);
    g = mul(g, g);
    k >>= 1;
  }
  return r;
}

Elem FiniteGroup::product(std::span<const Elem> elems) const {
  Elem r = id_;
  for (Elem e : elems)
    r = mul(r, e);
  return r;
}

std::vector<Elem> FiniteGroup::generator_elements() const {
  std::vector<Elem> out;
  for (const auto& g : gens_)
    out.push_back(g.element);
  return out;
}

std::optional<Elem> FiniteGroup::generator(const std::string& name) const {
  for (const auto& g : gens_)
    if (g.name == name)
      return g.element;
  return std::nullopt;
}

bool FiniteGroup::is_abelian() const {
  for (int x = 0; x < n_; ++x)
    for (int y = x + 1; y < n_; ++y)
      if (mul(x, y) != mul(y, x))
        return false;
  return true;
}

std::vector<std::vector<Elem>> FiniteGroup::cayley() const {
  std::vector<std::vector<Elem>> out(n_);
  for (int i = 0; i < n_; ++i)
    out[i].assign(table_.begin() + std::size_t(i) * n_, table_.begin() + std::size_t(i + 1) * n_);
  return out;
}

FiniteGroup FiniteGroup::relabeled(std::string label) const {
  FiniteGroup g = *this;
  g.label_ = std::move(label);
  return g;
}

FiniteGroup FiniteGroup::with_generators(std::vector<MarkedGenerator> gens) const {
  for (const auto& g : gens)
    if (g.element < 0 || g.element >= n_)
      fail("generator '" + g.name + "' out of range");
  FiniteGroup g = *this;
  g.gens_ = std::move(gens);
  g.compute_names();
  return g;
}

bool Subgroup::contains(Elem g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

long long AbelianInvariants::order() const {
  long long r = 1;
  for (long long f : factors)
    r *= f;
  return r;
}

std::string AbelianInvariants::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(factors[i]);
  }
  return s + "]";
}

std::ostream& operator<<(std::ostream& os, const AbelianInvariants& a) { return os << a.str(); }

AbelianInvariants normalize_invariants(std::span<const long long> cyclic_orders) {
  // split into prime powers, then recombine the k-th largest powers
  std::map<long long, std::vector<long long>> by_prime;
  for (long long d : cyclic_orders) {
    if (d < 1)
      throw GroupError("invariant factor must be positive");
    for (long long p = 2; p * p <= d; ++p) {
      long long q = 1;
      while (d % p == 0) {
        d /= p;
        q *= p;
      }
      if (q > 1)
        by_prime[p].push_back(q);
    }
    if (d > 1)
      by_prime[d].push_back(d);
  }
  std::size_t k = 0;
  for (auto& [p, v] : by_prime) {
    std::sort(v.rbegin(), v.rend());
    k = std::max(k, v.size());
  }
  std::vector<long long> f(k, 1);
  for (auto& [p, v] : by_prime)
    for (std::size_t i = 0; i < v.size(); ++i)
      f[i] *= v[i];
  std::reverse(f.begin(), f.end());
  return {f};
}

AbelianInvariants direct_sum(const AbelianInvariants& a, const AbelianInvariants& b) {
  std::vector<long long> all = a.factors;
  all.insert(all.end(), b.factors.begin(), b.factors.end());
  return normalize_invariants(all);
}

// ---------------------------------------------------------------------------
// constructors

FiniteGroup cyclic(int n) {
  if (n < 1)
    fail("cyclic: n must be >= 1");
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t[i][j] = (i + j) % n;
  std::vector<MarkedGenerator> gens;
  if (n > 1)
    gens.push_back({"a", 1});
  return FiniteGroup("Z" + std::to_string(n), std::move(t), std::move(gens));
}

FiniteGroup klein_four() {
  std::vector<std::vector<Elem>> t(4, std::vector<Elem>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      t[i][j] = i ^ j;
  return FiniteGroup("V4", std::move(t), {{"a", 1}, {"b", 2}});
}

FiniteGroup dihedral(int n) {
  if (n < 2)
    fail("dihedral: n must be >= 2");
  int N = 2 * n;
  std::vector<std::vector<Elem>> t(N, std::vector<Elem>(N));
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      int r = x % n, s = x / n, r2 = y % n, s2 = y / n;
      int rr = ((r + (s ? -r2 : r2)) % n + n) % n;
      t[x][y] = rr + n * ((s + s2) % 2);
    }
  return FiniteGroup("D" + std::to_string(n), std::move(t), {{"a", n}, {"b", 1}});
}

FiniteGroup dicyclic(int n) {
  if (n < 2)
    fail("dicyclic: n must be >= 2");
  int m = 2 * n, N = 4 * n;
  std::vector<std::vector<Elem>> t(N, std::vector<Elem>(N));
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      int r = x % m, s = x / m, r2 = y % m, s2 = y / m;
      int rr = r + (s ? -r2 : r2);
      if (s && s2)
        rr += n;
      rr = (rr % m + m) % m;
      t[x][y] = rr + m * ((s + s2) % 2);
    }
  return FiniteGroup("Q" + std::to_string(n), std::move(t), {{"a", m}, {"b", 1}});
}

FiniteGroup metacyclic(int m, int n, int alpha) {
  if (m < 1 || n < 1)
    fail("metacyclic: m, n must be >= 1");
  alpha = ((alpha % n) + n) % n;
  if (std::gcd(alpha, n) != 1 && n > 1)
    fail("metacyclic: alpha must be a unit mod n");
  long long p = 1;
  for (int i = 0; i < m; ++i)
    p = p * alpha % n;
  if (p % n != 1 % n)
    fail("metacyclic: alpha^m must be 1 mod n");
  // a^i b^j at i*n + j; b^j a^k = a^k b^(j alpha^k)
  std::vector<long long> apow(m + 1, 1 % n);
  for (int i = 1; i <= m; ++i)
    apow[i] = apow[i - 1] * alpha % n;
  int N = m * n;
  std::vector<std::vector<Elem>> t(N, std::vector<Elem>(N));
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      int i = x / n, j = x % n, k = y / n, l = y % n;
      t[x][y] = ((i + k) % m) * n + int((j * apow[k] + l) % n);
    }
  std::vector<MarkedGenerator> gens;
  if (m > 1)
    gens.push_back({"a", n});
  if (n > 1)
    gens.push_back({"b", 1});
  return FiniteGroup("M(" + std::to_string(m) + "," + std::to_string(n) + "," +
                         std::to_string(alpha) + ")",
                     std::move(t), std::move(gens));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  int a = g.order(), b = h.order(), N = a * b;
  std::vector<std::vector<Elem>> t(N, std::vector<Elem>(N));
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      t[x][y] = g.mul(x / b, y / b) * b + h.mul(x % b, y % b);
  std::vector<MarkedGenerator> gens;
  std::set<std::string> used;
  for (const auto& s : g.generators()) {
    gens.push_back({s.name, s.element * b + h.identity()});
    used.insert(s.name);
  }
  char next = 'a';
  for (const auto& s : h.generators()) {
    std::string name = s.name;
    while (used.count(name))
      name = std::string(1, next++);
    used.insert(name);
    gens.push_back({name, g.identity() * b + s.element});
  }
  return FiniteGroup(g.label() + "x" + h.label(), std::move(t), std::move(gens));
}

FiniteGroup sl_2_3() {
  using M = std::array<int, 4>;
  std::vector<M> mats;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          if (((a * d - b * c) % 3 + 3) % 3 == 1)
            mats.push_back({a, b, c, d});
  auto index = [&](const M& m) {
    return Elem(std::find(mats.begin(), mats.end(), m) - mats.begin());
  };
  int N = int(mats.size());
  std::vector<std::vector<Elem>> t(N, std::vector<Elem>(N));
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      const M &p = mats[x], &q = mats[y];
      M r{(p[0] * q[0] + p[1] * q[2]) % 3, (p[0] * q[1] + p[1] * q[3]) % 3,
          (p[2] * q[0] + p[3] * q[2]) % 3, (p[2] * q[1] + p[3] * q[3]) % 3};
      t[x][y] = index(r);
    }
  return FiniteGroup("SL(2,3)", std::move(t),
                     {{"a", index({1, 1, 0, 1})}, {"b", index({1, 0, 1, 1})}});
}

// ---------------------------------------------------------------------------
// structure

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> members{g.identity()};
  in[g.identity()] = 1;
  std::vector<Elem> gl;
  for (Elem s : gens)
    if (std::find(gl.begin(), gl.end(), s) == gl.end())
      gl.push_back(s);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Elem s : gl) {
      Elem y = g.mul(members[i], s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return {std::move(members), std::vector<Elem>(gens.begin(), gens.end())};
}

Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<Elem> conj;
  std::vector<char> seen(g.order(), 0);
  for (Elem s : gens)
    for (Elem x = 0; x < g.order(); ++x) {
      Elem c = g.conj(x, s);
      if (!seen[c]) {
        seen[c] = 1;
        conj.push_back(c);
      }
    }
  return greedy_generate(g, conj);
}

Subgroup center(const FiniteGroup& g) {
  std::vector<Elem> z;
  for (Elem x = 0; x < g.order(); ++x) {
    bool c = true;
    for (Elem y = 0; y < g.order() && c; ++y)
      c = g.mul(x, y) == g.mul(y, x);
    if (c)
      z.push_back(x);
  }
  return greedy_generate(g, z);
}

Subgroup commutator_subgroup(const FiniteGroup& g) {
  std::vector<Elem> comms;
  std::vector<char> seen(g.order(), 0);
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y) {
      Elem c = g.comm(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return greedy_generate(g, comms);
}

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  Subgroup s = greedy_generate(g, small_generating_set(g));
  s.members = all;
  return s;
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return {{g.identity()}, {}}; }

bool is_normal(const FiniteGroup& g, const Subgroup& n) {
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem h : n.members)
      if (!n.contains(g.conj(x, h)))
        return false;
  return true;
}

bool is_central(const FiniteGroup& g, const Subgroup& n) {
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem h : n.members)
      if (g.mul(x, h) != g.mul(h, x))
        return false;
  return true;
}

bool is_abelian(const FiniteGroup& g, const Subgroup& h) {
  for (Elem x : h.members)
    for (Elem y : h.members)
      if (g.mul(x, y) != g.mul(y, x))
        return false;
  return true;
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h, std::string label) {
  int k = h.order();
  std::vector<int> pos(g.order(), -1);
  for (int i = 0; i < k; ++i)
    pos[h.members[i]] = i;
  std::vector<std::vector<Elem>> t(k, std::vector<Elem>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int p = pos[g.mul(h.members[i], h.members[j])];
      if (p < 0)
        fail("subgroup is not closed");
      t[i][j] = p;
    }
  std::vector<MarkedGenerator> gens;
  for (Elem s : h.generators)
    gens.push_back({g.element_name(s), pos[s]});
  if (label.empty())
    label = "sub(" + g.label() + ")";
  return FiniteGroup(std::move(label), std::move(t), std::move(gens));
}

Quotient quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n))
    fail("quotient: subgroup is not normal");
  std::vector<int> coset(g.order(), -1);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (coset[x] >= 0)
      continue;
    int id = int(reps.size());
    reps.push_back(x);
    for (Elem h : n.members)
      coset[g.mul(x, h)] = id;
  }
  int k = int(reps.size());
  std::vector<std::vector<Elem>> t(k, std::vector<Elem>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      t[i][j] = coset[g.mul(reps[i], reps[j])];
  std::vector<MarkedGenerator> gens;
  for (const auto& s : g.generators())
    gens.push_back({s.name, coset[s.element]});
  FiniteGroup q(g.label() + "/N", std::move(t), std::move(gens));
  return {std::move(q), GroupHom{std::move(coset)}};
}

std::vector<Elem> small_generating_set(const FiniteGroup& g) {
  std::vector<Elem> gens;
  Subgroup cur = trivial_subgroup(g);
  while (cur.order() < g.order()) {
    Elem best = -1;
    int best_order = 0;
    for (Elem x = 0; x < g.order(); ++x) {
      if (cur.contains(x))
        continue;
      auto trial = gens;
      trial.push_back(x);
      int o = subgroup_generated(g, trial).order();
      if (o > best_order) {
        best_order = o;
        best = x;
        if (o == g.order())
          break;
      }
    }
    gens.push_back(best);
    cur = subgroup_generated(g, gens);
  }
  return gens;
}

std::vector<Elem> minimal_generating_set(const FiniteGroup& g) {
  int n = g.order();
  if (n == 1)
    return {};
  for (Elem x = 0; x < n; ++x)
    if (element_order(g, x) == n)
      return {x};
  if (n <= 256) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = x + 1; y < n; ++y) {
        Elem p[2] = {x, y};
        if (subgroup_generated(g, p).order() == n)
          return {x, y};
      }
  }
  if (n <= 64) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = x + 1; y < n; ++y)
        for (Elem z = y + 1; z < n; ++z) {
          Elem p[3] = {x, y, z};
          if (subgroup_generated(g, p).order() == n)
            return {x, y, z};
        }
  }
  return small_generating_set(g);
}

int element_order(const FiniteGroup& g, Elem x) {
  int k = 1;
  for (Elem y = x; y != g.identity(); y = g.mul(y, x))
    ++k;
  return k;
}

long long exponent(const FiniteGroup& g) {
  long long e = 1;
  for (Elem x = 0; x < g.order(); ++x)
    e = std::lcm(e, (long long)element_order(g, x));
  return e;
}

Elem conjugate(const FiniteGroup& g, Elem x, Elem y) { return g.conj(x, y); }

bool is_homomorphism(const FiniteGroup& dom, const FiniteGroup& cod, const GroupHom& f) {
  if (int(f.images.size()) != dom.order())
    return false;
  for (Elem x = 0; x < dom.order(); ++x) {
    if (f(x) < 0 || f(x) >= cod.order())
      return false;
    for (Elem y = 0; y < dom.order(); ++y)
      if (f(dom.mul(x, y)) != cod.mul(f(x), f(y)))
        return false;
  }
  return true;
}

Subgroup kernel(const FiniteGroup& dom, const FiniteGroup& cod, const GroupHom& f) {
  std::vector<Elem> k;
  for (Elem x = 0; x < dom.order(); ++x)
    if (f(x) == cod.identity())
      k.push_back(x);
  return greedy_generate(dom, k);
}

Subgroup image(const FiniteGroup& dom, const FiniteGroup& cod, const GroupHom& f) {
  std::vector<Elem> im;
  std::vector<char> seen(cod.order(), 0);
  for (Elem x = 0; x < dom.order(); ++x)
    if (!seen[f(x)]) {
      seen[f(x)] = 1;
      im.push_back(f(x));
    }
  return greedy_generate(cod, im);
}

std::optional<GroupHom> extend_hom(const FiniteGroup& dom, const FiniteGroup& cod,
                                   std::span<const Elem> gens,
                                   std::span<const Elem> gen_images) {
  if (gens.size() != gen_images.size())
    fail("extend_hom: generator/image count mismatch");
  std::vector<Elem> img(dom.order(), -1);
  img[dom.identity()] = cod.identity();
  std::deque<Elem> queue{dom.identity()};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Elem y = dom.mul(x, gens[i]);
      Elem v = cod.mul(img[x], gen_images[i]);
      if (img[y] < 0) {
        img[y] = v;
        queue.push_back(y);
      } else if (img[y] != v) {
        return std::nullopt;
      }
    }
  }
  for (Elem v : img)
    if (v < 0)
      fail("extend_hom: generators do not generate the domain");
  return GroupHom{std::move(img)};
}

AbelianInvariants abelian_invariants(const FiniteGroup& g) {
  if (!g.is_abelian())
    fail("abelian_invariants: group '" + g.label() + "' is not abelian");
  if (g.order() == 1)
    return {};
  // Schreier relations of Z^k -> G for a small generating set
  auto s = small_generating_set(g);
  std::size_t k = s.size();
  std::vector<std::vector<long long>> coord(g.order());
  coord[g.identity()].assign(k, 0);
  std::deque<Elem> queue{g.identity()};
  std::vector<std::vector<long long>> rels;
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < k; ++i) {
      Elem y = g.mul(x, s[i]);
      auto v = coord[x];
      v[i] += 1;
      if (coord[y].empty()) {
        coord[y] = std::move(v);
        queue.push_back(y);
      } else {
        for (std::size_t j = 0; j < k; ++j)
          v[j] -= coord[y][j];
        if (std::any_of(v.begin(), v.end(), [](long long c) { return c != 0; }))
          rels.push_back(std::move(v));
      }
    }
  }
  IntMatrix a(rels.size(), k);
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (std::size_t j = 0; j < k; ++j)
      a(r, j) = static_cast<long>(rels[r][j]);
  return cokernel_invariants(a);
}

AbelianInvariants abelian_invariants(const FiniteGroup& g, const Subgroup& h) {
  return abelian_invariants(subgroup_as_group(g, h));
}

AbelianInvariants abelianization_invariants(const FiniteGroup& g) {
  return abelian_invariants(quotient(g, commutator_subgroup(g)).group);
}

AbelianInvariants dual_invariants(const AbelianInvariants& a) { return a; }

AbelianInvariants hom_invariants_to_cyclic(const AbelianInvariants& a, long long m) {
  std::vector<long long> f;
  for (long long d : a.factors)
    f.push_back(std::gcd(d, m));
  return normalize_invariants(f);
}

AbelianInvariants ext_invariants_to_cyclic(const AbelianInvariants& a, long long m) {
  return hom_invariants_to_cyclic(a, m);
}

std::vector<std::vector<Elem>> automorphisms(const FiniteGroup& g) {
  auto gens = minimal_generating_set(g);
  std::vector<std::vector<Elem>> cands;
  for (Elem s : gens) {
    std::vector<Elem> c;
    int o = element_order(g, s);
    for (Elem x = 0; x < g.order(); ++x)
      if (element_order(g, x) == o)
        c.push_back(x);
    cands.push_back(std::move(c));
  }
  std::vector<std::vector<Elem>> out;
  std::vector<std::size_t> idx(gens.size(), 0);
  std::vector<Elem> imgs(gens.size());
  while (true) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      imgs[i] = cands[i][idx[i]];
    if (auto f = extend_hom(g, g, gens, imgs)) {
      std::vector<char> hit(g.order(), 0);
      bool bij = true;
      for (Elem v : f->images) {
        if (hit[v])
          bij = false;
        hit[v] = 1;
      }
      if (bij)
        out.push_back(f->images);
    }
    std::size_t i = 0;
    while (i < gens.size() && ++idx[i] == cands[i].size())
      idx[i++] = 0;
    if (i == gens.size())
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// text format

FiniteGroup parse_group(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next = [&]() -> std::string {
    if (!std::getline(in, line))
      fail("group file: unexpected end of input after line " + std::to_string(lineno));
    ++lineno;
    while (!line.empty() && std::isspace((unsigned char)line.back()))
      line.pop_back();
    return line;
  };
  std::string l1 = next();
  if (l1.rfind("group ", 0) != 0)
    fail("group file line 1: expected 'group <label>'");
  std::string label = l1.substr(6);
  std::string l2 = next();
  std::istringstream s2(l2);
  std::string kw;
  long long n = 0;
  std::string extra;
  if (!(s2 >> kw >> n) || kw != "order" || n < 1 || (s2 >> extra))
    fail("group file line 2: expected 'order <n>'");
  if (n > 100000)
    fail("group file line 2: order too large");
  if (next() != "table")
    fail("group file line 3: expected 'table'");
  std::vector<std::vector<Elem>> t(n);
  for (long long i = 0; i < n; ++i) {
    std::istringstream s(next());
    for (long long j = 0; j < n; ++j) {
      long long v;
      if (!(s >> v))
        fail("group file line " + std::to_string(lineno) + ": expected " + std::to_string(n) +
             " entries");
      t[i].push_back(Elem(v));
    }
    if (s >> extra)
      fail("group file line " + std::to_string(lineno) + ": too many entries");
  }
  return FiniteGroup(label, std::move(t));
}

FiniteGroup parse_group(const std::string& text) {
  std::istringstream in(text);
  return parse_group(in);
}

std::string format_group(const FiniteGroup& g) {
  std::ostringstream out;
  out << "group " << g.label() << "\norder " << g.order() << "\ntable\n";
  for (Elem i = 0; i < g.order(); ++i) {
    auto r = g.row(i);
    for (std::size_t j = 0; j < r.size(); ++j)
      out << (j ? " " : "") << r[j];
    out << '\n';
  }
  return out.str();
}

} // namespace mlschur
