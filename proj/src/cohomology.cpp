#include "mlschur/cohomology.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "mlschur/exterior.hpp"

namespace mlschur {

namespace {

using Terms = std::vector<std::pair<std::uint32_t, long long>>;

// merges repeated variables, drops zeros
Terms combine(Terms t) {
  std::sort(t.begin(), t.end());
  Terms out;
  for (auto [v, c] : t) {
    if (!out.empty() && out.back().first == v)
      out.back().second += c;
    else
      out.emplace_back(v, c);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second == 0; }),
            out.end());
  return out;
}

std::uint32_t fvar(int n, Elem x, Elem y) { return std::uint32_t(x * n + y); }
std::uint32_t hvar(int n, Elem x, Elem y) { return std::uint32_t(n * n + x * n + y); }

std::vector<Terms> cocycle_rows(const FiniteGroup& k) {
  const int n = k.order();
  std::vector<Terms> rows;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        auto r = combine({{fvar(n, y, z), 1},
                          {fvar(n, k.mul(x, y), z), -1},
                          {fvar(n, x, k.mul(y, z)), 1},
                          {fvar(n, x, y), -1}});
        if (!r.empty())
          rows.push_back(std::move(r));
      }
  return rows;
}

// conditions 2..5 at (x, y, z), unreduced
Terms condition(const FiniteGroup& k, const StarTable& s, int cond, Elem x, Elem y, Elem z) {
  const int n = k.order();
  auto F = [n](Elem a, Elem b) { return fvar(n, a, b); };
  auto H = [n](Elem a, Elem b) { return hvar(n, a, b); };
  if (cond == 2) {
    Elem xz = s(x, z), xy = s(x, y), yi = k.inv(y);
    return {{H(x, k.mul(y, z)), 1}, {H(x, y), -1},          {H(x, z), -1},
            {F(yi, y), 1},          {F(y, xz), -1},         {F(k.mul(y, xz), yi), -1},
            {F(xy, k.conj(y, xz)), -1}};
  }
  if (cond == 3) {
    Elem yz = s(y, z), xz = s(x, z), xi = k.inv(x);
    return {{H(k.mul(x, y), z), 1}, {H(y, z), -1},  {H(x, z), -1},
            {F(xi, x), 1},          {F(x, yz), -1}, {F(k.mul(x, yz), xi), -1},
            {F(k.conj(x, yz), xz), -1}};
  }
  if (cond == 4) {
    // f((y*x)*^xz, (x*z)*^zy) f(product of those two, (z*y)*^yx)
    Elem yx = s(y, x), xz = s(x, z), zy = s(z, y);
    Elem a = s(yx, k.conj(x, z)), b = s(xz, k.conj(z, y)), c = s(zy, k.conj(y, x));
    return {{H(yx, k.conj(x, z)), 1}, {H(xz, k.conj(z, y)), 1}, {H(zy, k.conj(y, x)), 1},
            {F(a, b), 1},             {F(k.mul(a, b), c), 1}};
  }
  Elem xy = s(x, y), zi = k.inv(z);
  return {{H(k.conj(z, x), k.conj(z, y)), 1}, {H(x, y), -1}, {F(z, xy), -1},
          {F(zi, z), 1},                      {F(k.mul(z, xy), zi), -1}};
}

// residue of an integer evaluation
Residue eval(const Terms& t, const std::vector<Residue>& v, Residue m) {
  __int128 s = 0;
  for (auto [i, c] : t)
    s += (__int128)c * v[i];
  long long r = (long long)(s % m);
  return r < 0 ? r + m : r;
}

std::vector<Residue> project(const ModVector& v, const std::vector<std::uint32_t>& free) {
  std::vector<Residue> out;
  out.reserve(free.size());
  for (auto i : free)
    out.push_back(v[i]);
  return out;
}

// Z/m-linear data for one modulus: the solution space of a system together
// with the coordinates (free variables) that determine a solution.
struct System {
  Residue m;
  std::size_t vars;
  mutable ModKernelSolver solver;
  std::vector<std::uint32_t> free;
  std::vector<ModVector> kernel;

  System(std::size_t nv, Residue mod, const std::vector<Terms>& rows)
      : m(mod), vars(nv), solver(nv, mod) {
    for (const auto& r : rows)
      solver.add_row(r);
    kernel = solver.kernel();
    free = solver.free_variables();
  }

  std::vector<ModVector> projected(const std::vector<ModVector>& vs) const {
    std::vector<ModVector> out;
    for (const auto& v : vs)
      out.push_back(project(v, free));
    return out;
  }
};

// indicators of the elements != 1 (all elements when include_identity)
std::vector<ModVector> coboundaries(const FiniteGroup& k, const StarTable* s, Residue m,
                                    bool include_identity) {
  const int n = k.order();
  std::vector<ModVector> out;
  for (Elem a = 0; a < n; ++a) {
    if (a == k.identity() && !include_identity)
      continue;
    Cochain g{1, m, std::vector<Residue>(std::size_t(n), 0)};
    g.values[std::size_t(a)] = 1;
    if (s) {
      auto p = coboundary_pair(k, *s, g);
      ModVector v = p.f;
      v.insert(v.end(), p.h.begin(), p.h.end());
      out.push_back(std::move(v));
    } else {
      out.push_back(bar_differential(k, g).values);
    }
  }
  return out;
}

CohomologyGroup finish_group(const System& sys, const std::vector<ModVector>& b, int n,
                             bool ml) {
  auto q = subquotient(sys.projected(sys.kernel), sys.projected(b), sys.m);
  CohomologyGroup out{sys.m, q.invariants, {}};
  for (const auto& r : q.representatives) {
    ModVector v = sys.solver.lift(r);
    MlCocyclePair p{sys.m, {}, {}};
    std::size_t nn = std::size_t(n) * std::size_t(n);
    p.f.assign(v.begin(), v.begin() + std::ptrdiff_t(nn));
    if (ml)
      p.h.assign(v.begin() + std::ptrdiff_t(nn), v.end());
    out.generators.push_back(std::move(p));
  }
  return out;
}

System ml_system(const FiniteGroup& k, const StarTable& s, Residue m) {
  const int n = k.order();
  return System(2 * std::size_t(n) * std::size_t(n), m, ml_condition_rows(k, s));
}

} // namespace

Cochain bar_differential(const FiniteGroup& k, const Cochain& c) {
  const int n = k.order();
  const Residue m = c.modulus;
  auto r = [m](long long v) { return mod_reduce(v, m); };
  if (c.degree == 1) {
    if (c.values.size() != std::size_t(n))
      throw std::invalid_argument("1-cochain has the wrong size");
    Cochain out{2, m, std::vector<Residue>(std::size_t(n) * std::size_t(n))};
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        out.values[fvar(n, x, y)] = r(c(y) - c(k.mul(x, y)) + c(x));
    return out;
  }
  if (c.degree == 2) {
    if (c.values.size() != std::size_t(n) * std::size_t(n))
      throw std::invalid_argument("2-cochain has the wrong size");
    Cochain out{3, m, std::vector<Residue>(std::size_t(n) * std::size_t(n) * std::size_t(n))};
    auto f = [&](Elem x, Elem y) { return c.values[fvar(n, x, y)]; };
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        for (Elem z = 0; z < n; ++z)
          out.values[(std::size_t(x) * std::size_t(n) + std::size_t(y)) * std::size_t(n) +
                     std::size_t(z)] = r(f(y, z) - f(k.mul(x, y), z) + f(x, k.mul(y, z)) - f(x, y));
    return out;
  }
  throw std::invalid_argument("bar_differential: degree must be 1 or 2");
}

CohomologyGroup h2_group(const FiniteGroup& k, Residue m) {
  if (m < 2)
    throw std::invalid_argument("modulus must be >= 2");
  const int n = k.order();
  System sys(std::size_t(n) * std::size_t(n), m, cocycle_rows(k));
  return finish_group(sys, coboundaries(k, nullptr, m, true), n, false);
}

bool universal_coefficients_check(const FiniteGroup& k, Residue m) {
  auto h2 = h2_group(k, m).invariants;
  auto ext = ext_invariants_to_cyclic(abelianization_invariants(k), m);
  auto hom = hom_invariants_to_cyclic(schur_multiplier(k), m);
  return h2 == direct_sum(ext, hom);
}

std::vector<std::vector<std::pair<std::uint32_t, long long>>>
ml_condition_rows(const FiniteGroup& k, const StarTable& s, bool include_cocycle) {
  const int n = k.order();
  const Elem e = k.identity();
  std::vector<Terms> rows;
  if (include_cocycle)
    rows = cocycle_rows(k);
  auto push = [&](Terms t) {
    t = combine(std::move(t));
    if (!t.empty())
      rows.push_back(std::move(t));
  };
  for (Elem x = 0; x < n; ++x) {
    push({{hvar(n, x, e), 1}});
    push({{hvar(n, e, x), 1}});
    push({{hvar(n, x, x), 1}});
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        for (int cond = 2; cond <= 5; ++cond)
          push(condition(k, s, cond, x, y, z));
  return rows;
}

std::optional<ConditionViolation> ml_cocycle_check(const FiniteGroup& k, const StarTable& s,
                                                   const MlCocyclePair& p) {
  const int n = k.order();
  const Residue m = p.modulus;
  const std::size_t nn = std::size_t(n) * std::size_t(n);
  if (p.f.size() != nn || p.h.size() != nn)
    throw std::invalid_argument("cocycle pair has the wrong size");
  std::vector<Residue> v = p.f;
  v.insert(v.end(), p.h.begin(), p.h.end());
  // condition 0
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        Terms t{{fvar(n, y, z), 1},
                {fvar(n, k.mul(x, y), z), -1},
                {fvar(n, x, k.mul(y, z)), 1},
                {fvar(n, x, y), -1}};
        if (eval(t, v, m))
          return ConditionViolation{0, {x, y, z}};
      }
  const Elem e = k.identity();
  for (Elem x = 0; x < n; ++x)
    if (p.h[fvar(n, x, e)] || p.h[fvar(n, e, x)] || p.h[fvar(n, x, x)])
      return ConditionViolation{1, {x}};
  for (int cond = 2; cond <= 5; ++cond)
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        for (Elem z = 0; z < n; ++z) {
          Terms t = condition(k, s, cond, x, y, z);
          if (eval(t, v, m))
            return ConditionViolation{cond, {x, y, z}};
        }
  return std::nullopt;
}

MlCocyclePair coboundary_pair(const FiniteGroup& k, const StarTable& s, const Cochain& g) {
  const int n = k.order();
  if (g.degree != 1 || g.values.size() != std::size_t(n))
    throw std::invalid_argument("coboundary_pair needs a 1-cochain");
  if (g(k.identity()) != 0)
    throw std::invalid_argument("coboundary_pair needs an identity-preserving map");
  MlCocyclePair p{g.modulus, bar_differential(k, g).values,
                  std::vector<Residue>(std::size_t(n) * std::size_t(n))};
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      p.h[fvar(n, x, y)] = mod_reduce(-g(s(x, y)), g.modulus);
  return p;
}

CohomologyGroup h2ml_group(const FiniteGroup& k, const StarTable& s, Residue m) {
  if (m < 2)
    throw std::invalid_argument("modulus must be >= 2");
  auto sys = ml_system(k, s, m);
  return finish_group(sys, coboundaries(k, &s, m, false), k.order(), true);
}

AbelianInvariants ptilde_kernel(const FiniteGroup& k, const StarTable& s, Residue m) {
  const int n = k.order();
  const std::size_t nn = std::size_t(n) * std::size_t(n);
  auto sys = ml_system(k, s, m);
  // Z0 = cocycles with f = 0
  auto rows = ml_condition_rows(k, s, false);
  for (std::size_t i = 0; i < nn; ++i)
    rows.push_back({{std::uint32_t(i), 1}});
  System z0(2 * nn, m, rows);
  auto b = coboundaries(k, &s, m, false);
  std::vector<ModVector> gens = b;
  gens.insert(gens.end(), z0.kernel.begin(), z0.kernel.end());
  return subquotient_invariants(sys.projected(gens), sys.projected(b), m);
}

AbelianInvariants transition_image(const FiniteGroup& k, const StarTable& s, Residue m,
                                   Residue factor) {
  if (m < 2 || factor < 1)
    throw std::invalid_argument("transition_image: need m >= 2, k >= 1");
  const Residue big = m * factor;
  auto small = ml_system(k, s, m);
  auto large = ml_system(k, s, big);
  auto b = coboundaries(k, &s, big, false);
  std::vector<ModVector> gens = b;
  for (const auto& z : small.kernel) {
    ModVector v(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      v[i] = z[i] * factor;
    gens.push_back(std::move(v));
  }
  return subquotient_invariants(large.projected(gens), large.projected(b), big);
}

NoStabilization::NoStabilization(int t)
    : std::runtime_error("coefficient tower did not stabilize by t = " + std::to_string(t)),
      t_max(t) {}

AbelianInvariants tilde_schur(const FiniteGroup& k, const StarTable& s, int t_max) {
  const Residue N = k.order();
  if (N == 1)
    return {};
  // images D_t of Z_{N^t} -> Z_{N^{t+1}}; consecutive images share systems
  std::map<Residue, std::unique_ptr<System>> systems;
  auto get = [&](Residue m) -> System& {
    auto& p = systems[m];
    if (!p)
      p = std::make_unique<System>(ml_system(k, s, m));
    return *p;
  };
  auto image = [&](Residue m) {
    System& small = get(m);
    System& large = get(m * N);
    auto b = coboundaries(k, &s, m * N, false);
    std::vector<ModVector> gens = b;
    for (const auto& z : small.kernel) {
      ModVector v(z.size());
      for (std::size_t i = 0; i < z.size(); ++i)
        v[i] = z[i] * N;
      gens.push_back(std::move(v));
    }
    auto inv = subquotient_invariants(large.projected(gens), large.projected(b), m * N);
    systems.erase(m);  // no longer needed
    return inv;
  };
  Residue m = N;
  AbelianInvariants prev = image(m);
  for (int t = 2; t <= t_max; ++t) {
    m *= N;
    AbelianInvariants cur = image(m);
    if (cur == prev)
      return prev;
    prev = cur;
  }
  throw NoStabilization(t_max);
}

IntegralTilde tilde_schur_integral(const FiniteGroup& k, const StarTable& s) {
  const int n = k.order();
  const std::size_t cols = 2 * std::size_t(n) * std::size_t(n);
  auto rows = ml_condition_rows(k, s);
  IntMatrix c(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (auto [v, x] : rows[i])
      c(i, v) = static_cast<long>(x);
  auto d = smith_diagonal(c);
  IntegralTilde out;
  std::vector<long long> tors;
  for (const auto& x : d)
    if (x > 1)
      tors.push_back(x.get_si());
  out.torsion = normalize_invariants(tors);
  // rank of the coboundary map g -> (delta g, g*) on identity-preserving g
  IntMatrix g(cols, std::size_t(n));
  for (Elem a = 0; a < n; ++a) {
    if (a == k.identity())
      continue;
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        long long dv = (y == a) - (k.mul(x, y) == a) + (x == a);
        g(fvar(n, x, y), std::size_t(a)) += static_cast<long>(dv);
        g(hvar(n, x, y), std::size_t(a)) -= (s(x, y) == a);
      }
  }
  out.complete = d.size() + smith_diagonal(g).size() == cols;
  return out;
}

std::optional<std::vector<Residue>> lift_h(const FiniteGroup& k, const StarTable& s,
                                           const Cochain& f, Residue m_target) {
  const int n = k.order();
  const std::size_t nn = std::size_t(n) * std::size_t(n);
  if (f.degree != 2 || f.values.size() != nn)
    throw std::invalid_argument("lift_h needs a 2-cochain");
  if (f.modulus < 1 || m_target % f.modulus != 0)
    throw std::invalid_argument("lift_h: modulus must divide the target modulus");
  const Residue scale = m_target / f.modulus;
  std::vector<Residue> fv(nn);
  for (std::size_t i = 0; i < nn; ++i)
    fv[i] = mod_reduce((long long)f.values[i] * scale, m_target);
  auto full = ml_condition_rows(k, s, false);
  std::vector<SparseRow> rows;
  std::vector<Residue> rhs;
  for (const auto& r : full) {
    SparseRow hr;
    __int128 fpart = 0;
    for (auto [v, c] : r) {
      if (v < nn)
        fpart += (__int128)c * fv[v];
      else
        hr.emplace_back(std::uint32_t(v - nn), mod_reduce(c, m_target));
    }
    long long rem = (long long)(fpart % m_target);
    rows.push_back(std::move(hr));
    rhs.push_back(mod_reduce(-rem, m_target));
  }
  return solve_affine_mod(rows, rhs, nn, m_target);
}

bool kernel_exact_sequence_check(const FiniteGroup& k, const StarTable& s, Residue m) {
  auto e = exterior_square(k);
  auto expected = hom_invariants_to_cyclic(mod_j_dual_invariants(e, s), m);
  return ptilde_kernel(k, s, m) == expected;
}

} // namespace mlschur
