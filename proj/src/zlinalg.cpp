#include "mlschur/zlinalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace mlschur {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.reserve(r_ * c_);
  for (const auto& row : rows) {
    if (row.size() != c_)
      throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long long v : row)
      a_.emplace_back(static_cast<long>(v));
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (c_ != o.r_)
    throw std::invalid_argument("IntMatrix: dimension mismatch");
  IntMatrix p(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0)
        continue;
      for (std::size_t j = 0; j < o.c_; ++j)
        p(i, j) += a * o(k, j);
    }
  return p;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const BigInt& v) { return v == 0; });
}

std::string IntMatrix::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < r_; ++i) {
    out << '[';
    for (std::size_t j = 0; j < c_; ++j)
      out << (j ? " " : "") << (*this)(i, j).get_str();
    out << "]\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Smith normal form over Z

namespace {

// Elementary operations on D, mirrored onto the transforms when present.
struct SmithState {
  IntMatrix& D;
  IntMatrix* U;
  IntMatrix* Uinv;
  IntMatrix* V;
  IntMatrix* Vinv;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j)
      return;
    for (std::size_t c = 0; c < D.cols(); ++c)
      std::swap(D(i, c), D(j, c));
    if (U) {
      for (std::size_t c = 0; c < U->cols(); ++c)
        std::swap((*U)(i, c), (*U)(j, c));
      for (std::size_t r = 0; r < Uinv->rows(); ++r)
        std::swap((*Uinv)(r, i), (*Uinv)(r, j));
    }
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j)
      return;
    for (std::size_t r = 0; r < D.rows(); ++r)
      std::swap(D(r, i), D(r, j));
    if (V) {
      for (std::size_t r = 0; r < V->rows(); ++r)
        std::swap((*V)(r, i), (*V)(r, j));
      for (std::size_t c = 0; c < Vinv->cols(); ++c)
        std::swap((*Vinv)(i, c), (*Vinv)(j, c));
    }
  }
  // row dst += k * row src
  void add_row(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0)
      return;
    for (std::size_t c = 0; c < D.cols(); ++c)
      if (D(src, c) != 0)
        D(dst, c) += k * D(src, c);
    if (U) {
      for (std::size_t c = 0; c < U->cols(); ++c)
        (*U)(dst, c) += k * (*U)(src, c);
      for (std::size_t r = 0; r < Uinv->rows(); ++r)
        (*Uinv)(r, src) -= k * (*Uinv)(r, dst);
    }
  }
  // col dst += k * col src
  void add_col(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0)
      return;
    for (std::size_t r = 0; r < D.rows(); ++r)
      if (D(r, src) != 0)
        D(r, dst) += k * D(r, src);
    if (V) {
      for (std::size_t r = 0; r < V->rows(); ++r)
        (*V)(r, dst) += k * (*V)(r, src);
      for (std::size_t c = 0; c < Vinv->cols(); ++c)
        (*Vinv)(src, c) -= k * (*Vinv)(dst, c);
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < D.cols(); ++c)
      D(i, c) = -D(i, c);
    if (U) {
      for (std::size_t c = 0; c < U->cols(); ++c)
        (*U)(i, c) = -(*U)(i, c);
      for (std::size_t r = 0; r < Uinv->rows(); ++r)
        (*Uinv)(r, i) = -(*Uinv)(r, i);
    }
  }

  void run() {
    std::size_t rows = D.rows(), cols = D.cols();
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
      // global pivot: smallest |entry|, ties by row then column
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (D(i, j) != 0 && (pi == rows || mpz_cmpabs(D(i, j).get_mpz_t(), D(pi, pj).get_mpz_t()) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == rows)
        return;
      swap_rows(t, pi);
      swap_cols(t, pj);
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (D(i, t) != 0) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
            add_row(i, t, -q);
            if (D(i, t) != 0)
              clean = false;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(t, j) != 0) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
            add_col(j, t, -q);
            if (D(t, j) != 0)
              clean = false;
          }
        if (!clean) {
          // bring the smallest remainder in row/column t to the pivot
          std::size_t bi = t, bj = t;
          for (std::size_t i = t + 1; i < rows; ++i)
            if (D(i, t) != 0 && mpz_cmpabs(D(i, t).get_mpz_t(), D(bi, bj).get_mpz_t()) < 0) {
              bi = i;
              bj = t;
            }
          for (std::size_t j = t + 1; j < cols; ++j)
            if (D(t, j) != 0 && mpz_cmpabs(D(t, j).get_mpz_t(), D(bi, bj).get_mpz_t()) < 0) {
              bi = t;
              bj = j;
            }
          swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        // divisibility of the remaining block
        bool fixed = false;
        for (std::size_t i = t + 1; i < rows && !fixed; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
              add_row(t, i, 1);
              fixed = true;
              break;
            }
        if (!fixed)
          break;
      }
      if (D(t, t) < 0)
        negate_row(t);
    }
  }
};

// Row-echelon basis of the row space (Bezout row operations), used to shrink
// tall matrices before the full Smith reduction.
IntMatrix echelon_rows(const IntMatrix& a) {
  std::size_t c = a.cols();
  std::vector<std::vector<BigInt>> piv(c);  // pivot row by leading column
  std::vector<BigInt> row(c);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t j = 0; j < c; ++j)
      row[j] = a(r, j);
    for (std::size_t j = 0; j < c; ++j) {
      if (row[j] == 0)
        continue;
      if (piv[j].empty()) {
        if (row[j] < 0)
          for (auto& v : row)
            v = -v;
        piv[j] = row;
        break;
      }
      auto& p = piv[j];
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p[j].get_mpz_t(),
                 row[j].get_mpz_t());
      BigInt pa = p[j] / g, rb = row[j] / g;
      for (std::size_t k = j; k < c; ++k) {
        BigInt np = s * p[k] + t * row[k];
        BigInt nr = pa * row[k] - rb * p[k];
        p[k] = std::move(np);
        row[k] = std::move(nr);
      }
    }
  }
  std::size_t n = 0;
  for (const auto& p : piv)
    n += !p.empty();
  IntMatrix out(n, c);
  std::size_t i = 0;
  for (const auto& p : piv)
    if (!p.empty()) {
      for (std::size_t j = 0; j < c; ++j)
        out(i, j) = p[j];
      ++i;
    }
  return out;
}

} // namespace

std::vector<BigInt> SmithDecomposition::diagonal() const {
  std::vector<BigInt> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0)
      d.push_back(D(i, i));
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  SmithDecomposition s{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols()),
                       IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
  SmithState st{s.D, &s.U, &s.Uinv, &s.V, &s.Vinv};
  st.run();
  return s;
}

std::vector<BigInt> smith_diagonal(IntMatrix a) {
  if (a.rows() > a.cols())
    a = echelon_rows(a);
  SmithState st{a, nullptr, nullptr, nullptr, nullptr};
  st.run();
  std::vector<BigInt> d;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (a(i, i) != 0)
      d.push_back(a(i, i));
  return d;
}

BigInt abs_determinant(const IntMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("abs_determinant: matrix is not square");
  auto d = smith_diagonal(a);
  if (d.size() < a.rows())
    return 0;
  BigInt r = 1;
  for (const auto& v : d)
    r *= v;
  return r;
}

AbelianInvariants cokernel_invariants(const IntMatrix& a) {
  auto d = smith_diagonal(a);
  if (d.size() < a.cols())
    throw std::domain_error("cokernel is infinite");
  AbelianInvariants out;
  for (const auto& v : d)
    if (v != 1) {
      if (!v.fits_slong_p())
        throw std::overflow_error("invariant factor exceeds 64 bits");
      out.factors.push_back(v.get_si());
    }
  return out;
}

// ---------------------------------------------------------------------------
// Z/m helpers

namespace {

struct Egcd {
  __int128 g, s, t;
};

// g = s a + t b, g >= 0
Egcd egcd(__int128 a, __int128 b) {
  __int128 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    __int128 q = a / b;
    __int128 r = a - q * b;
    a = b;
    b = r;
    __int128 ns = s0 - q * s1, nt = t0 - q * t1;
    s0 = s1;
    s1 = ns;
    t0 = t1;
    t1 = nt;
  }
  if (a < 0)
    return {-a, -s0, -t0};
  return {a, s0, t0};
}

Residue red(__int128 v, Residue m) {
  v %= m;
  return Residue(v < 0 ? v + m : v);
}

Residue gcd_m(Residue a, Residue m) { return std::gcd(a, m); }

using Dense = std::vector<ModVector>;

// Bezout combination of rows p (pivot) and r at column j: afterwards p[j] =
// gcd and r[j] = 0. Works on columns >= from.
void bezout_rows(ModVector& p, ModVector& r, std::size_t j, Residue m, std::size_t from = 0) {
  Residue a = p[j], b = r[j];
  if (b == 0)
    return;
  if (a != 0 && b % a == 0) {
    Residue q = m - (b / a) % m;
    for (std::size_t k = from; k < p.size(); ++k)
      if (p[k])
        r[k] = Residue((r[k] + (__int128)q * p[k]) % m);
    return;
  }
  auto e = egcd(a, b);
  Residue s = red(e.s, m), t = red(e.t, m);
  Residue u = red(-(b / e.g), m), v = red(a / e.g, m);
  for (std::size_t k = from; k < p.size(); ++k) {
    Residue pk = p[k], rk = r[k];
    if (!pk && !rk)
      continue;
    p[k] = Residue(((__int128)s * pk + (__int128)t * rk) % m);
    r[k] = Residue(((__int128)u * pk + (__int128)v * rk) % m);
  }
}

// same on columns i (pivot) and j of a dense matrix, mirrored on tracked V
void bezout_cols(Dense& M, Dense* V, std::size_t t, std::size_t j, std::size_t pivot_row,
                 Residue m) {
  Residue a = M[pivot_row][t], b = M[pivot_row][j];
  if (b == 0)
    return;
  auto apply = [&](Dense& X, Residue s, Residue tt, Residue u, Residue v) {
    for (auto& row : X) {
      Residue xa = row[t], xb = row[j];
      if (!xa && !xb)
        continue;
      row[t] = Residue(((__int128)s * xa + (__int128)tt * xb) % m);
      row[j] = Residue(((__int128)u * xa + (__int128)v * xb) % m);
    }
  };
  if (a != 0 && b % a == 0) {
    Residue q = m - (b / a) % m;
    apply(M, 1, 0, q, 1);
    if (V)
      apply(*V, 1, 0, q, 1);
    return;
  }
  auto e = egcd(a, b);
  Residue s = red(e.s, m), tt = red(e.t, m);
  Residue u = red(-(b / e.g), m), v = red(a / e.g, m);
  apply(M, s, tt, u, v);
  if (V)
    apply(*V, s, tt, u, v);
}

// Diagonalizes M over Z/m (not necessarily with the divisibility chain).
// Returns the diagonal; V tracks column operations (M_orig * V = diag form).
std::vector<Residue> diagonalize_mod(Dense& M, std::size_t cols, Dense* V, Residue m) {
  std::size_t rows = M.size();
  std::vector<Residue> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // pivot: minimal gcd with m, ties by row then column
    std::size_t pi = rows, pj = cols;
    Residue best = m;
    for (std::size_t i = t; i < rows && best > 1; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (M[i][j] != 0) {
          Residue g = gcd_m(M[i][j], m);
          if (g < best) {
            best = g;
            pi = i;
            pj = j;
            if (g == 1)
              break;
          }
        }
    if (pi == rows)
      break;
    std::swap(M[t], M[pi]);
    if (pj != t) {
      for (auto& row : M)
        std::swap(row[t], row[pj]);
      if (V)
        for (auto& row : *V)
          std::swap(row[t], row[pj]);
    }
    while (true) {
      for (std::size_t i = t + 1; i < rows; ++i)
        if (M[i][t] != 0)
          bezout_rows(M[t], M[i], t, m);
      for (std::size_t j = t + 1; j < cols; ++j)
        if (M[t][j] != 0)
          bezout_cols(M, V, t, j, t, m);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        clean = M[i][t] == 0;
      if (clean)
        break;
    }
    diag.push_back(M[t][t]);
  }
  return diag;
}

// Kernel of a dense matrix over Z/m with `cols` columns.
std::vector<ModVector> dense_kernel(Dense M, std::size_t cols, Residue m) {
  Dense V(cols, ModVector(cols, 0));
  for (std::size_t i = 0; i < cols; ++i)
    V[i][i] = 1 % m;
  auto diag = diagonalize_mod(M, cols, &V, m);
  std::vector<ModVector> out;
  for (std::size_t t = 0; t < cols; ++t) {
    Residue scale = 1;
    if (t < diag.size()) {
      Residue g = gcd_m(diag[t], m);
      scale = m / g;
      if (scale == m)
        continue;
    }
    ModVector v(cols);
    bool nz = false;
    for (std::size_t i = 0; i < cols; ++i) {
      v[i] = mul_mod(V[i][t], scale, m);
      nz |= v[i] != 0;
    }
    if (nz)
      out.push_back(std::move(v));
  }
  return out;
}

} // namespace

std::optional<Residue> inverse_mod(Residue u, Residue m) {
  if (m == 1)
    return 0;
  auto e = egcd(mod_reduce(u, m), m);
  if (e.g != 1)
    return std::nullopt;
  return red(e.s, m);
}

// ---------------------------------------------------------------------------
// ModKernelSolver

ModKernelSolver::ModKernelSolver(std::size_t num_vars, Residue modulus)
    : n_(num_vars), m_(modulus), pivot_of_(num_vars, -1), occ_(num_vars),
      acc_(num_vars, 0) {
  if (modulus < 1)
    throw std::invalid_argument("ModKernelSolver: modulus must be >= 1");
}

SparseRow ModKernelSolver::reduce(const SparseRow& row) const {
  touched_.clear();
  auto add = [&](std::uint32_t v, Residue c) {
    if (acc_[v] == 0)
      touched_.push_back(v);
    acc_[v] = Residue((acc_[v] + (__int128)c) % m_);
    if (acc_[v] == 0)
      acc_[v] = m_;  // keep "touched" marker; fixed below
  };
  for (auto [v, c] : row) {
    if (c == 0)
      continue;
    int p = pivot_of_[v];
    if (p < 0)
      add(v, c);
    else
      for (auto [w, e] : exprs_[p])
        add(w, mul_mod(c, e, m_));
  }
  SparseRow out;
  for (auto v : touched_) {
    Residue c = acc_[v] % m_;
    acc_[v] = 0;
    if (c)
      out.emplace_back(v, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void ModKernelSolver::add_row(const SparseRow& row) {
  if (finished_)
    throw std::logic_error("ModKernelSolver: rows added after kernel()");
  for (auto [v, c] : row)
    if (v >= n_)
      throw std::out_of_range("ModKernelSolver: variable index out of range");
  SparseRow r = reduce(row);
  if (r.empty())
    return;
  std::size_t best = r.size();
  for (std::size_t i = 0; i < r.size(); ++i)
    if (std::gcd(r[i].second, m_) == 1 &&
        (best == r.size() || occ_[r[i].first].size() < occ_[r[best].first].size()))
      best = i;
  if (best == r.size())
    residual_.push_back(std::move(r));
  else
    make_pivot(std::move(r), best);
}

void ModKernelSolver::add_row(std::span<const std::pair<std::uint32_t, long long>> terms) {
  SparseRow r;
  r.reserve(terms.size());
  for (auto [v, c] : terms)
    r.emplace_back(v, mod_reduce(c, m_));
  add_row(r);
}

void ModKernelSolver::make_pivot(SparseRow row, std::size_t unit_pos) {
  auto [v, c] = row[unit_pos];
  Residue neg_inv = m_ - *inverse_mod(c, m_);
  if (neg_inv == m_)
    neg_inv = 0;
  Expr e;
  e.reserve(row.size() - 1);
  for (std::size_t i = 0; i < row.size(); ++i)
    if (i != unit_pos)
      e.emplace_back(row[i].first, mul_mod(row[i].second, neg_inv, m_));
  std::uint32_t idx = std::uint32_t(pivots_.size());
  pivots_.push_back(v);
  exprs_.push_back(std::move(e));
  substitute_into_pivots(v);
  pivot_of_[v] = int(idx);
  for (auto [w, coeff] : exprs_[idx])
    occ_[w].push_back(idx);
}

void ModKernelSolver::substitute_into_pivots(std::uint32_t var) {
  const std::uint32_t self = std::uint32_t(pivots_.size() - 1);
  const Expr& ne = exprs_[self];
  for (std::uint32_t p : occ_[var]) {
    Expr& pe = exprs_[p];
    auto it = std::lower_bound(pe.begin(), pe.end(), std::make_pair(var, Residue(0)));
    if (it == pe.end() || it->first != var)
      continue;  // stale occurrence
    Residue a = it->second;
    pe.erase(it);
    Expr merged;
    merged.reserve(pe.size() + ne.size());
    std::size_t i = 0, j = 0;
    while (i < pe.size() || j < ne.size()) {
      if (j == ne.size() || (i < pe.size() && pe[i].first < ne[j].first)) {
        merged.push_back(pe[i++]);
      } else if (i == pe.size() || ne[j].first < pe[i].first) {
        Residue c = mul_mod(a, ne[j].second, m_);
        if (c) {
          merged.emplace_back(ne[j].first, c);
          occ_[ne[j].first].push_back(p);
        }
        ++j;
      } else {
        Residue c = Residue((pe[i].second + (__int128)a * ne[j].second) % m_);
        if (c)
          merged.emplace_back(pe[i].first, c);
        ++i;
        ++j;
      }
    }
    pe = std::move(merged);
  }
  occ_[var].clear();
  occ_[var].shrink_to_fit();
}

void ModKernelSolver::finish() {
  if (finished_)
    return;
  finished_ = true;
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<SparseRow> keep;
    for (auto& r0 : residual_) {
      SparseRow r = reduce(r0);
      if (r.empty())
        continue;
      std::size_t best = r.size();
      for (std::size_t i = 0; i < r.size(); ++i)
        if (std::gcd(r[i].second, m_) == 1 &&
            (best == r.size() || occ_[r[i].first].size() < occ_[r[best].first].size()))
          best = i;
      if (best == r.size()) {
        keep.push_back(std::move(r));
      } else {
        make_pivot(std::move(r), best);
        progress = true;
      }
    }
    residual_ = std::move(keep);
  }
  // residual rows only mention free variables now (re-reduce once more since
  // later pivots may have been created after a row was kept)
  for (auto& r : residual_)
    r = reduce(r);
}

std::vector<std::uint32_t> ModKernelSolver::free_variables() {
  finish();
  std::vector<std::uint32_t> f;
  for (std::uint32_t v = 0; v < n_; ++v)
    if (pivot_of_[v] < 0)
      f.push_back(v);
  return f;
}

ModVector ModKernelSolver::lift(std::span<const Residue> free_values) {
  auto f = free_variables();
  if (free_values.size() != f.size())
    throw std::invalid_argument("ModKernelSolver::lift: wrong number of values");
  ModVector x(n_, 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    x[f[i]] = mod_reduce(free_values[i], m_);
  for (std::size_t p = 0; p < pivots_.size(); ++p) {
    __int128 s = 0;
    for (auto [w, c] : exprs_[p])
      s += (__int128)c * x[w];
    x[pivots_[p]] = red(s, m_);
  }
  return x;
}

std::vector<ModVector> ModKernelSolver::kernel() {
  auto f = free_variables();
  if (m_ == 1)
    return {};
  std::vector<int> col_of(n_, -1);
  std::vector<std::uint32_t> constrained;
  for (const auto& r : residual_)
    for (auto [v, c] : r)
      if (col_of[v] < 0) {
        col_of[v] = int(constrained.size());
        constrained.push_back(v);
      }
  std::sort(constrained.begin(), constrained.end());
  for (std::size_t i = 0; i < constrained.size(); ++i)
    col_of[constrained[i]] = int(i);
  std::size_t q = constrained.size();
  // incremental echelon of the residual rows
  std::vector<ModVector> piv(q);
  for (const auto& r : residual_) {
    ModVector row(q, 0);
    for (auto [v, c] : r)
      row[col_of[v]] = c;
    for (std::size_t j = 0; j < q; ++j) {
      if (row[j] == 0)
        continue;
      if (piv[j].empty()) {
        piv[j] = std::move(row);
        break;
      }
      bezout_rows(piv[j], row, j, m_, j);
    }
  }
  Dense M;
  for (auto& p : piv)
    if (!p.empty())
      M.push_back(std::move(p));
  auto small = dense_kernel(std::move(M), q, m_);

  std::vector<Residue> fv_index(n_, -1);
  for (std::size_t i = 0; i < f.size(); ++i)
    fv_index[f[i]] = Residue(i);
  std::vector<ModVector> out;
  ModVector vals(f.size(), 0);
  for (std::uint32_t v : f)
    if (col_of[v] < 0) {
      vals[fv_index[v]] = 1;
      out.push_back(lift(vals));
      vals[fv_index[v]] = 0;
    }
  for (const auto& k : small) {
    for (std::size_t i = 0; i < q; ++i)
      vals[fv_index[constrained[i]]] = k[i];
    out.push_back(lift(vals));
    for (std::size_t i = 0; i < q; ++i)
      vals[fv_index[constrained[i]]] = 0;
  }
  return out;
}

std::vector<ModVector> kernel_mod(std::span<const SparseRow> rows, std::size_t num_vars,
                                  Residue m) {
  ModKernelSolver s(num_vars, m);
  for (const auto& r : rows) {
    SparseRow rr;
    for (auto [v, c] : r)
      rr.emplace_back(v, mod_reduce(c, m));
    s.add_row(rr);
  }
  return s.kernel();
}

namespace {

SparseRow sparse_row_of(const IntMatrix& a, std::size_t i, Residue m) {
  SparseRow r;
  BigInt mm(static_cast<long>(m));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    BigInt v;
    mpz_fdiv_r(v.get_mpz_t(), a(i, j).get_mpz_t(), mm.get_mpz_t());
    if (v != 0)
      r.emplace_back(std::uint32_t(j), v.get_si());
  }
  return r;
}

} // namespace

std::vector<ModVector> kernel_mod(const IntMatrix& a, Residue m) {
  std::vector<SparseRow> rows;
  for (std::size_t i = 0; i < a.rows(); ++i)
    rows.push_back(sparse_row_of(a, i, m));
  return kernel_mod(rows, a.cols(), m);
}

std::optional<ModVector> solve_affine_mod(std::span<const SparseRow> rows,
                                          std::span<const Residue> b, std::size_t num_vars,
                                          Residue m) {
  if (b.size() != rows.size())
    throw std::invalid_argument("solve_affine_mod: rhs length mismatch");
  ModKernelSolver s(num_vars + 1, m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SparseRow r;
    for (auto [v, c] : rows[i])
      r.emplace_back(v, mod_reduce(c, m));
    Residue bi = mod_reduce(b[i], m);
    if (bi)
      r.emplace_back(std::uint32_t(num_vars), m - bi);
    s.add_row(r);
  }
  auto ker = s.kernel();
  // Bezout combination with last coordinate gcd, then scale to 1
  ModVector x(num_vars + 1, 0);
  __int128 xl = 0;
  for (const auto& g : ker) {
    Residue c = g[num_vars];
    if (c == 0)
      continue;
    auto e = egcd(xl, c);
    Residue s1 = red(e.s, m), t1 = red(e.t, m);
    for (std::size_t i = 0; i <= num_vars; ++i)
      x[i] = Residue(((__int128)s1 * x[i] + (__int128)t1 * g[i]) % m);
    xl = e.g;
  }
  auto inv = inverse_mod(Residue(xl % m), m);
  if (!inv)
    return std::nullopt;
  ModVector sol(num_vars);
  for (std::size_t i = 0; i < num_vars; ++i)
    sol[i] = mul_mod(x[i], *inv, m);
  // verify by substitution
  for (std::size_t i = 0; i < rows.size(); ++i) {
    __int128 acc = 0;
    for (auto [v, c] : rows[i])
      acc += (__int128)mod_reduce(c, m) * sol[v] % m;
    if (red(acc, m) != mod_reduce(b[i], m))
      throw std::logic_error("solve_affine_mod: substitution check failed");
  }
  return sol;
}

std::optional<ModVector> solve_affine_mod(const IntMatrix& a, std::span<const Residue> b,
                                          Residue m) {
  std::vector<SparseRow> rows;
  for (std::size_t i = 0; i < a.rows(); ++i)
    rows.push_back(sparse_row_of(a, i, m));
  return solve_affine_mod(rows, b, a.cols(), m);
}

// ---------------------------------------------------------------------------
// subquotients

namespace {

struct DiagonalizedSpan {
  std::vector<Residue> d;       // diagonal entries of the Z block, rank r
  Dense A;                      // transformed Z rows (row i has only A[i][i] for i<r)
  Dense B;                      // transformed B rows
  Dense P;                      // A row i = sum_j P[i][j] z_j
};

DiagonalizedSpan diagonalize_span(std::span<const ModVector> z, std::span<const ModVector> b,
                                  Residue m, bool track) {
  std::size_t u = z.empty() ? (b.empty() ? 0 : b[0].size()) : z[0].size();
  DiagonalizedSpan s;
  for (const auto& v : z) {
    if (v.size() != u)
      throw std::invalid_argument("subquotient: vector length mismatch");
    ModVector w(u);
    for (std::size_t i = 0; i < u; ++i)
      w[i] = mod_reduce(v[i], m);
    s.A.push_back(std::move(w));
  }
  for (const auto& v : b) {
    if (v.size() != u)
      throw std::invalid_argument("subquotient: vector length mismatch");
    ModVector w(u);
    for (std::size_t i = 0; i < u; ++i)
      w[i] = mod_reduce(v[i], m);
    s.B.push_back(std::move(w));
  }
  std::size_t k = s.A.size();
  if (track) {
    s.P.assign(k, ModVector(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      s.P[i][i] = 1 % m;
  }
  Dense& A = s.A;
  for (std::size_t t = 0; t < std::min(k, u); ++t) {
    std::size_t pi = k, pj = u;
    Residue best = m;
    for (std::size_t i = t; i < k && best > 1; ++i)
      for (std::size_t j = t; j < u; ++j)
        if (A[i][j] != 0) {
          Residue g = std::gcd(A[i][j], m);
          if (g < best) {
            best = g;
            pi = i;
            pj = j;
            if (g == 1)
              break;
          }
        }
    if (pi == k)
      break;
    std::swap(A[t], A[pi]);
    if (track)
      std::swap(s.P[t], s.P[pi]);
    if (pj != t) {
      for (auto& row : A)
        std::swap(row[t], row[pj]);
      for (auto& row : s.B)
        std::swap(row[t], row[pj]);
    }
    while (true) {
      for (std::size_t i = t + 1; i < k; ++i)
        if (A[i][t] != 0) {
          if (track) {
            // mirror the row operation on P
            Residue a = A[t][t], bb = A[i][t];
            ModVector& pt = s.P[t];
            ModVector& pr = s.P[i];
            if (a != 0 && bb % a == 0) {
              Residue q = m - (bb / a) % m;
              for (std::size_t c = 0; c < k; ++c)
                pr[c] = Residue((pr[c] + (__int128)q * pt[c]) % m);
            } else {
              auto e = egcd(a, bb);
              Residue ss = red(e.s, m), tt = red(e.t, m);
              Residue uu = red(-(bb / e.g), m), vv = red(a / e.g, m);
              for (std::size_t c = 0; c < k; ++c) {
                Residue x = pt[c], y = pr[c];
                pt[c] = Residue(((__int128)ss * x + (__int128)tt * y) % m);
                pr[c] = Residue(((__int128)uu * x + (__int128)vv * y) % m);
              }
            }
          }
          bezout_rows(A[t], A[i], t, m);
        }
      for (std::size_t j = t + 1; j < u; ++j)
        if (A[t][j] != 0) {
          // column op on A and B together
          Dense* none = nullptr;
          Residue a = A[t][t], bb = A[t][j];
          bezout_cols(A, none, t, j, t, m);
          // replay on B with the same coefficients
          if (!s.B.empty()) {
            if (a != 0 && bb % a == 0) {
              Residue q = m - (bb / a) % m;
              for (auto& row : s.B)
                if (row[t])
                  row[j] = Residue((row[j] + (__int128)q * row[t]) % m);
            } else {
              auto e = egcd(a, bb);
              Residue ss = red(e.s, m), tt = red(e.t, m);
              Residue uu = red(-(bb / e.g), m), vv = red(a / e.g, m);
              for (auto& row : s.B) {
                Residue x = row[t], y = row[j];
                if (!x && !y)
                  continue;
                row[t] = Residue(((__int128)ss * x + (__int128)tt * y) % m);
                row[j] = Residue(((__int128)uu * x + (__int128)vv * y) % m);
              }
            }
          }
        }
      bool clean = true;
      for (std::size_t i = t + 1; i < k && clean; ++i)
        clean = A[i][t] == 0;
      if (clean)
        break;
    }
    s.d.push_back(A[t][t]);
  }
  return s;
}

} // namespace

Subquotient subquotient(std::span<const ModVector> z, std::span<const ModVector> b, Residue m) {
  if (m < 1)
    throw std::invalid_argument("subquotient: modulus must be >= 1");
  auto s = diagonalize_span(z, b, m, true);
  std::size_t r = s.d.size();
  std::size_t u = z.empty() ? (b.empty() ? 0 : b[0].size()) : z[0].size();
  // coordinates of B rows with respect to basis d_i e_i, each in Z/(m/g_i)
  std::vector<Residue> ord(r);
  for (std::size_t i = 0; i < r; ++i)
    ord[i] = m / std::gcd(s.d[i], m);
  std::size_t l = s.B.size();
  IntMatrix rel(r + l, r);
  for (std::size_t i = 0; i < r; ++i)
    rel(i, i) = static_cast<long>(ord[i]);
  for (std::size_t bi = 0; bi < l; ++bi) {
    const auto& row = s.B[bi];
    for (std::size_t j = r; j < u; ++j)
      if (row[j] != 0)
        throw SubquotientError("subquotient: a B-generator is not in the span of Z");
    for (std::size_t i = 0; i < r; ++i) {
      Residue g = std::gcd(s.d[i], m);
      if (row[i] % g != 0)
        throw SubquotientError("subquotient: a B-generator is not in the span of Z");
      Residue mod_i = m / g;
      Residue t = 0;
      if (mod_i > 1) {
        Residue unit = (s.d[i] / g) % mod_i;
        t = mul_mod((row[i] / g) % mod_i, *inverse_mod(unit, mod_i), mod_i);
      }
      rel(r + bi, i) = static_cast<long>(t);
    }
  }
  Subquotient out;
  if (r == 0)
    return out;
  auto snf = smith_normal_form(rel);
  // generator j of the quotient: coordinates = row j of Vinv
  for (std::size_t j = 0; j < r; ++j) {
    BigInt dj = snf.D(j, j);
    if (dj == 1)
      continue;
    if (dj == 0)
      throw std::logic_error("subquotient: relation matrix not of full rank");
    out.invariants.factors.push_back(dj.get_si());
    ModVector rep(u, 0);
    for (std::size_t i = 0; i < r; ++i) {
      BigInt c = snf.Vinv(j, i);
      BigInt cm;
      mpz_fdiv_r_ui(cm.get_mpz_t(), c.get_mpz_t(), (unsigned long)m);
      Residue ci = cm.get_si();
      if (!ci)
        continue;
      // basis element i corresponds to the transformed Z row i; in original
      // coordinates that vector is sum_k P[i][k] z_k
      for (std::size_t k = 0; k < z.size(); ++k) {
        Residue pk = s.P[i][k];
        if (!pk)
          continue;
        Residue f = mul_mod(ci, pk, m);
        for (std::size_t x = 0; x < u; ++x)
          if (z[k][x])
            rep[x] = Residue((rep[x] + (__int128)f * mod_reduce(z[k][x], m)) % m);
      }
    }
    out.representatives.push_back(std::move(rep));
  }
  return out;
}

AbelianInvariants subquotient_invariants(std::span<const ModVector> z,
                                         std::span<const ModVector> b, Residue m) {
  return subquotient(z, b, m).invariants;
}

BigInt span_order(std::span<const ModVector> gens, Residue m) {
  auto s = diagonalize_span(gens, {}, m, false);
  BigInt o = 1;
  for (Residue d : s.d)
    o *= static_cast<long>(m / std::gcd(d, m));
  return o;
}

} // namespace mlschur
