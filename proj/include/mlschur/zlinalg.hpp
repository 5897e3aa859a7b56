// Exact integer linear algebra: Smith normal form over Z and the modular
// kernel / subquotient / affine-solve routines the cohomology code runs on.
//
// Matrices over Z use GMP integers. Computations over Z/m keep residues in
// [0, m) as 64-bit integers and reduce after every operation, so m must stay
// below 2^62.

#ifndef MLSCHUR_ZLINALG_HPP_
#define MLSCHUR_ZLINALG_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "group.hpp"

namespace mlschur {

using BigInt = mpz_class;

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const;
  bool is_zero() const;
  std::string str() const;

private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<BigInt> a_;
};

/// U * A * V = D with U, V unimodular; Uinv, Vinv are their inverses.
struct SmithDecomposition {
  IntMatrix D, U, V, Uinv, Vinv;
  /// Nonzero diagonal entries, in order (each divides the next).
  std::vector<BigInt> diagonal() const;
  std::size_t rank() const { return diagonal().size(); }
};

/// Pivot: smallest nonzero absolute value, ties by lowest row then column.
SmithDecomposition smith_normal_form(const IntMatrix& a);
/// Diagonal only, no transforms (for tall relation matrices).
std::vector<BigInt> smith_diagonal(IntMatrix a);
/// |det| of a square matrix, via the Smith diagonal.
BigInt abs_determinant(const IntMatrix& a);

/// Invariants of the cokernel Z^cols / rowspace(A); throws if infinite.
AbelianInvariants cokernel_invariants(const IntMatrix& a);

// ---------------------------------------------------------------------------
// Z/m

using Residue = std::int64_t;
using ModVector = std::vector<Residue>;

inline Residue mod_reduce(long long v, Residue m) {
  v %= m;
  return v < 0 ? v + m : v;
}
inline Residue mul_mod(Residue a, Residue b, Residue m) {
  return Residue((__int128)a * b % m);
}
/// Inverse of a unit u mod m, or nullopt if gcd(u, m) != 1.
std::optional<Residue> inverse_mod(Residue u, Residue m);

/// A sparse row: (column, coefficient) pairs, coefficients reduced mod m.
using SparseRow = std::vector<std::pair<std::uint32_t, Residue>>;

/// Solution module {x : A x = 0 mod m} of a sparse system.
///
/// Rows are reduced on arrival against a reduced echelon form built from
/// unit pivots; rows left without a unit coefficient are settled at the end
/// by a dense Smith reduction over the remaining free variables.
class ModKernelSolver {
public:
  ModKernelSolver(std::size_t num_vars, Residue modulus);

  void add_row(const SparseRow& row);
  void add_row(std::span<const std::pair<std::uint32_t, long long>> terms);

  /// Generators of the kernel (each of length num_vars).
  std::vector<ModVector> kernel();
  /// Free variables after elimination; a kernel vector is determined by its
  /// values on these coordinates.
  std::vector<std::uint32_t> free_variables();
  /// Completes a kernel vector from its values on free_variables().
  ModVector lift(std::span<const Residue> free_values);
  std::size_t num_vars() const { return n_; }
  Residue modulus() const { return m_; }
  std::size_t pivot_count() const { return pivots_.size(); }

private:
  using Expr = std::vector<std::pair<std::uint32_t, Residue>>;

  SparseRow reduce(const SparseRow& row) const;
  void finish();
  void make_pivot(SparseRow row, std::size_t unit_pos);
  void substitute_into_pivots(std::uint32_t var);

  std::size_t n_;
  Residue m_;
  std::vector<int> pivot_of_;                    // var -> pivot index or -1
  std::vector<std::uint32_t> pivots_;            // pivot index -> var
  std::vector<Expr> exprs_;                      // x_var = sum coeff * x_free
  std::vector<std::vector<std::uint32_t>> occ_;  // free var -> pivots using it
  std::vector<SparseRow> residual_;
  bool finished_ = false;
  mutable std::vector<Residue> acc_;
  mutable std::vector<std::uint32_t> touched_;
};

/// Generators of {x : A x = 0 mod m} (A dense, any integer entries).
std::vector<ModVector> kernel_mod(const IntMatrix& a, Residue m);
std::vector<ModVector> kernel_mod(std::span<const SparseRow> rows, std::size_t num_vars,
                                  Residue m);

/// One solution of A x = b mod m, verified by substitution, or nullopt.
std::optional<ModVector> solve_affine_mod(const IntMatrix& a, std::span<const Residue> b,
                                          Residue m);
std::optional<ModVector> solve_affine_mod(std::span<const SparseRow> rows,
                                          std::span<const Residue> b, std::size_t num_vars,
                                          Residue m);

struct SubquotientError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// <Z>/<B> as a Z/m-module, together with representatives.
struct Subquotient {
  AbelianInvariants invariants;
  /// One vector per invariant factor, in the same order; each lies in <Z>
  /// and its class generates the corresponding cyclic summand.
  std::vector<ModVector> representatives;
};

/// Throws SubquotientError if some B-generator is not in <Z>.
Subquotient subquotient(std::span<const ModVector> z, std::span<const ModVector> b, Residue m);
AbelianInvariants subquotient_invariants(std::span<const ModVector> z,
                                         std::span<const ModVector> b, Residue m);

/// Order of the submodule of (Z/m)^k generated by the given vectors.
BigInt span_order(std::span<const ModVector> gens, Residue m);

} // namespace mlschur

#endif
