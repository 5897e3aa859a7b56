// Group and star specs as typed on the command line, and the table
// verification harness that runs every pipeline on a list of rows.

#ifndef MLSCHUR_VERIFY_HPP_
#define MLSCHUR_VERIFY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"
#include "mla.hpp"

namespace mlschur {

/// Z6 or C6, V4, D5, Q3, SL23, M8,3,2 (metacyclic), products A x B written
/// AxB, a presentation "gens: ... ; rels: ...", or file:<path> in the group
/// file format.
FiniteGroup group_from_spec(const std::string& spec, std::size_t max_cosets = 200000);

/// trivial, commutator (or improper), sugar like "a*b=b^2", or file:<path>.
StarTable star_from_spec(const FiniteGroup& g, const std::string& spec);

struct ExpectedValues {
  std::optional<AbelianInvariants> exterior;  // only for abelian squares
  std::optional<int> exterior_order;
  std::optional<int> exterior_involutions;  // number of elements of order 2
  std::optional<AbelianInvariants> schur;
  std::optional<bool> lie_simple;
  std::optional<AbelianInvariants> tilde;
};

struct ManifestRow {
  std::string name;
  std::string group;
  std::string star;
  ExpectedValues expected;
  /// Set for rows that are reported rather than asserted.
  std::string skip;
};

struct ComputedValues {
  std::optional<AbelianInvariants> exterior;
  int exterior_order = 0;
  int exterior_involutions = 0;
  AbelianInvariants schur;
  std::optional<bool> lie_simple;
  std::string classification;
  AbelianInvariants tilde;
  int group_order = 0;
};

enum class RowStatus { pass, fail, skipped };
std::string to_string(RowStatus s);

struct VerificationRow {
  ManifestRow row;
  RowStatus status = RowStatus::skipped;
  std::optional<ComputedValues> computed;
  std::vector<std::string> mismatches;
  std::string reason;
  double seconds = 0;
};

struct VerifyOptions {
  std::size_t max_cosets = 200000;
  std::size_t budget = 200000;
};

/// The rows of the published table, expanded over the parameter ranges that
/// are checked (Z_n for n = 2, 6, 12; Q_n for n <= 4; D_n for n <= 6; ...).
std::vector<ManifestRow> builtin_manifest();

/// Never throws for a row: failures to build or overflow become skipped.
VerificationRow verify_row(const ManifestRow& row, const VerifyOptions& opt = {});
std::vector<VerificationRow> run_table_verification(const std::vector<ManifestRow>& rows,
                                                    const VerifyOptions& opt = {});

} // namespace mlschur

#endif
