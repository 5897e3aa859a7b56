// Finitely presented groups: a small text grammar, Tietze elimination and
// Todd-Coxeter enumeration over the trivial subgroup.

#ifndef MLSCHUR_PRESENTATION_HPP_
#define MLSCHUR_PRESENTATION_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "group.hpp"

namespace mlschur {

struct PresentationError : std::runtime_error {
  PresentationError(const std::string& msg, int line, int column);
  int line, column;
};

struct EnumerationOverflow : std::runtime_error {
  explicit EnumerationOverflow(std::size_t max_cosets);
  std::size_t max_cosets;
};

/// Letters are signed 1-based generator indices: +i is generator i-1, -i its inverse.
using Word = std::vector<int>;

struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;

  int generator_count() const { return int(generator_names.size()); }
  /// Throws PresentationError if a letter is out of range.
  void validate() const;
};

Word inverse_word(const Word& w);
Word free_reduce(const Word& w);
/// Free reduction followed by removal of cancelling first/last letters.
Word cyclic_reduce(const Word& w);
/// x y x^-1 y^-1
Word commutator_word(const Word& x, const Word& y);

/// Grammar: `gens: <name>+ ; rels: <word> (, <word>)*`. A word is a product
/// of factors `name`, `name^k`, `(word)^k`, `[word, word]`, or `1`; a relation
/// `u = v` stands for the relator u v^-1.
Presentation parse_presentation(const std::string& text);
std::string format_word(const Word& w, const std::vector<std::string>& names);
std::string format_presentation(const Presentation& p);

/// A presentation on fewer generators plus, for each original generator, a
/// word in the new generators representing it.
struct TietzeResult {
  Presentation reduced;
  std::vector<Word> substitution;
};

/// Eliminates generators using relators in which they occur exactly once,
/// shortest relators first; drops duplicate and trivial relators.
TietzeResult tietze_reduce(const Presentation& p, std::size_t max_relator_length = 24);

/// Coset table over the trivial subgroup, standardized (cosets numbered in
/// order of first appearance scanning coset 0, 1, ... and columns in order).
/// Column 2i is generator i, column 2i+1 its inverse.
struct CosetTable {
  int generator_count = 0;
  std::size_t coset_count = 0;
  std::vector<int> action;

  int operator()(std::size_t coset, int column) const {
    return action[coset * std::size_t(2 * generator_count) + std::size_t(column)];
  }
};

struct EnumerationStats {
  std::size_t cosets_defined = 0;
  std::size_t max_live = 0;
  std::size_t attempts = 0;       // relator-subset rounds
  std::size_t relators_used = 0;  // size of the final relator subset
};

/// Felsch-style enumeration of the given relators (no preprocessing).
CosetTable enumerate_cosets(const Presentation& p, std::size_t max_cosets,
                            EnumerationStats* stats = nullptr);

struct EnumerationResult {
  FiniteGroup group;
  /// Image of each original generator.
  std::vector<Elem> generator_images;
  EnumerationStats stats;

  Elem evaluate(const Word& w) const;
};

/// Group defined by p, as the regular representation on cosets of the
/// trivial subgroup. Throws EnumerationOverflow when more than max_cosets live
/// cosets are needed, PresentationError for presentations without relators.
EnumerationResult todd_coxeter(const Presentation& p, std::size_t max_cosets = 200000);

} // namespace mlschur

#endif
