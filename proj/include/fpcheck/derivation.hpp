#pragma once

// Typed derivation scripts and the replay engine that applies them to a
// starting presentation and audits every intermediate against an expected
// presentation.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fpcheck/presentation.hpp"
#include "fpcheck/tietze.hpp"

namespace fpcheck {

// Relator indices in moves are 0-based.

struct EliminateGenerator {
  std::string generator;
  std::size_t relator = 0;
};

struct ConjugateRelator {
  std::size_t relator = 0;
  Word left;
};

struct ChangeGenerators {
  std::vector<std::string> new_symbols;
  std::vector<Word> old_in_terms_of_new;
  std::vector<Word> new_in_terms_of_old;
};

// Must carry quotient = true; a quotient move is never implicit.
struct AddQuotientRelator {
  std::vector<Word> relators;
  bool quotient = false;
};

// Rewrites one relator in the free product of cyclic groups given by
// `orders`. Each order must be witnessed by a pure-power relator of the
// presentation. `annotations` are intermediate forms of the relator that were
// displayed along the way; each must agree with the relator modulo torsion.
struct NormalizeModuloTorsion {
  std::size_t relator = 0;
  std::vector<std::pair<std::string, int>> orders;
  std::vector<Word> annotations;
};

// Replaces a relator by a word that is visibly equivalent: equal up to
// cyclic reduction, rotation and inversion, or equal modulo the torsion
// witnessed by the remaining relators. An empty replacement deletes it.
struct ReplaceRelatorByEquivalent {
  std::size_t relator = 0;
  Word replacement;
};

using Move = std::variant<EliminateGenerator, ConjugateRelator, ChangeGenerators,
                          AddQuotientRelator, NormalizeModuloTorsion, ReplaceRelatorByEquivalent>;

enum class StepKind {
  EliminateGenerator,
  ConjugateRelator,
  ChangeGenerators,
  AddQuotientRelator,
  NormalizeModuloTorsion,
  ReplaceRelatorByEquivalent
};

StepKind kind_of(Move const& m) noexcept;
char const* to_string(StepKind k) noexcept;
bool preserves_isomorphism(Move const& m) noexcept;

struct DerivationStep {
  Move move;
  std::optional<Presentation> expected;
  std::string citation;
};

struct DerivationScript {
  std::vector<DerivationStep> steps;
};

// Applies one move. Throws std::invalid_argument / std::out_of_range when the
// move does not apply to p.
Presentation apply_move(Presentation const& p, Move const& m);

struct Mismatch {
  std::size_t step = 0;
  Presentation expected;
  Presentation actual;
  std::string detail;
};

struct StepFailure {
  std::size_t step = 0;
  std::string message;
};

struct DerivationReport {
  std::size_t steps_applied = 0;
  // Steps before the first quotient move (all steps if there is none).
  std::size_t isomorphism_preserving_prefix_length = 0;
  // intermediate_presentations[0] is the start; entry i+1 follows step i.
  std::vector<Presentation> intermediate_presentations;
  std::vector<Mismatch> mismatches;
  std::optional<StepFailure> halted;

  bool ok() const noexcept { return mismatches.empty() && !halted; }
  Presentation const& final_presentation() const { return intermediate_presentations.back(); }
};

DerivationReport replay_derivation(Presentation const& start, DerivationScript const& script);

}  // namespace fpcheck
