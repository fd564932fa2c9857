#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fpcheck/word.hpp"

namespace fpcheck {

struct GeneratorId {
  int index = 0;  // 1-based position in the presentation
  std::string symbol;

  friend bool operator==(GeneratorId const&, GeneratorId const&) = default;
};

// Whether a presentation still presents the group it was derived from, or a
// quotient of it.
enum class Lineage { Isomorphic, Quotient };

// ⟨generators | relators⟩. Relators are words meaning r = 1 and are kept in
// freely reduced form; an empty relator is allowed and is trivial.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> symbols, std::vector<Word> relators,
               std::string provenance = {});

  std::size_t generator_count() const noexcept { return symbols_.size(); }
  std::vector<std::string> const& symbols() const noexcept { return symbols_; }
  std::vector<Word> const& relators() const noexcept { return relators_; }
  std::string const& provenance() const noexcept { return provenance_; }
  Lineage lineage() const noexcept { return lineage_; }
  bool is_quotient() const noexcept { return lineage_ == Lineage::Quotient; }

  GeneratorId generator(std::string_view symbol) const;
  GeneratorId generator(int index) const;
  bool has_generator(std::string_view symbol) const noexcept;

  Presentation with_relators(std::vector<Word> relators) const;
  Presentation with_lineage(Lineage l) const;
  Presentation with_provenance(std::string provenance) const;

  std::size_t total_relator_length() const noexcept;

  // Human-readable word such as "x2^-2 x1 x2^-1".
  std::string format(Word const& w) const;
  // "⟨a, b | a^2, b^3, (a b)^5⟩" in ASCII form.
  std::string to_string() const;

  // Exact structural equality: symbols and relator sequence.
  friend bool operator==(Presentation const& p, Presentation const& q) {
    return p.symbols_ == q.symbols_ && p.relators_ == q.relators_;
  }

 private:
  std::vector<std::string> symbols_;
  std::vector<Word> relators_;
  std::string provenance_;
  Lineage lineage_ = Lineage::Isomorphic;
};

bool is_valid_symbol(std::string_view s) noexcept;

// Same generator symbols and the same relator multiset, each relator taken up
// to cyclic reduction, rotation and inversion.
bool equivalent_up_to_relator_conjugacy(Presentation const& p, Presentation const& q);

}  // namespace fpcheck
