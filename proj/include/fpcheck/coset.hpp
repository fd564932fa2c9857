#pragma once

// Todd-Coxeter coset enumeration.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpcheck/permgrp.hpp"
#include "fpcheck/presentation.hpp"

namespace fpcheck {

enum class Strategy { Felsch, HLT };

char const* to_string(Strategy s) noexcept;

inline constexpr std::size_t default_max_cosets = 100'000;

// Action of generators and their inverses on cosets 0..size()-1; coset 0 is
// the subgroup. Column 2(g-1) holds generator g, column 2(g-1)+1 its inverse.
class CosetTable {
 public:
  static constexpr std::uint32_t undefined = UINT32_MAX;

  CosetTable() = default;
  CosetTable(std::size_t generators, std::size_t cosets);

  std::size_t size() const noexcept { return cosets_; }
  std::size_t generator_count() const noexcept { return generators_; }
  std::size_t column_count() const noexcept { return 2 * generators_; }

  static std::size_t column(Letter x) noexcept {
    auto g = static_cast<std::size_t>(generator_of(x));
    return 2 * (g - 1) + (x < 0 ? 1 : 0);
  }

  std::optional<std::uint32_t> image(std::size_t coset, Letter x) const;
  std::uint32_t entry(std::size_t coset, std::size_t col) const { return data_[coset * column_count() + col]; }
  void set(std::size_t coset, std::size_t col, std::uint32_t value) {
    data_[coset * column_count() + col] = value;
  }

  bool is_complete() const noexcept;

  // One line per coset, "coset: image(x1) image(x1^-1) ...", 1-based.
  std::string dump(Presentation const& p) const;

 private:
  std::size_t generators_ = 0;
  std::size_t cosets_ = 0;
  std::vector<std::uint32_t> data_;
};

struct EnumerationStats {
  std::uint64_t cosets_defined = 0;
  std::uint64_t coincidences = 0;
  std::uint64_t max_live = 0;
  std::uint64_t lookaheads = 0;
};

struct EnumerationResult {
  enum class Outcome { Completed, Overflow };
  Outcome outcome = Outcome::Overflow;
  // Completed: the index. Overflow: the cap that was hit.
  std::size_t value = 0;
  // Completed: the closed table renumbered 0..index-1 in definition order.
  CosetTable table;
  EnumerationStats stats;

  bool completed() const noexcept { return outcome == Outcome::Completed; }
  std::size_t index() const noexcept { return value; }
};

// Enumerates the cosets of the subgroup generated by `subgroup` in the group
// presented by p. Overflow means more than max_cosets live cosets were
// needed; it says nothing about finiteness.
EnumerationResult enumerate(Presentation const& p, std::vector<Word> const& subgroup = {},
                            Strategy strategy = Strategy::Felsch,
                            std::size_t max_cosets = default_max_cosets);

struct OrderResult {
  bool completed = false;
  std::size_t value = 0;  // order when completed, otherwise the cap
};

OrderResult order(Presentation const& p, std::size_t max_cosets = default_max_cosets,
                  Strategy strategy = Strategy::Felsch);

// Action of each generator on the cosets of a complete table.
std::vector<Permutation> permutation_rep(CosetTable const& t);

// Problems found by rescanning a table from scratch: undefined entries,
// inverse-column disagreements, relators or subgroup generators that fail to
// close. Empty means the table is a valid complete coset table.
std::vector<std::string> table_defects(CosetTable const& t, Presentation const& p,
                                       std::vector<Word> const& subgroup = {});

}  // namespace fpcheck
