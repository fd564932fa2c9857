#pragma once

// Text formats.
//
// Presentation files:
//
//   # comment
//   gens a b
//   rel a^2
//   rel b^-3 a
//   rel (a b)^5
//
// `gens` appears once, before any `rel`. A word is a whitespace-separated
// list of factors `s`, `s^k` or `(word)^k` (k may be negative); `1` is the
// empty word.
//
// Derivation scripts (relator numbers are 1-based; words are read over the
// generators current at that step):
//
//   step eliminate x3 using 3
//   step conjugate 2 by x2
//   step change-generators a b
//     old x1 = a b^-1
//     new a = x1 x2 x1
//   step add-relators quotient a^2 ; b^3
//   step normalize-torsion 2 orders a=2 b=3
//     note b^-1 a b^-1 = a b
//   step replace 1 with 1
//   cite <free text attached to the step>
//   expect
//     gens a b
//     rel a^2
//   end

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fpcheck/derivation.hpp"
#include "fpcheck/presentation.hpp"

namespace fpcheck {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string expected);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::string const& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

Presentation parse_presentation(std::string_view text);
std::string print_presentation(Presentation const& p);

// A single word over `symbols`.
Word parse_word(std::string_view text, std::vector<std::string> const& symbols);
// Space-separated factors; proper powers u^k of words with |u| > 1 print as
// "(u)^k".
std::string print_word(Word const& w, std::vector<std::string> const& symbols);

DerivationScript parse_script(std::string_view text, std::vector<std::string> const& start_symbols);
std::string print_script(DerivationScript const& script, std::vector<std::string> const& start_symbols);

}  // namespace fpcheck
