#pragma once

// Free-group words over generators numbered 1..n. A letter g > 0 stands for
// generator g, a letter -g for its inverse. Words compose left to right.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace fpcheck {

using Letter = std::int32_t;

constexpr int generator_of(Letter x) noexcept { return x < 0 ? -x : x; }

class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);
  explicit Word(std::vector<Letter> letters);

  std::span<Letter const> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  // Largest generator index referenced, 0 for the identity.
  int max_generator() const noexcept;
  bool contains_generator(int g) const noexcept;
  bool is_reduced() const noexcept;

  friend bool operator==(Word const&, Word const&) = default;
  friend auto operator<=>(Word const&, Word const&) = default;

 private:
  std::vector<Letter> letters_;
};

// Plain juxtaposition; no cancellation.
Word concat(Word const& u, Word const& v);
// Reduced product u·v.
Word operator*(Word const& u, Word const& v);

Word free_reduce(Word const& w);
Word invert(Word const& w);
// Reduced form of w^k; negative k powers the inverse.
Word power(Word const& w, int k);

struct CyclicReduction {
  Word word;
  Word conjugator;  // w == conjugator · word · conjugator⁻¹
};

CyclicReduction cyclic_reduce(Word const& w);

// Left rotation by k letters (no reduction).
Word rotate(Word const& w, std::size_t k);

// Lexicographically least word among the rotations of the cyclic reduction of
// w and of w⁻¹. Two relators define the same normal closure whenever their
// keys agree.
Word cyclic_key(Word const& w);
bool cyclically_equivalent(Word const& u, Word const& v);

// Replaces g by `replacement` and g⁻¹ by its inverse, then reduces. Throws
// std::invalid_argument if the replacement mentions g.
Word substitute(Word const& w, int g, Word const& replacement);

// Simultaneous substitution: generator i (1-based) maps to images[i-1].
Word substitute_all(Word const& w, std::span<Word const> images);

long exponent_sum(Word const& w, int g) noexcept;

// Number of letters equal to g or g⁻¹.
std::size_t occurrences(Word const& w, int g) noexcept;

}  // namespace fpcheck
