#pragma once

// Small permutation groups: composition, breadth-first closure, evaluation of
// words, and exhaustive search for homomorphisms onto a group of even
// permutations.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "fpcheck/presentation.hpp"
#include "fpcheck/word.hpp"

namespace fpcheck {

// Bijection of the points 1..degree. Points act on the right: applying p then
// q is compose(p, q).
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(std::size_t degree);
  // One-based images: images[i-1] is the image of point i.
  static Permutation from_images(std::vector<std::uint32_t> const& images);
  // One-based cycles, e.g. {{1, 2}, {3, 4, 5}}.
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<std::uint32_t>> cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  // Image of one-based point i.
  std::uint32_t operator()(std::uint32_t i) const { return images_.at(i - 1) + 1; }
  std::vector<std::uint32_t> const& zero_based_images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  bool is_even() const noexcept;
  std::uint64_t order() const;
  Permutation inverse() const;

  // "(1 2)(3 4 5)", "()" for the identity.
  std::string to_cycle_string() const;

  friend bool operator==(Permutation const&, Permutation const&) = default;
  friend auto operator<=>(Permutation const&, Permutation const&) = default;

 private:
  explicit Permutation(std::vector<std::uint32_t> zero_based) : images_(std::move(zero_based)) {}
  std::vector<std::uint32_t> images_;
};

Permutation compose(Permutation const& p, Permutation const& q);

// Elements of the group generated by gens, in breadth-first order starting
// from the identity; nullopt once more than `cap` elements appear.
std::optional<std::vector<Permutation>> closure(std::vector<Permutation> const& gens,
                                                std::size_t cap);

// Images of the presentation's generators, in declaration order.
struct Assignment {
  std::vector<Permutation> images;

  std::size_t degree() const noexcept { return images.empty() ? 0 : images.front().degree(); }
};

Permutation evaluate(Word const& w, Assignment const& a);
bool satisfies(Presentation const& p, Assignment const& a);

struct EpimorphismSearch {
  enum class Outcome { Found, None, Overflow };
  Outcome outcome = Outcome::None;
  std::optional<Assignment> witness;
  std::uint64_t nodes_visited = 0;
};

// Depth-first search over assignments of generators to even permutations of
// `degree` points, candidates in lexicographic image order. Returns the first
// assignment that satisfies every relator and whose image has exactly
// `target_order` elements. More than `cap` visited nodes gives Overflow.
EpimorphismSearch find_epimorphism(Presentation const& p, std::size_t degree,
                                   std::size_t target_order, std::uint64_t cap = 50'000'000);

// All even permutations of `degree` points in lexicographic order.
std::vector<Permutation> even_permutations(std::size_t degree);

}  // namespace fpcheck

template <>
struct std::hash<fpcheck::Permutation> {
  std::size_t operator()(fpcheck::Permutation const& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p.zero_based_images()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};
