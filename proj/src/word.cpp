#include "fpcheck/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpcheck {

namespace {
void check_letters(std::vector<Letter> const& letters) {
  if (std::find(letters.begin(), letters.end(), 0) != letters.end()) {
    throw std::invalid_argument("word letter 0 is not a generator");
  }
}
}  // namespace

Word::Word(std::initializer_list<Letter> letters) : letters_(letters) {
  check_letters(letters_);
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  check_letters(letters_);
}

int Word::max_generator() const noexcept {
  int m = 0;
  for (Letter x : letters_) m = std::max(m, generator_of(x));
  return m;
}

bool Word::contains_generator(int g) const noexcept {
  return std::any_of(letters_.begin(), letters_.end(),
                     [g](Letter x) { return generator_of(x) == g; });
}

bool Word::is_reduced() const noexcept {
  for (std::size_t i = 1; i < letters_.size(); ++i) {
    if (letters_[i] == -letters_[i - 1]) return false;
  }
  return true;
}

Word concat(Word const& u, Word const& v) {
  std::vector<Letter> out(u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return Word(std::move(out));
}

Word free_reduce(Word const& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter x : w) {
    if (!stack.empty() && stack.back() == -x) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return Word(std::move(stack));
}

Word operator*(Word const& u, Word const& v) { return free_reduce(concat(u, v)); }

Word invert(Word const& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.end(); it != w.begin();) {
    --it;
    out.push_back(-*it);
  }
  return free_reduce(Word(std::move(out)));
}

Word power(Word const& w, int k) {
  Word base = k < 0 ? invert(w) : free_reduce(w);
  std::vector<Letter> out;
  for (int i = 0; i < std::abs(k); ++i) {
    out.insert(out.end(), base.begin(), base.end());
  }
  return free_reduce(Word(std::move(out)));
}

CyclicReduction cyclic_reduce(Word const& w) {
  Word r = free_reduce(w);
  auto letters = r.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == -letters[hi - 1]) {
    ++lo;
    --hi;
  }
  return {Word(std::vector<Letter>(letters.begin() + lo, letters.begin() + hi)),
          Word(std::vector<Letter>(letters.begin(), letters.begin() + lo))};
}

Word rotate(Word const& w, std::size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  std::vector<Letter> out(w.begin(), w.end());
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k), out.end());
  return Word(std::move(out));
}

namespace {
Word least_rotation(Word const& w) {
  Word best = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    Word r = rotate(w, k);
    if (r < best) best = std::move(r);
  }
  return best;
}
}  // namespace

Word cyclic_key(Word const& w) {
  Word c = cyclic_reduce(w).word;
  Word a = least_rotation(c);
  Word b = least_rotation(invert(c));
  return std::min(a, b);
}

bool cyclically_equivalent(Word const& u, Word const& v) {
  return cyclic_key(u) == cyclic_key(v);
}

Word substitute(Word const& w, int g, Word const& replacement) {
  if (replacement.contains_generator(g)) {
    throw std::invalid_argument("substitution replacement contains the generator it replaces");
  }
  Word inv = invert(replacement);
  std::vector<Letter> out;
  for (Letter x : w) {
    if (x == g) {
      out.insert(out.end(), replacement.begin(), replacement.end());
    } else if (x == -g) {
      out.insert(out.end(), inv.begin(), inv.end());
    } else {
      out.push_back(x);
    }
  }
  return free_reduce(Word(std::move(out)));
}

Word substitute_all(Word const& w, std::span<Word const> images) {
  std::vector<Letter> out;
  for (Letter x : w) {
    auto g = static_cast<std::size_t>(generator_of(x));
    if (g > images.size()) {
      throw std::invalid_argument("substitution has no image for a generator of the word");
    }
    Word img = x > 0 ? images[g - 1] : invert(images[g - 1]);
    out.insert(out.end(), img.begin(), img.end());
  }
  return free_reduce(Word(std::move(out)));
}

long exponent_sum(Word const& w, int g) noexcept {
  long s = 0;
  for (Letter x : w) {
    if (x == g) ++s;
    if (x == -g) --s;
  }
  return s;
}

std::size_t occurrences(Word const& w, int g) noexcept {
  return static_cast<std::size_t>(
      std::count_if(w.begin(), w.end(), [g](Letter x) { return generator_of(x) == g; }));
}

}  // namespace fpcheck
