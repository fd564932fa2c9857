#pragma once

// Seeded generators shared by the property tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fpcheck/abelian.hpp"
#include "fpcheck/presentation.hpp"
#include "fpcheck/word.hpp"

namespace fpcheck::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Random word over generators 1..gens, not necessarily reduced.
inline Word random_word(Rng& rng, int gens, int max_len) {
  std::vector<Letter> letters;
  int len = uniform(rng, 0, max_len);
  for (int i = 0; i < len; ++i) {
    Letter g = uniform(rng, 1, gens);
    letters.push_back(uniform(rng, 0, 1) ? g : -g);
  }
  return Word(std::move(letters));
}

inline Word random_reduced_word(Rng& rng, int gens, int min_len, int max_len) {
  for (;;) {
    Word w = free_reduce(random_word(rng, gens, max_len));
    if (static_cast<int>(w.size()) >= min_len) return w;
  }
}

inline std::vector<std::string> default_symbols(int n) {
  std::vector<std::string> s;
  for (int i = 1; i <= n; ++i) s.push_back("g" + std::to_string(i));
  return s;
}

inline IntMatrix random_matrix(Rng& rng, int max_dim, int bound) {
  IntMatrix m(static_cast<std::size_t>(uniform(rng, 1, max_dim)), static_cast<std::size_t>(uniform(rng, 1, max_dim)));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = uniform(rng, -bound, bound);
  }
  return m;
}

// Small presentations whose groups are finite and small; every one
// completes well inside the default coset cap.
inline std::vector<Presentation> finite_corpus() {
  auto P = [](std::vector<std::string> s, std::vector<Word> r) { return Presentation(std::move(s), std::move(r)); };
  std::vector<std::string> const ab{"a", "b"};
  std::vector<std::string> const abc{"a", "b", "c"};
  auto pw = [](Word const& w, int k) { return power(w, k); };
  Word const a{1};
  Word const b{2};
  Word const c{3};
  std::vector<Presentation> out{
      P({"a"}, {pw(a, 1)}),
      P({"a"}, {pw(a, 5)}),
      P({"a"}, {pw(a, 12)}),
      P(ab, {pw(a, 2), pw(b, 2), pw(a * b, 3)}),
      P(ab, {pw(a, 2), pw(b, 3), pw(a * b, 3)}),
      P(ab, {pw(a, 2), pw(b, 3), pw(a * b, 4)}),
      P(ab, {pw(a, 2), pw(b, 3), pw(a * b, 5)}),
      P(ab, {pw(a, 3), pw(b, 3), pw(a * b, 3), pw(a * invert(b), 3)}),
      P(ab, {pw(a, 4), pw(b, 2), pw(a * b, 2)}),
      P(ab, {pw(a, 7), pw(b, 2), pw(a * b, 2)}),
      P(ab, {pw(a, 4), b * b * invert(a * a), invert(b) * a * b * a}),
      P(ab, {pw(a, 3), pw(b, 2), a * b * a * invert(b)}),
      P(ab, {pw(a, 2), pw(b, 2), pw(a * b, 6)}),
      P(ab, {pw(a, 4), pw(b, 4), a * b * invert(a) * invert(b)}),
      P(ab, {pw(a, 5), pw(b, 4), invert(b) * a * b * invert(pw(a, 2))}),
      P(ab, {pw(a, 7), pw(b, 3), invert(b) * a * b * invert(pw(a, 2))}),
      P(ab, {a * b * a * invert(b * a * b), pw(a, 2)}),
      P(ab, {pw(a, 2), pw(b, 3), pw(a * b, 5), a * b * a * b * invert(a * b)}),
      P(abc, {pw(a, 2), pw(b, 2), pw(c, 2), pw(a * b, 3), pw(b * c, 3), pw(a * c, 2)}),
      P(abc, {pw(a, 2), pw(b, 2), pw(c, 2), pw(a * b, 3), pw(b * c, 4), pw(a * c, 2)}),
      P(abc, {pw(a, 2), pw(b, 2), pw(c, 2), pw(a * b, 3), pw(b * c, 5), pw(a * c, 2)}),
      P(abc, {a * b * invert(b * a), b * c * invert(c * b), a * c * invert(c * a), pw(a, 2), pw(b, 3), pw(c, 4)}),
      P({"x1", "x2", "x3"}, {Word{1, 2, 1, -2, -1, -2}, Word{-2, -3, -2, 3, 2, 3}, Word{-1, 2, -3}}),
  };
  return out;
}

// Builds presentation text directly from random tokens, so the round trip
// also exercises parenthesized input that the printer never emits.
inline std::string random_file(Rng& rng) {
  static char const* const pool[] = {"a", "b", "x1", "x_2", "Gen", "t9"};
  int gens = uniform(rng, 1, 4);
  std::vector<std::string> syms(pool, pool + 6);
  std::shuffle(syms.begin(), syms.end(), rng);
  syms.resize(static_cast<std::size_t>(gens));
  std::string text = uniform(rng, 0, 1) ? "# generated\n" : "";
  text += "gens";
  for (auto const& s : syms) text += " " + s;
  text += "\n";
  std::function<std::string(int)> factor_list = [&](int depth) {
    std::string out;
    int n = uniform(rng, 1, 4);
    for (int i = 0; i < n; ++i) {
      if (i) out += " ";
      int kind = uniform(rng, 0, depth > 1 ? 2 : 3);
      int e = uniform(rng, -5, 5);
      if (kind == 3) {
        out += "(" + factor_list(depth + 1) + ")^" + std::to_string(e == 0 ? 2 : e);
      } else {
        out += syms[static_cast<std::size_t>(uniform(rng, 0, gens - 1))];
        if (kind == 1 && e != 0) out += "^" + std::to_string(e);
      }
    }
    return out;
  };
  int rels = uniform(rng, 0, 4);
  for (int r = 0; r < rels; ++r) text += "rel " + (uniform(rng, 0, 9) == 0 ? std::string("1") : factor_list(0)) + "\n";
  return text;
}

}  // namespace fpcheck::testing
