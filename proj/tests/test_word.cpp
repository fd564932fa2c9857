#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "fpcheck/word.hpp"
#include "support.hpp"

using namespace fpcheck;
using fpcheck::testing::random_word;
using fpcheck::testing::Rng;

TEST_CASE("words reject the zero letter") {
  CHECK_THROWS_AS(Word({1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Word(std::vector<Letter>{0}), std::invalid_argument);
}

TEST_CASE("free_reduce examples") {
  CHECK(free_reduce(Word{1, -1}) == Word{});
  CHECK(free_reduce(Word{-1, 2, -3}) == Word{-1, 2, -3});
  CHECK(free_reduce(Word{1, 2, -2, 1}) == Word{1, 1});
  CHECK(free_reduce(Word{2, 1, -1, -2, 3}) == Word{3});
}

TEST_CASE("invert examples") {
  CHECK(invert(Word{1, 2}) == Word{-2, -1});
  CHECK(invert(Word{}) == Word{});
  CHECK(invert(Word{-1, 2, -3}) == Word{3, -2, 1});
}

TEST_CASE("cyclic_reduce examples") {
  auto r = cyclic_reduce(Word{1, 2, -1});
  CHECK(r.word == Word{2});
  CHECK(r.conjugator == Word{1});

  r = cyclic_reduce(Word{2, 1, -2, -1});
  CHECK(r.word == Word{2, 1, -2, -1});
  CHECK(r.conjugator == Word{});

  r = cyclic_reduce(Word{-2, 1, 2});
  CHECK(r.word == Word{1});
  CHECK(r.conjugator == Word{-2});
}

TEST_CASE("substitute examples") {
  // r2 = x2^-1 x3^-1 x2^-1 x3 x2 x3 with x3 = x1^-1 x2
  Word r2{-2, -3, -2, 3, 2, 3};
  CHECK(substitute(r2, 3, Word{-1, 2}) == Word{-2, -2, 1, -2, -1, 2, 2, -1, 2});
  CHECK(substitute(Word{3}, 3, Word{-1, 2}) == Word{-1, 2});
  CHECK(substitute(Word{1, 2}, 3, Word{1}) == Word{1, 2});
  CHECK_THROWS_AS(substitute(Word{1}, 1, Word{1, 2}), std::invalid_argument);
}

TEST_CASE("exponent_sum examples") {
  Word r1{1, 2, 1, -2, -1, -2};
  CHECK(exponent_sum(r1, 1) == 1);
  CHECK(exponent_sum(r1, 2) == -1);
  CHECK(exponent_sum(Word{}, 1) == 0);
  CHECK(occurrences(r1, 2) == 3);
}

TEST_CASE("power and rotate") {
  CHECK(power(Word{1, 2}, 3) == Word{1, 2, 1, 2, 1, 2});
  CHECK(power(Word{1, 2}, -1) == Word{-2, -1});
  CHECK(power(Word{1, 2, -1}, 2) == Word{1, 2, 2, -1});
  CHECK(power(Word{1}, 0) == Word{});
  CHECK(rotate(Word{1, 2, 3}, 1) == Word{2, 3, 1});
  CHECK(rotate(Word{1, 2, 3}, 4) == Word{2, 3, 1});
}

TEST_CASE("cyclic_key identifies rotations, inverses and conjugates") {
  Word w{1, 2, -1, 2, 2};
  CHECK(cyclic_key(w) == cyclic_key(rotate(w, 2)));
  CHECK(cyclic_key(w) == cyclic_key(invert(w)));
  CHECK(cyclic_key(w) == cyclic_key(Word{3} * w * Word{-3}));
  CHECK(cyclically_equivalent(Word{1, 2}, Word{-1, -2}));
  CHECK_FALSE(cyclically_equivalent(Word{1, 2}, Word{1, -2}));
}

TEST_CASE("property: free_reduce is idempotent and never lengthens") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    Word w = random_word(rng, 3, 24);
    Word r = free_reduce(w);
    REQUIRE(r.is_reduced());
    REQUIRE(free_reduce(r) == r);
    REQUIRE(r.size() <= w.size());
    REQUIRE(r.size() % 2 == w.size() % 2);
  }
}

TEST_CASE("property: w times its inverse reduces to the identity") {
  Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    Word w = random_word(rng, 4, 20);
    REQUIRE(free_reduce(concat(w, invert(w))) == Word{});
    REQUIRE(invert(invert(w)) == free_reduce(w));
  }
}

TEST_CASE("property: substitute commutes with free_reduce") {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    Word w = random_word(rng, 3, 16);
    Word repl = random_word(rng, 2, 6);
    int g = 3;
    REQUIRE(substitute(free_reduce(w), g, repl) == free_reduce(substitute(w, g, repl)));
  }
}

TEST_CASE("property: exponent_sum is additive and negated by invert") {
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    Word u = random_word(rng, 3, 12);
    Word v = random_word(rng, 3, 12);
    for (int g = 1; g <= 3; ++g) {
      REQUIRE(exponent_sum(concat(u, v), g) == exponent_sum(u, g) + exponent_sum(v, g));
      REQUIRE(exponent_sum(invert(u), g) == -exponent_sum(u, g));
    }
  }
}

TEST_CASE("property: cyclic_reduce conjugates back to the reduced word") {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    Word w = random_word(rng, 3, 16);
    auto r = cyclic_reduce(w);
    REQUIRE(r.conjugator * r.word * invert(r.conjugator) == free_reduce(w));
    if (r.word.size() > 1) REQUIRE(r.word.front() != -r.word.back());
  }
}
