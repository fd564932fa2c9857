#include "doctest.h"

#include "fpcheck/coset.hpp"
#include "fpcheck/paperdata.hpp"
#include "fpcheck/permgrp.hpp"
#include "support.hpp"

using namespace fpcheck;
using fpcheck::testing::Rng;
using fpcheck::testing::uniform;

namespace {

Presentation cyclic(int n) { return Presentation({"a"}, {power(Word{1}, n)}); }

// Orders of fpcheck::testing::finite_corpus(), worked out by hand from the
// standard identifications (cyclic, dihedral, quaternion, metacyclic,
// Coxeter and triangle groups).
std::vector<std::size_t> const corpus_orders{1, 5, 12, 6, 12, 24, 60, 27, 8, 14, 8, 6,
                                             12, 16, 20, 21, 6, 1, 24, 48, 120, 24, 120};

}  // namespace

TEST_CASE("enumerate examples") {
  auto r = enumerate(cyclic(5), {}, Strategy::Felsch, 100);
  REQUIRE(r.completed());
  CHECK(r.index() == 5);

  auto t = enumerate(target_presentation(), {}, Strategy::Felsch, 10000);
  REQUIRE(t.completed());
  CHECK(t.index() == 60);

  Presentation s3({"a", "b"}, {Word{1, 1}, Word{2, 2}, power(Word{1, 2}, 3)});
  auto h = enumerate(s3, {}, Strategy::HLT, 1000);
  REQUIRE(h.completed());
  CHECK(h.index() == 6);
  // Oracle: two transpositions generate the symmetric group on 3 points.
  auto cl = closure({Permutation::from_cycles(3, {{1, 2}}), Permutation::from_cycles(3, {{2, 3}})}, 100);
  REQUIRE(cl);
  CHECK(cl->size() == h.index());
}

TEST_CASE("the target order matches the closure of a (2,3,5) generating pair") {
  auto a = Permutation::from_cycles(5, {{1, 2}, {3, 4}});
  auto b = Permutation::from_cycles(5, {{1, 3, 5}});
  REQUIRE(satisfies(target_presentation(), Assignment{{a, b}}));
  auto cl = closure({a, b}, 1000);
  REQUIRE(cl);
  CHECK(cl->size() == 60);
  CHECK(order(target_presentation()).value == cl->size());
}

TEST_CASE("order examples") {
  CHECK(order(target_presentation()).value == 60);
  auto free = order(Presentation({"a"}, {}), 50);
  CHECK_FALSE(free.completed);
  CHECK(free.value == 50);
  auto triv = order(cyclic(1));
  CHECK(triv.completed);
  CHECK(triv.value == 1);
  Presentation empty({}, {});
  CHECK(order(empty).value == 1);
}

TEST_CASE("overflow is reported with the cap, never as a wrong index") {
  for (auto s : {Strategy::Felsch, Strategy::HLT}) {
    auto r = enumerate(target_presentation(), {}, s, 10);
    CHECK_FALSE(r.completed());
    CHECK(r.value == 10);
  }
}

TEST_CASE("subgroup enumeration") {
  // <a> in the target group has index 30.
  auto r = enumerate(target_presentation(), {Word{1}});
  REQUIRE(r.completed());
  CHECK(r.index() == 30);
  CHECK(table_defects(r.table, target_presentation(), {Word{1}}).empty());
  // The whole group.
  auto all = enumerate(target_presentation(), {Word{1}, Word{2}});
  CHECK(all.index() == 1);
}

TEST_CASE("permutation_rep examples") {
  auto r = enumerate(cyclic(5));
  auto rep = permutation_rep(r.table);
  REQUIRE(rep.size() == 1);
  CHECK(rep[0].order() == 5);
  CHECK(rep[0].to_cycle_string().size() == std::string("(1 2 3 4 5)").size());

  auto t = enumerate(target_presentation());
  auto rt = permutation_rep(t.table);
  CHECK(rt[0].order() == 2);
  CHECK(rt[1].order() == 3);
  CHECK(satisfies(target_presentation(), Assignment{rt}));

  auto one = enumerate(cyclic(1));
  CHECK(permutation_rep(one.table)[0].is_identity());

  CosetTable partial(1, 2);
  CHECK_THROWS(permutation_rep(partial));
}

TEST_CASE("table dump") {
  auto r = enumerate(cyclic(3));
  std::string d = r.table.dump(cyclic(3));
  CHECK(d.rfind("# coset a a^-1\n", 0) == 0);
  CHECK(d.find("1: 2 3\n") != std::string::npos);
}

TEST_CASE("the defect scanner catches corrupted tables") {
  auto r = enumerate(target_presentation());
  REQUIRE(table_defects(r.table, target_presentation()).empty());
  CosetTable t = r.table;
  std::uint32_t e = t.entry(0, 0);
  t.set(0, 0, e == 0 ? 1 : 0);
  CHECK_FALSE(table_defects(t, target_presentation()).empty());
  CosetTable u = r.table;
  u.set(3, 2, CosetTable::undefined);
  CHECK_FALSE(table_defects(u, target_presentation()).empty());
}

TEST_CASE("the complement group order is finite and a multiple of 60") {
  auto r = enumerate(complement_presentation(), {}, Strategy::Felsch, 100000);
  REQUIRE(r.completed());
  CHECK(r.index() % 60 == 0);
  CHECK(table_defects(r.table, complement_presentation()).empty());
  MESSAGE("complement group order: " << r.index());
}

TEST_CASE("property: Felsch and HLT agree on the corpus and tables pass the scanner") {
  auto corpus = fpcheck::testing::finite_corpus();
  REQUIRE(corpus.size() >= 20);
  REQUIRE(corpus.size() == corpus_orders.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto const& p = corpus[i];
    INFO(p.to_string());
    auto f = enumerate(p, {}, Strategy::Felsch);
    auto h = enumerate(p, {}, Strategy::HLT);
    REQUIRE(f.completed());
    REQUIRE(h.completed());
    CHECK(f.index() == h.index());
    CHECK(f.index() == corpus_orders[i]);
    CHECK(table_defects(f.table, p).empty());
    CHECK(table_defects(h.table, p).empty());
    auto rep = permutation_rep(f.table);
    CHECK(satisfies(p, Assignment{rep}));
    auto cl = closure(rep, 1000);
    REQUIRE(cl);
    // The regular representation is faithful.
    CHECK(cl->size() == f.index());
  }
}

TEST_CASE("property: Lagrange over cyclic subgroups") {
  Rng rng(51);
  auto corpus = fpcheck::testing::finite_corpus();
  for (auto const& p : corpus) {
    auto full = enumerate(p);
    REQUIRE(full.completed());
    auto rep = permutation_rep(full.table);
    for (int t = 0; t < 5; ++t) {
      Word w = fpcheck::testing::random_word(rng, static_cast<int>(p.generator_count()), 8);
      auto sub = enumerate(p, {w});
      REQUIRE(sub.completed());
      CHECK(table_defects(sub.table, p, {w}).empty());
      std::uint64_t ord = evaluate(w, Assignment{rep}).order();
      CHECK(sub.index() * ord == full.index());
    }
  }
}

TEST_CASE("property: enumeration is deterministic") {
  for (auto s : {Strategy::Felsch, Strategy::HLT}) {
    auto a = enumerate(complement_presentation(), {}, s);
    auto b = enumerate(complement_presentation(), {}, s);
    CHECK(a.table.dump(complement_presentation()) == b.table.dump(complement_presentation()));
    CHECK(a.stats.cosets_defined == b.stats.cosets_defined);
    CHECK(a.stats.coincidences == b.stats.coincidences);
  }
}

TEST_CASE("larger enumerations exercise coincidences and compaction") {
  // Z_7 x Z_7 x Z_7 presented redundantly; order 343.
  std::vector<std::string> abc{"a", "b", "c"};
  Presentation p(abc, {power(Word{1}, 7), power(Word{2}, 7), power(Word{3}, 7), Word{1, 2, -1, -2}, Word{2, 3, -2, -3},
                       Word{1, 3, -1, -3}});
  for (auto s : {Strategy::Felsch, Strategy::HLT}) {
    auto r = enumerate(p, {}, s);
    REQUIRE(r.completed());
    CHECK(r.index() == 343);
    CHECK(table_defects(r.table, p).empty());
  }
  // Identifying c with a b leaves Z_7 x Z_7, found through coincidences.
  std::vector<Word> rels = p.relators();
  rels.push_back(Word{-3, 1, 2});
  Presentation q(abc, rels);
  std::uint64_t coincidences = 0;
  for (auto s : {Strategy::Felsch, Strategy::HLT}) {
    auto r = enumerate(q, {}, s);
    REQUIRE(r.completed());
    CHECK(r.index() == 49);
    coincidences += r.stats.coincidences;
    CHECK(table_defects(r.table, q).empty());
  }
  CHECK(coincidences > 0);
}
