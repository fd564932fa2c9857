// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "fpcheck/abelian.hpp"
#include "fpcheck/cli.hpp"
#include "fpcheck/coset.hpp"
#include "fpcheck/paperdata.hpp"
#include "fpcheck/permgrp.hpp"
#include "fpcheck/textio.hpp"
#include "support.hpp"

using namespace fpcheck;

namespace {

struct Verdict {
  bool ok;
  std::string detail;
};

BigInt abs_big(BigInt const& v) { return v < 0 ? BigInt(-v) : v; }

Verdict order_certificate() {
  auto r = enumerate(target_presentation(), {}, Strategy::Felsch, default_max_cosets);
  if (!r.completed()) return {false, "enumeration overflowed"};
  auto a = Permutation::from_cycles(5, {{1, 2}, {3, 4}});
  auto b = Permutation::from_cycles(5, {{1, 3, 5}});
  auto cl = closure({a, b}, 1000);
  bool oracle = satisfies(target_presentation(), Assignment{{a, b}}) && cl && cl->size() == 60;
  bool ok = r.index() == 60 && oracle && table_defects(r.table, target_presentation()).empty();
  return {ok, "index " + std::to_string(r.index()) + ", closure " + (cl ? std::to_string(cl->size()) : "overflow")};
}

Verdict derivation_replay() {
  DerivationScript s = derivation_script();
  auto r = replay_derivation(complement_presentation(), s);
  std::size_t quotient = s.steps.size();
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    if (kind_of(s.steps[i].move) == StepKind::AddQuotientRelator) {
      quotient = i;
      break;
    }
  }
  bool ok = r.ok() && r.steps_applied == s.steps.size() && r.isomorphism_preserving_prefix_length == quotient &&
            s.steps[quotient].citation == "Include the relation $a^2=b^3=1:$" &&
            equivalent_up_to_relator_conjugacy(r.final_presentation(), target_presentation());
  return {ok, std::to_string(r.mismatches.size()) + " mismatches, prefix " +
                  std::to_string(r.isomorphism_preserving_prefix_length) + ", terminal " +
                  r.final_presentation().to_string()};
}

Verdict non_triviality() {
  auto s = find_epimorphism(complement_presentation(), 5, 60);
  if (s.outcome != EpimorphismSearch::Outcome::Found) return {false, "no witness"};
  auto const& w = *s.witness;
  bool even = std::all_of(w.images.begin(), w.images.end(), [](auto const& p) { return p.is_even(); });
  auto cl = closure(w.images, 1000);
  bool ok = even && w.degree() == 5 && satisfies(complement_presentation(), w) && cl && cl->size() == 60;
  std::string d = "witness";
  for (auto const& p : w.images) d += " " + p.to_cycle_string();
  return {ok, d + ", closure " + (cl ? std::to_string(cl->size()) : "overflow")};
}

Verdict perfectness() {
  auto inv = abelian_invariants(complement_presentation());
  IntMatrix m = relation_matrix(complement_presentation());
  BigInt det = determinant(m);
  bool ok = inv.trivial() && m.rows() == 3 && m.cols() == 3 && abs_big(det) == 1;
  std::ostringstream d;
  d << "H1 = " << inv.to_string() << ", det = " << det;
  return {ok, d.str()};
}

Verdict complement_order() {
  auto r = enumerate(complement_presentation(), {}, Strategy::Felsch, 100000);
  if (!r.completed()) return {false, "enumeration overflowed at 100000 cosets"};
  bool ok = r.index() > 0 && r.index() % 60 == 0 && table_defects(r.table, complement_presentation()).empty();
  return {ok, "k = " + std::to_string(r.index())};
}

Verdict euler_identities() {
  int bad = 0;
  for (int n = 2; n <= 10; ++n) {
    auto t = handle_tables(n);
    long s = n % 2 == 0 ? 1 : -1;
    if (euler_characteristic(t.at("Kn")) != 1 + s) ++bad;
    if (euler_characteristic(t.at("boundaryX")) != 1 + s) ++bad;
    if (euler_characteristic(t.at("X")) != 1) ++bad;
    if (euler_characteristic(t.at("SnxS2")) != 2 * (1 + s)) ++bad;
  }
  bool merged = handle_tables(2).at("Kn").merged() && handle_tables(2).at("Kn").dense() == std::vector<long>{3, 4, 3};
  return {bad == 0 && merged, "n = 2..10, " + std::to_string(bad) + " violations"};
}

Verdict property_suites() {
  using namespace fpcheck::testing;
  Rng rng(2024);
  int snf_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    IntMatrix m = random_matrix(rng, 8, 20);
    auto r = smith_normal_form(m);
    BigMatrix d(m.rows(), m.cols());
    for (std::size_t k = 0; k < r.diagonal.size(); ++k) d(k, k) = r.diagonal[k];
    bool ok = multiply(multiply(r.left, to_big(m)), r.right) == d && abs_big(determinant(r.left)) == 1 &&
              abs_big(determinant(r.right)) == 1;
    for (std::size_t k = 0; k + 1 < r.diagonal.size(); ++k) {
      if (r.diagonal[k] == 0 ? r.diagonal[k + 1] != 0 : r.diagonal[k + 1] % r.diagonal[k] != 0) ok = false;
    }
    if (!ok) ++snf_bad;
  }

  auto corpus = finite_corpus();
  int coset_bad = 0;
  for (auto const& p : corpus) {
    auto f = enumerate(p, {}, Strategy::Felsch);
    auto h = enumerate(p, {}, Strategy::HLT);
    if (!f.completed() || !h.completed() || f.index() != h.index()) ++coset_bad;
    if (f.completed() && !table_defects(f.table, p).empty()) ++coset_bad;
    if (h.completed() && !table_defects(h.table, p).empty()) ++coset_bad;
  }

  int parse_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    Presentation p = parse_presentation(random_file(rng));
    if (!(parse_presentation(print_presentation(p)) == p)) ++parse_bad;
  }
  bool ok = snf_bad == 0 && coset_bad == 0 && parse_bad == 0 && corpus.size() >= 20;
  return {ok, "snf 1000 (" + std::to_string(snf_bad) + " bad), felsch/hlt " + std::to_string(corpus.size()) + " (" +
                  std::to_string(coset_bad) + " bad), round-trip 1000 (" + std::to_string(parse_bad) + " bad)"};
}

Verdict negative_controls() {
  DerivationScript s = derivation_script();
  std::size_t corrupted = 3;
  std::vector<Word> rels = s.steps[corrupted].expected->relators();
  rels[1] = rels[1] * Word{2};
  s.steps[corrupted].expected = s.steps[corrupted].expected->with_relators(rels);
  auto r = replay_derivation(complement_presentation(), s);
  bool replay_ok = r.mismatches.size() == 1 && r.mismatches[0].step == corrupted;

  auto path = (std::filesystem::temp_directory_path() / ("fpcheck-acceptance-" + std::to_string(::getpid()) + ".txt"))
                  .string();
  std::ofstream(path) << print_presentation(target_presentation());
  std::ostringstream out, err;
  int code = cli::run({"order", path, "--max-cosets", "10"}, out, err);
  std::remove(path.c_str());
  bool cap_ok = code == cli::exit_inconclusive && out.str().find("inconclusive") != std::string::npos &&
                out.str().find("60") == std::string::npos;
  return {replay_ok && cap_ok, "mismatch at step " +
                                   (r.mismatches.empty() ? std::string("none") : std::to_string(r.mismatches[0].step)) +
                                   " (corrupted " + std::to_string(corrupted) + "), capped order exit " +
                                   std::to_string(code)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    char const* name;
    double budget_ms;
    std::function<Verdict()> run;
  };
  std::vector<Criterion> const criteria{
      {1, "order certificate", 1000, order_certificate},
      {2, "derivation replay", 1000, derivation_replay},
      {3, "non-triviality certificate", 60000, non_triviality},
      {4, "perfectness", 1000, perfectness},
      {5, "complement group order", 60000, complement_order},
      {6, "Euler characteristic identities", 1000, euler_identities},
      {7, "property suites", 120000, property_suites},
      {8, "negative controls", 60000, negative_controls},
  };
  int failures = 0;
  for (auto const& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (std::exception const& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    bool ok = v.ok && ms < c.budget_ms;
    if (!ok) ++failures;
    std::printf("%s criterion %d (%s): %s [%.1f ms]\n", ok ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), ms);
  }
  return failures == 0 ? 0 : 1;
}
