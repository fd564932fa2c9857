#include "fpcheck/paperdata.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <future>
#include <sstream>
#include <stdexcept>

#include "fpcheck/permgrp.hpp"
#include "fpcheck/textio.hpp"

namespace fpcheck {

namespace {

namespace quote {
constexpr char const* complement_group = "x_1x_2x_1x_2^{-1}x_1^{-1}x_2^{-1}=1";
constexpr char const* target_group = "a^2=b^{3}=(ab)^5=1";
constexpr char const* eliminate = "x_3=x_1^{-1}x_2";
constexpr char const* first_elimination = "x_2^{-2}x_1x_2^{-1}x_1^{-1}x_2^2x_1^{-1}x_2=1";
constexpr char const* conjugate_x2 = "x_2^{-1}x_1x_2^{-1}x_1^{-1}x_2^2x_1^{-1}=1";
constexpr char const* substitution = "Use the substitution $x_1=ab^{-1}$ and $x_2=b^2a^{-1}$";
constexpr char const* after_substitution = "ab^{-2}ab^{-1}ab^{-1}a^{-1}b^2a^{-1}b^2a^{-1}ba^{-1}=1";
constexpr char const* conjugate_a = "b^{-2}ab^{-1}ab^{-1}a^{-1}b^2a^{-1}b^2a^{-1}b=1";
constexpr char const* conjugate_b = "b^{-1}ab^{-1}ab^{-1}a^{-1}b^2a^{-1}b^2a^{-1}=1";
constexpr char const* include_relation = "Include the relation $a^2=b^3=1:$";
constexpr char const* power_chain = "1=ababababab";
constexpr char const* a5 = "isomorphic to the alternating group $A_5$ of degree $5$";
constexpr char const* nontrivial = "is non-trivial";
constexpr char const* homology_sphere = "a non-simply connected homology $(n+2)$-sphere";
constexpr char const* same_group = "does not affect the fundamental group";
constexpr char const* snxs2 =
    "a single $0$-handle, a single $2$-handle, a single $n$-handle, and a single $(n+2)$-handle";
constexpr char const* kn = "three $0$-handles, two $1$-handles, two $(n-1)$-handles and three $n$-handles";
constexpr char const* complement_handles = "a single $(n+2)$-dimensional $0$-handle, three $1$-handles";
constexpr char const* boundary_handles =
    "a $0$-handle, three $1$-handles, three $2$-handles, three $n$-handles, three $(n+1)$-handles "
    "and an $(n+2)$-handle";
constexpr char const* x_handles = "a $0$-handle, an $n$-handle and an $(n+1)$-handle";
constexpr char const* geometric = "geometric intersection number $|K^n\\cap (\\{x_0\\}\\times S^2)|=3$";
constexpr char const* algebraic = "algebraic intersection number $K^n\\cdot (\\{x_0\\}\\times S^2)=1$";
}  // namespace quote

Presentation make(std::vector<std::string> symbols, std::vector<std::string> const& relators,
                  std::string provenance = {}) {
  std::vector<Word> words;
  for (auto const& r : relators) words.push_back(parse_word(r, symbols));
  return Presentation(std::move(symbols), std::move(words), std::move(provenance));
}

Word word(std::string const& text, std::vector<std::string> const& symbols) {
  return parse_word(text, symbols);
}

DerivationStep step(Move move, Presentation expected, char const* cite) {
  return DerivationStep{std::move(move), std::move(expected), cite};
}

}  // namespace

bool IntersectionData::consistent() const noexcept {
  auto alg = static_cast<std::uint64_t>(algebraic < 0 ? -algebraic : algebraic);
  return alg <= geometric && (geometric - alg) % 2 == 0;
}

Presentation presentation_from_diagram(HandleDiagram const& d) {
  for (int index : d.higher_handles) {
    if (index < 3) throw std::invalid_argument("handles of index below 3 must be given explicitly");
  }
  std::vector<Word> relators;
  for (auto const& crossings : d.two_handle_words) {
    std::vector<Letter> letters;
    for (auto const& [name, sign] : crossings) {
      auto it = std::find(d.one_handles.begin(), d.one_handles.end(), name);
      if (it == d.one_handles.end()) throw std::invalid_argument("2-handle passes unknown 1-handle " + name);
      if (sign != 1 && sign != -1) throw std::invalid_argument("crossing signs must be +1 or -1");
      letters.push_back(sign * static_cast<Letter>(it - d.one_handles.begin() + 1));
    }
    relators.emplace_back(std::move(letters));
  }
  return Presentation(d.one_handles, std::move(relators));
}

Presentation complement_presentation() {
  return make({"x1", "x2", "x3"},
              {"x1 x2 x1 x2^-1 x1^-1 x2^-1", "x2^-1 x3^-1 x2^-1 x3 x2 x3", "x1^-1 x2 x3^-1"},
              "fundamental group of the complement of K^n");
}

Presentation target_presentation() {
  return make({"a", "b"}, {"a^2", "b^3", "(a b)^5"}, "(2,3,5) triangle group");
}

DerivationScript derivation_script() {
  std::vector<std::string> const x{"x1", "x2"};
  std::vector<std::string> const ab{"a", "b"};
  std::string const r1 = "x1 x2 x1 x2^-1 x1^-1 x2^-1";

  DerivationScript s;
  s.steps.push_back(step(EliminateGenerator{"x3", 2},
                         make(x, {r1, "x2^-2 x1 x2^-1 x1^-1 x2^2 x1^-1 x2"}), quote::first_elimination));
  s.steps.push_back(step(ConjugateRelator{1, word("x2", x)},
                         make(x, {r1, "x2^-1 x1 x2^-1 x1^-1 x2^2 x1^-1"}), quote::conjugate_x2));
  s.steps.push_back(step(
      ChangeGenerators{ab,
                       {word("a b^-1", ab), word("b^2 a^-1", ab)},
                       {word("x1 x2 x1", x), word("x2 x1", x)}},
      make(ab, {"a^2 b^-3", "a b^-2 a b^-1 a b^-1 a^-1 b^2 a^-1 b^2 a^-1 b a^-1"}), quote::substitution));
  s.steps.push_back(step(ConjugateRelator{1, word("a^-1", ab)},
                         make(ab, {"a^2 b^-3", "b^-2 a b^-1 a b^-1 a^-1 b^2 a^-1 b^2 a^-1 b"}),
                         quote::conjugate_a));
  std::string const before_quotient = "b^-1 a b^-1 a b^-1 a^-1 b^2 a^-1 b^2 a^-1";
  s.steps.push_back(step(ConjugateRelator{1, word("b", ab)}, make(ab, {"a^2 b^-3", before_quotient}),
                         quote::conjugate_b));
  s.steps.push_back(step(AddQuotientRelator{{word("a^2", ab), word("b^3", ab)}, true},
                         make(ab, {"a^2 b^-3", before_quotient, "a^2", "b^3"}), quote::include_relation));

  // The relator is pushed across the equals sign one letter at a time,
  // reducing with a^2 = b^3 = 1; each displayed equation is kept as a note.
  NormalizeModuloTorsion chain{1, {{"a", 2}, {"b", 3}}, {}};
  std::vector<std::pair<std::string, std::string>> const displays{
      {"b^-1 a b^-1 a b^-1 a^-1 b^2 a^-1 b^2", "a"},
      {"b^-1 a b^-1 a b^-1 a^-1 b^2 a^-1", "a b"},
      {"b^-1 a b^-1 a b^-1 a^-1 b^2", "a b a"},
      {"b^-1 a b^-1 a b^-1 a^-1", "a b a b"},
      {"b^-1 a b^-1 a b^-1", "a b a b a"},
      {"b^-1 a b^-1 a", "a b a b a b"},
      {"b^-1 a b^-1", "a b a b a b a"},
      {"b^-1 a", "a b a b a b a b"},
      {"b^-1", "a b a b a b a b a"},
      {"1", "a b a b a b a b a b"},
  };
  for (auto const& [lhs, rhs] : displays) {
    chain.annotations.push_back(word(lhs, ab) * invert(word(rhs, ab)));
  }
  s.steps.push_back(step(std::move(chain), make(ab, {"a^2 b^-3", "(a b)^-5", "a^2", "b^3"}),
                         quote::power_chain));
  s.steps.push_back(step(ReplaceRelatorByEquivalent{0, Word{}}, target_presentation(), quote::target_group));
  return s;
}

IntersectionData intersection_data() { return {3, 1}; }

std::map<std::string, HandleCountTable> handle_tables(int n) {
  if (n < 2) throw std::invalid_argument("handle tables are defined for n >= 2");
  std::map<std::string, HandleCountTable> t;
  t.emplace("SnxS2", HandleCountTable(n + 2, {{0, 1}, {2, 1}, {n, 1}, {n + 2, 1}}));
  t.emplace("Kn", HandleCountTable(n, {{0, 3}, {1, 2}, {n - 1, 2}, {n, 3}}));
  // Each i-handle of K^n gives an (i+1)-handle of the complement, except that
  // the three n-handles give only two (n+1)-handles; the 2- and n-handle of
  // S^n x S^2 survive and its top handle does not.
  t.emplace("complement", HandleCountTable(n + 2, {{0, 1}, {1, 3}, {2, 3}, {n, 3}, {n + 1, 2}}));
  t.emplace("X", HandleCountTable(n + 3, {{0, 1}, {n, 1}, {n + 1, 1}}));
  t.emplace("boundaryX",
            HandleCountTable(n + 2, {{0, 1}, {1, 3}, {2, 3}, {n, 3}, {n + 1, 3}, {n + 2, 1}}));
  return t;
}

HandleDiagram complement_diagram() {
  Presentation p = complement_presentation();
  HandleDiagram d;
  d.one_handles = p.symbols();
  for (auto const& r : p.relators()) {
    std::vector<std::pair<std::string, int>> crossings;
    for (Letter x : r) crossings.emplace_back(p.symbols()[static_cast<std::size_t>(generator_of(x) - 1)], x > 0 ? 1 : -1);
    d.two_handle_words.push_back(std::move(crossings));
  }
  return d;
}

HandleDiagram boundary_diagram(int n) {
  if (n < 2) throw std::invalid_argument("boundary diagram is defined for n >= 2");
  HandleDiagram d = complement_diagram();
  d.higher_handles = {n + 1, n + 2};
  return d;
}

std::vector<std::string> const& bundled_quotes() {
  static std::vector<std::string> const quotes{
      quote::complement_group, quote::target_group,     quote::eliminate,
      quote::first_elimination, quote::conjugate_x2,    quote::substitution,
      quote::after_substitution, quote::conjugate_a,    quote::conjugate_b,
      quote::include_relation,  quote::power_chain,     quote::a5,
      quote::nontrivial,        quote::homology_sphere, quote::same_group,
      quote::snxs2,             quote::kn,              quote::complement_handles,
      quote::boundary_handles,  quote::x_handles,       quote::geometric,
      quote::algebraic,
  };
  return quotes;
}

std::vector<PaperFact> registry() {
  auto family = [](std::string key) {
    return HandleTableFamily{key, [key](int n) { return handle_tables(n).at(key); }};
  };
  return {
      {"complement-presentation", {"complement group presentation", quote::complement_group},
       complement_presentation()},
      {"target-presentation", {"terminal presentation", quote::target_group}, target_presentation()},
      {"derivation-script", {"derivation of the complement group", quote::eliminate}, derivation_script()},
      {"handles-SnxS2", {"standard decomposition of S^n x S^2", quote::snxs2}, family("SnxS2")},
      {"handles-Kn", {"decomposition of K^n", quote::kn}, family("Kn")},
      {"handles-complement", {"decomposition of the complement", quote::complement_handles},
       family("complement")},
      {"handles-boundaryX", {"decomposition of the boundary of X", quote::boundary_handles},
       family("boundaryX")},
      {"handles-X", {"decomposition of X", quote::x_handles}, family("X")},
      {"intersection-numbers", {"intersection of K^n with a sphere fibre", quote::geometric},
       intersection_data()},
  };
}

PaperData PaperData::bundled() {
  return {complement_presentation(), target_presentation(), derivation_script(), intersection_data()};
}

char const* to_string(CheckOutcome o) noexcept {
  switch (o) {
    case CheckOutcome::Pass: return "pass";
    case CheckOutcome::Fail: return "fail";
    case CheckOutcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

CheckOutcome VerificationReport::overall() const noexcept {
  bool inconclusive = false;
  for (auto const& c : checks) {
    if (c.outcome == CheckOutcome::Fail) return CheckOutcome::Fail;
    if (c.outcome == CheckOutcome::Inconclusive) inconclusive = true;
  }
  return inconclusive ? CheckOutcome::Inconclusive : CheckOutcome::Pass;
}

CheckEntry const* VerificationReport::find(std::string const& id) const noexcept {
  for (auto const& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

namespace {

struct CheckResult {
  CheckOutcome outcome;
  std::string details;
  std::optional<std::size_t> complement_order;
};

std::optional<std::size_t> quotient_step_index(DerivationScript const& s) {
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    if (kind_of(s.steps[i].move) == StepKind::AddQuotientRelator) return i;
  }
  return std::nullopt;
}

CheckResult check_replay(PaperData const& data) {
  DerivationReport r = replay_derivation(data.complement, data.script);
  std::ostringstream d;
  d << r.steps_applied << "/" << data.script.steps.size() << " steps applied";
  if (!r.mismatches.empty()) {
    d << "; " << r.mismatches.size() << " mismatch(es), first at step " << r.mismatches.front().step + 1
      << " (" << r.mismatches.front().detail << "): expected " << r.mismatches.front().expected.to_string()
      << ", got " << r.mismatches.front().actual.to_string();
  }
  if (r.halted) d << "; step " << r.halted->step + 1 << " inapplicable: " << r.halted->message;
  if (!r.ok()) return {CheckOutcome::Fail, d.str(), {}};
  auto count = std::count_if(data.script.steps.begin(), data.script.steps.end(), [](auto const& s) {
    return kind_of(s.move) == StepKind::AddQuotientRelator;
  });
  auto q = quotient_step_index(data.script);
  d << "; isomorphism-preserving prefix " << r.isomorphism_preserving_prefix_length << " steps";
  if (count != 1 || !q || r.isomorphism_preserving_prefix_length != *q) {
    d << "; expected exactly one quotient step ending the prefix";
    return {CheckOutcome::Fail, d.str(), {}};
  }
  if (!equivalent_up_to_relator_conjugacy(r.final_presentation(), data.target)) {
    d << "; terminal presentation " << r.final_presentation().to_string() << " differs from "
      << data.target.to_string();
    return {CheckOutcome::Fail, d.str(), {}};
  }
  d << "; terminal " << r.final_presentation().to_string();
  return {CheckOutcome::Pass, d.str(), {}};
}

CheckResult check_target_order(PaperData const& data, VerifyLimits const& limits) {
  auto e = enumerate(data.target, {}, limits.strategy, limits.max_cosets);
  if (!e.completed()) {
    return {CheckOutcome::Inconclusive,
            "coset enumeration exceeded " + std::to_string(limits.max_cosets) + " cosets", {}};
  }
  std::ostringstream d;
  d << "coset enumeration index " << e.index();
  auto defects = table_defects(e.table, data.target);
  if (!defects.empty()) return {CheckOutcome::Fail, d.str() + "; table defect: " + defects.front(), {}};
  auto elements = closure(permutation_rep(e.table), 1000);
  d << "; permutation image has " << (elements ? std::to_string(elements->size()) : "> 1000") << " elements";
  bool ok = e.index() == 60 && elements && elements->size() == 60;
  return {ok ? CheckOutcome::Pass : CheckOutcome::Fail, d.str(), {}};
}

CheckResult check_epimorphism(PaperData const& data, VerifyLimits const& limits) {
  auto s = find_epimorphism(data.complement, 5, 60, limits.search_cap);
  std::ostringstream d;
  d << s.nodes_visited << " search nodes";
  if (s.outcome == EpimorphismSearch::Outcome::Overflow) {
    return {CheckOutcome::Inconclusive, d.str() + "; search cap reached", {}};
  }
  if (s.outcome == EpimorphismSearch::Outcome::None) {
    return {CheckOutcome::Fail, d.str() + "; no assignment onto A5 exists", {}};
  }
  auto const& a = *s.witness;
  bool even = std::all_of(a.images.begin(), a.images.end(), [](auto const& p) { return p.is_even(); });
  auto elements = closure(a.images, 61);
  bool ok = satisfies(data.complement, a) && even && elements && elements->size() == 60;
  d << "; witness";
  for (std::size_t i = 0; i < a.images.size(); ++i) {
    d << ' ' << data.complement.symbols()[i] << "->" << a.images[i].to_cycle_string();
  }
  d << "; relators hold and the image has " << (elements ? elements->size() : 0)
    << " elements, so the group surjects onto A5 and is non-trivial";
  return {ok ? CheckOutcome::Pass : CheckOutcome::Fail, d.str(), {}};
}

CheckResult check_perfect(PaperData const& data, NRange range) {
  AbelianInvariants inv = abelian_invariants(data.complement);
  IntMatrix m = relation_matrix(data.complement);
  std::ostringstream d;
  d << "H1 = " << inv.to_string();
  bool ok = inv.trivial();
  if (m.rows() == m.cols()) {
    BigInt det = determinant(m);
    d << "; relation matrix determinant " << det;
    ok = ok && (det == 1 || det == -1);
  } else {
    d << "; relation matrix is not square";
    ok = false;
  }
  for (int n = range.lo; n <= range.hi; ++n) {
    if (!(presentation_from_diagram(boundary_diagram(n)) == presentation_from_diagram(complement_diagram()))) {
      d << "; boundary group differs from complement group at n=" << n;
      ok = false;
    }
  }
  d << "; boundary of X has the complement's fundamental group for n=" << range.lo << ".." << range.hi;
  return {ok ? CheckOutcome::Pass : CheckOutcome::Fail, d.str(), {}};
}

CheckResult check_complement_order(PaperData const& data, VerifyLimits const& limits) {
  auto e = enumerate(data.complement, {}, limits.strategy, limits.max_cosets);
  if (!e.completed()) {
    return {CheckOutcome::Inconclusive,
            "coset enumeration exceeded " + std::to_string(limits.max_cosets) + " cosets", {}};
  }
  std::size_t k = e.index();
  std::ostringstream d;
  d << "order " << k;
  bool ok = k % 60 == 0;
  if (!ok) d << " is not a multiple of 60";
  auto defects = table_defects(e.table, data.complement);
  if (!defects.empty()) {
    d << "; table defect: " << defects.front();
    ok = false;
  }
  DerivationReport r = replay_derivation(data.complement, data.script);
  std::size_t prefix = r.isomorphism_preserving_prefix_length;
  for (std::size_t i = 1; i <= prefix && i < r.intermediate_presentations.size(); ++i) {
    auto o = order(r.intermediate_presentations[i], limits.max_cosets, limits.strategy);
    if (!o.completed) {
      d << "; intermediate " << i << " inconclusive";
      return {CheckOutcome::Inconclusive, d.str(), k};
    }
    if (o.value != k) {
      d << "; intermediate " << i << " has order " << o.value;
      ok = false;
    }
  }
  if (prefix + 1 < r.intermediate_presentations.size()) {
    auto o = order(r.intermediate_presentations[prefix + 1], limits.max_cosets, limits.strategy);
    if (!o.completed) {
      d << "; quotient inconclusive";
      return {CheckOutcome::Inconclusive, d.str(), k};
    }
    d << "; quotient order " << o.value << (k % o.value == 0 ? " divides it" : " does not divide it");
    ok = ok && k % o.value == 0;
  }
  d << "; order preserved across " << prefix << " isomorphism-preserving steps";
  return {ok ? CheckOutcome::Pass : CheckOutcome::Fail, d.str(), k};
}

CheckResult check_euler(NRange range) {
  std::ostringstream d;
  bool ok = true;
  for (int n = range.lo; n <= range.hi; ++n) {
    auto t = handle_tables(n);
    long sign = n % 2 == 0 ? 1 : -1;
    long kn = euler_characteristic(t.at("Kn"));
    long bx = euler_characteristic(t.at("boundaryX"));
    long x = euler_characteristic(t.at("X"));
    long s = euler_characteristic(t.at("SnxS2"));
    long c = euler_characteristic(t.at("complement"));
    bool here = kn == 1 + sign && bx == 1 + sign && x == 1 && s == 2 * (1 + sign) && c == s - kn;
    if (!here) {
      d << "n=" << n << ": chi(Kn)=" << kn << " chi(boundaryX)=" << bx << " chi(X)=" << x
        << " chi(SnxS2)=" << s << " chi(complement)=" << c << "; ";
      ok = false;
    }
  }
  d << "chi(K^n) = chi(boundary X) = 1+(-1)^n, chi(X) = 1, chi(S^n x S^2) = 2(1+(-1)^n), "
    << "chi(complement) = chi(S^n x S^2) - chi(K^n) checked for n=" << range.lo << ".." << range.hi
    << (ok ? "" : " with failures");
  return {ok ? CheckOutcome::Pass : CheckOutcome::Fail, d.str(), {}};
}

CheckResult check_intersection(PaperData const& data) {
  auto const& i = data.intersection;
  std::ostringstream d;
  d << "geometric " << i.geometric << ", algebraic " << i.algebraic;
  return {i.consistent() ? CheckOutcome::Pass : CheckOutcome::Fail, d.str(), {}};
}

}  // namespace

VerificationReport verify_paper(PaperData const& data, NRange range, VerifyLimits const& limits) {
  if (range.lo < 2 || range.hi < range.lo || range.hi > 64) {
    throw std::invalid_argument("n range must satisfy 2 <= lo <= hi <= 64");
  }
  struct Spec {
    char const* id;
    Citation citation;
    std::function<CheckResult()> run;
  };
  std::vector<Spec> const specs{
      {"derivation-replay", {"derivation of the complement group", quote::target_group},
       [&] { return check_replay(data); }},
      {"target-order", {"terminal presentation", quote::a5}, [&] { return check_target_order(data, limits); }},
      {"complement-epimorphism", {"non-triviality of the complement group", quote::nontrivial},
       [&] { return check_epimorphism(data, limits); }},
      {"complement-perfect", {"boundary of X", quote::homology_sphere}, [&] { return check_perfect(data, range); }},
      {"complement-order", {"complement group presentation", quote::complement_group},
       [&] { return check_complement_order(data, limits); }},
      {"euler-characteristics", {"handle decompositions", quote::boundary_handles},
       [&] { return check_euler(range); }},
      {"intersection-parity", {"intersection of K^n with a sphere fibre", quote::geometric},
       [&] { return check_intersection(data); }},
  };

  auto timed = [](Spec const& s) {
    auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = s.run();
    } catch (std::exception const& e) {
      r = {CheckOutcome::Fail, std::string("error: ") + e.what(), {}};
    }
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return std::pair{r, ms};
  };

  std::vector<std::pair<CheckResult, double>> results;
  if (limits.parallel) {
    std::vector<std::future<std::pair<CheckResult, double>>> futures;
    for (auto const& s : specs) futures.push_back(std::async(std::launch::async, timed, std::cref(s)));
    for (auto& f : futures) results.push_back(f.get());
  } else {
    for (auto const& s : specs) results.push_back(timed(s));
  }

  VerificationReport report;
  report.toolkit_version = toolkit_version;
  report.n_range = range;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    auto& [r, ms] = results[i];
    report.checks.push_back({specs[i].id, specs[i].citation, r.outcome, r.details, ms});
    if (r.complement_order) report.complement_order = r.complement_order;
  }
  return report;
}

nlohmann::json to_json(VerificationReport const& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (auto const& c : report.checks) {
    checks.push_back({{"id", c.id},
                      {"citation", {{"location", c.citation.location}, {"quote", c.citation.quote}}},
                      {"outcome", to_string(c.outcome)},
                      {"details", c.details},
                      {"elapsed_ms", c.elapsed_ms}});
  }
  nlohmann::json j{{"toolkit_version", report.toolkit_version},
                   {"n_range", {{"lo", report.n_range.lo}, {"hi", report.n_range.hi}}},
                   {"overall", to_string(report.overall())},
                   {"checks", checks}};
  j["complement_order"] = report.complement_order ? nlohmann::json(*report.complement_order) : nlohmann::json();
  return j;
}

}  // namespace fpcheck
