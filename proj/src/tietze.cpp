#include "fpcheck/tietze.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace fpcheck {

namespace {

void check_relator_index(Presentation const& p, std::size_t idx) {
  if (idx >= p.relators().size()) {
    throw std::out_of_range("relator index " + std::to_string(idx + 1) + " out of range (have " +
                            std::to_string(p.relators().size()) + ")");
  }
}

// Shifts generators above g down by one.
Word drop_generator(Word const& w, int g) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter x : w) {
    int h = generator_of(x);
    if (h == g) throw std::logic_error("word still mentions an eliminated generator");
    if (h > g) x += x > 0 ? -1 : 1;
    out.push_back(x);
  }
  return Word(std::move(out));
}

}  // namespace

Presentation eliminate_generator(Presentation const& p, std::string_view symbol,
                                 std::size_t relator) {
  int g = p.generator(symbol).index;
  check_relator_index(p, relator);
  Word r = cyclic_reduce(p.relators()[relator]).word;
  if (occurrences(r, g) != 1) {
    throw std::invalid_argument("relator " + std::to_string(relator + 1) +
                                " cannot be solved for " + std::string(symbol) +
                                ": it must contain the generator exactly once");
  }
  auto letters = r.letters();
  auto pos = static_cast<std::size_t>(
      std::find_if(letters.begin(), letters.end(),
                   [g](Letter x) { return generator_of(x) == g; }) -
      letters.begin());
  // r rotated is g^e · u, so g = u⁻¹ when e = 1 and g = u when e = -1.
  Word rot = rotate(r, pos);
  Word rest(std::vector<Letter>(rot.begin() + 1, rot.end()));
  Word value = rot[0] > 0 ? invert(rest) : free_reduce(rest);

  std::vector<Word> relators;
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    if (i == relator) continue;
    relators.push_back(drop_generator(substitute(p.relators()[i], g, value), g));
  }
  std::vector<std::string> symbols = p.symbols();
  symbols.erase(symbols.begin() + (g - 1));
  return Presentation(std::move(symbols), std::move(relators), p.provenance())
      .with_lineage(p.lineage());
}

Presentation conjugate_relator(Presentation const& p, std::size_t idx, Word const& left) {
  check_relator_index(p, idx);
  if (left.max_generator() > static_cast<int>(p.generator_count())) {
    throw std::invalid_argument("conjugating word references an undeclared generator");
  }
  std::vector<Word> relators = p.relators();
  relators[idx] = left * relators[idx] * invert(left);
  return p.with_relators(std::move(relators));
}

Presentation change_generators(Presentation const& p, std::vector<std::string> new_symbols,
                               std::vector<Word> const& old_in_terms_of_new,
                               std::vector<Word> const& new_in_terms_of_old) {
  auto const n_old = static_cast<int>(p.generator_count());
  auto const n_new = static_cast<int>(new_symbols.size());
  if (old_in_terms_of_new.size() != p.generator_count()) {
    throw std::invalid_argument("change of generators needs one image per old generator");
  }
  if (new_in_terms_of_old.size() != new_symbols.size()) {
    throw std::invalid_argument("change of generators needs one image per new generator");
  }
  for (auto const& w : old_in_terms_of_new) {
    if (w.max_generator() > n_new) throw std::invalid_argument("image uses an undeclared new generator");
  }
  for (auto const& w : new_in_terms_of_old) {
    if (w.max_generator() > n_old) throw std::invalid_argument("image uses an undeclared old generator");
  }
  for (int j = 1; j <= n_new; ++j) {
    Word back = substitute_all(new_in_terms_of_old[static_cast<std::size_t>(j - 1)], old_in_terms_of_new);
    if (back != Word{j}) {
      throw std::invalid_argument("substitution families are not mutually inverse (new generator " +
                                  new_symbols[static_cast<std::size_t>(j - 1)] + ")");
    }
  }
  for (int i = 1; i <= n_old; ++i) {
    Word back = substitute_all(old_in_terms_of_new[static_cast<std::size_t>(i - 1)], new_in_terms_of_old);
    if (back != Word{i}) {
      throw std::invalid_argument("substitution families are not mutually inverse (old generator " +
                                  p.symbols()[static_cast<std::size_t>(i - 1)] + ")");
    }
  }
  std::vector<Word> relators;
  relators.reserve(p.relators().size());
  for (auto const& r : p.relators()) relators.push_back(substitute_all(r, old_in_terms_of_new));
  return Presentation(std::move(new_symbols), std::move(relators), p.provenance())
      .with_lineage(p.lineage());
}

Presentation add_quotient_relators(Presentation const& p, std::vector<Word> const& ws) {
  std::vector<Word> relators = p.relators();
  for (auto const& w : ws) {
    if (w.max_generator() > static_cast<int>(p.generator_count())) {
      throw std::invalid_argument("quotient relator references an undeclared generator");
    }
    relators.push_back(free_reduce(w));
  }
  return p.with_relators(std::move(relators)).with_lineage(Lineage::Quotient);
}

Presentation add_quotient_relator(Presentation const& p, Word const& w) {
  return add_quotient_relators(p, {w});
}

namespace {

struct Run {
  int generator;
  long exponent;
};

long reduce_exponent(long e, int order) {
  long m = e % order;
  return m < 0 ? m + order : m;
}

int order_of(TorsionOrders const& orders, int g) {
  auto it = orders.find(g);
  if (it == orders.end() || it->second < 1) {
    throw std::invalid_argument("no finite order given for generator " + std::to_string(g));
  }
  return it->second;
}

void push_run(std::vector<Run>& runs, int g, long e, TorsionOrders const& orders) {
  if (!runs.empty() && runs.back().generator == g) {
    e += runs.back().exponent;
    runs.pop_back();
  }
  e = reduce_exponent(e, order_of(orders, g));
  if (e != 0) runs.push_back({g, e});
}

std::vector<Run> normalized_runs(Word const& w, TorsionOrders const& orders) {
  std::vector<Run> runs;
  for (Letter x : w) push_run(runs, generator_of(x), x > 0 ? 1 : -1, orders);
  return runs;
}

Word from_runs(std::vector<Run> const& runs) {
  std::vector<Letter> out;
  for (auto const& r : runs) out.insert(out.end(), static_cast<std::size_t>(r.exponent), r.generator);
  return Word(std::move(out));
}

Word least_rotation(Word const& w) {
  Word best = w;
  for (std::size_t k = 1; k < w.size(); ++k) best = std::min(best, rotate(w, k));
  return best;
}

}  // namespace

Word normalize_modulo_torsion(Word const& w, TorsionOrders const& orders) {
  return from_runs(normalized_runs(w, orders));
}

Word normalize_cyclic_modulo_torsion(Word const& w, TorsionOrders const& orders) {
  std::vector<Run> runs = normalized_runs(w, orders);
  while (runs.size() >= 2 && runs.front().generator == runs.back().generator) {
    Run last = runs.back();
    runs.pop_back();
    Run first = runs.front();
    runs.erase(runs.begin());
    // The merged run lands at the end; it cannot clash with the new front
    // because adjacent runs never share a generator.
    push_run(runs, first.generator, first.exponent + last.exponent, orders);
  }
  return from_runs(runs);
}

Word torsion_key(Word const& w, TorsionOrders const& orders) {
  Word a = least_rotation(normalize_cyclic_modulo_torsion(w, orders));
  Word b = least_rotation(normalize_cyclic_modulo_torsion(invert(w), orders));
  return std::min(a, b);
}

TorsionOrders witnessed_orders(Presentation const& p, std::size_t skip) {
  TorsionOrders orders;
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    if (i == skip) continue;
    Word r = cyclic_reduce(p.relators()[i]).word;
    if (r.empty()) continue;
    int g = generator_of(r[0]);
    if (!std::all_of(r.begin(), r.end(), [&](Letter x) { return x == r[0]; })) continue;
    auto k = static_cast<int>(r.size());
    auto [it, inserted] = orders.emplace(g, k);
    if (!inserted) it->second = std::gcd(it->second, k);
  }
  return orders;
}

namespace {

Presentation tidy(Presentation const& p) {
  std::vector<Word> relators;
  std::set<Word> seen;
  for (auto const& r : p.relators()) {
    Word c = cyclic_reduce(r).word;
    if (c.empty()) continue;
    if (!seen.insert(cyclic_key(c)).second) continue;
    relators.push_back(std::move(c));
  }
  return p.with_relators(std::move(relators));
}

bool try_elimination(Presentation& cur) {
  std::optional<Presentation> best;
  for (std::size_t i = 0; i < cur.relators().size(); ++i) {
    for (int g = 1; g <= static_cast<int>(cur.generator_count()); ++g) {
      if (occurrences(cur.relators()[i], g) != 1) continue;
      Presentation q = tidy(eliminate_generator(cur, cur.symbols()[static_cast<std::size_t>(g - 1)], i));
      if (!best || q.total_relator_length() < best->total_relator_length()) best = std::move(q);
    }
  }
  if (best && best->total_relator_length() <= cur.total_relator_length()) {
    cur = std::move(*best);
    return true;
  }
  return false;
}

bool try_composition(Presentation& cur) {
  std::vector<Word> relators = cur.relators();
  bool improved = false;
  for (std::size_t i = 0; i < relators.size(); ++i) {
    for (std::size_t j = 0; j < relators.size(); ++j) {
      if (i == j) continue;
      for (Word const& s : {relators[j], invert(relators[j])}) {
        for (std::size_t k = 0; k < std::max<std::size_t>(s.size(), 1); ++k) {
          Word cand = cyclic_reduce(relators[i] * rotate(s, k)).word;
          if (cand.size() < relators[i].size()) {
            relators[i] = std::move(cand);
            improved = true;
          }
        }
      }
    }
  }
  if (improved) cur = tidy(cur.with_relators(std::move(relators)));
  return improved;
}

}  // namespace

Presentation greedy_simplify(Presentation const& p, std::size_t max_passes) {
  Presentation cur = tidy(p);
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    if (try_elimination(cur)) continue;
    if (!try_composition(cur)) break;
  }
  return cur;
}

}  // namespace fpcheck
