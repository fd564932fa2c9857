#include "fpcheck/derivation.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpcheck {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

TorsionOrders resolve_orders(Presentation const& p, NormalizeModuloTorsion const& m) {
  TorsionOrders orders;
  for (auto const& [symbol, order] : m.orders) {
    if (order < 1) throw std::invalid_argument("torsion order must be positive");
    orders[p.generator(symbol).index] = order;
  }
  return orders;
}

Word shorter_form(Word const& r, TorsionOrders const& orders) {
  Word a = normalize_cyclic_modulo_torsion(r, orders);
  Word b = normalize_cyclic_modulo_torsion(invert(r), orders);
  if (b.size() < a.size()) return b;
  return a;
}
}  // namespace

StepKind kind_of(Move const& m) noexcept { return static_cast<StepKind>(m.index()); }

char const* to_string(StepKind k) noexcept {
  switch (k) {
    case StepKind::EliminateGenerator: return "EliminateGenerator";
    case StepKind::ConjugateRelator: return "ConjugateRelator";
    case StepKind::ChangeGenerators: return "ChangeGenerators";
    case StepKind::AddQuotientRelator: return "AddQuotientRelator";
    case StepKind::NormalizeModuloTorsion: return "NormalizeModuloTorsion";
    case StepKind::ReplaceRelatorByEquivalent: return "ReplaceRelatorByEquivalent";
  }
  return "?";
}

bool preserves_isomorphism(Move const& m) noexcept {
  return kind_of(m) != StepKind::AddQuotientRelator;
}

Presentation apply_move(Presentation const& p, Move const& move) {
  return std::visit(
      overloaded{
          [&](EliminateGenerator const& m) {
            return eliminate_generator(p, m.generator, m.relator);
          },
          [&](ConjugateRelator const& m) { return conjugate_relator(p, m.relator, m.left); },
          [&](ChangeGenerators const& m) {
            return change_generators(p, m.new_symbols, m.old_in_terms_of_new,
                                     m.new_in_terms_of_old);
          },
          [&](AddQuotientRelator const& m) {
            if (!m.quotient) {
              throw std::invalid_argument("relator addition must be declared as a quotient move");
            }
            return add_quotient_relators(p, m.relators);
          },
          [&](NormalizeModuloTorsion const& m) {
            if (m.relator >= p.relators().size()) throw std::out_of_range("relator index out of range");
            TorsionOrders orders = resolve_orders(p, m);
            TorsionOrders witnessed = witnessed_orders(p, m.relator);
            for (auto const& [g, order] : orders) {
              auto it = witnessed.find(g);
              if (it == witnessed.end() || order % it->second != 0) {
                throw std::invalid_argument("order " + std::to_string(order) + " of " +
                                            p.symbols()[static_cast<std::size_t>(g - 1)] +
                                            " is not witnessed by a power relator");
              }
            }
            std::vector<Word> relators = p.relators();
            relators[m.relator] = shorter_form(relators[m.relator], orders);
            return p.with_relators(std::move(relators));
          },
          [&](ReplaceRelatorByEquivalent const& m) {
            if (m.relator >= p.relators().size()) throw std::out_of_range("relator index out of range");
            Word const& old = p.relators()[m.relator];
            if (m.replacement.max_generator() > static_cast<int>(p.generator_count())) {
              throw std::invalid_argument("replacement references an undeclared generator");
            }
            bool ok = cyclically_equivalent(old, m.replacement);
            if (!ok) {
              TorsionOrders orders = witnessed_orders(p, m.relator);
              try {
                ok = torsion_key(old, orders) == torsion_key(m.replacement, orders);
              } catch (std::invalid_argument const&) {
                ok = false;
              }
            }
            if (!ok) {
              throw std::invalid_argument("replacement for relator " + std::to_string(m.relator + 1) +
                                          " is not visibly equivalent to it");
            }
            std::vector<Word> relators = p.relators();
            if (free_reduce(m.replacement).empty()) {
              relators.erase(relators.begin() + static_cast<std::ptrdiff_t>(m.relator));
            } else {
              relators[m.relator] = m.replacement;
            }
            return p.with_relators(std::move(relators));
          },
      },
      move);
}

DerivationReport replay_derivation(Presentation const& start, DerivationScript const& script) {
  DerivationReport report;
  report.intermediate_presentations.push_back(start);
  bool in_prefix = true;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    auto const& step = script.steps[i];
    Presentation const& current = report.intermediate_presentations.back();
    Presentation next;
    try {
      next = apply_move(current, step.move);
    } catch (std::exception const& e) {
      report.halted = StepFailure{i, e.what()};
      break;
    }
    ++report.steps_applied;
    if (in_prefix && preserves_isomorphism(step.move)) {
      ++report.isomorphism_preserving_prefix_length;
    } else {
      in_prefix = false;
    }

    if (auto const* m = std::get_if<NormalizeModuloTorsion>(&step.move)) {
      TorsionOrders orders = resolve_orders(current, *m);
      Word key = torsion_key(current.relators()[m->relator], orders);
      for (std::size_t k = 0; k < m->annotations.size(); ++k) {
        bool agrees = false;
        try {
          agrees = torsion_key(m->annotations[k], orders) == key;
        } catch (std::invalid_argument const&) {
        }
        if (!agrees) {
          std::vector<Word> shown = current.relators();
          shown[m->relator] = m->annotations[k];
          report.mismatches.push_back({i, current.with_relators(std::move(shown)), next,
                                       "annotation " + std::to_string(k + 1) +
                                           " differs from the relator modulo torsion"});
        }
      }
    }

    if (step.expected && !equivalent_up_to_relator_conjugacy(*step.expected, next)) {
      report.mismatches.push_back({i, *step.expected, next, "presentation differs from expected"});
    }
    report.intermediate_presentations.push_back(std::move(next));
  }
  return report;
}

}  // namespace fpcheck
