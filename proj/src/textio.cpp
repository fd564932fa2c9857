#include "fpcheck/textio.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace fpcheck {

ParseError::ParseError(std::size_t line, std::size_t column, std::string expected)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": expected " + expected),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

constexpr long kMaxExponent = 1'000'000;
constexpr std::size_t kMaxWordLength = 10'000'000;

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::string_view strip_comment(std::string_view line) {
  auto pos = line.find('#');
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char peek_next() const { return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0'; }
  void advance() { ++pos_; }
  std::size_t column() const { return pos_ + 1; }
  std::string_view rest() const { return text_.substr(std::min(pos_, text_.size())); }

  [[noreturn]] void fail(std::string expected) const { throw ParseError(line_, column(), std::move(expected)); }

  std::string ident(std::string const& what) {
    skip_ws();
    if (!ident_start(peek())) fail(what);
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Letters and hyphens, as in "change-generators".
  std::string kind(std::string const& what) {
    skip_ws();
    if (!std::isalpha(static_cast<unsigned char>(peek()))) fail(what);
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  long integer(std::string const& what) {
    skip_ws();
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      advance();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(what);
    long value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > kMaxExponent) fail(what + " of magnitude at most " + std::to_string(kMaxExponent));
      advance();
    }
    return negative ? -value : value;
  }

  void expect(char c, std::string const& what) {
    skip_ws();
    if (peek() != c) fail(what);
    advance();
  }

  void expect_keyword(std::string_view kw) {
    skip_ws();
    std::size_t col = column();
    std::string got = ident("'" + std::string(kw) + "'");
    if (got != kw) throw ParseError(line_, col, "'" + std::string(kw) + "'");
  }

  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

void append(std::vector<Letter>& out, Word const& w, Cursor const& c) {
  if (out.size() + w.size() > kMaxWordLength) c.fail("a shorter word");
  out.insert(out.end(), w.begin(), w.end());
}

long optional_exponent(Cursor& c) {
  if (c.peek() != '^') return 1;
  c.advance();
  return c.integer("integer exponent");
}

Word parse_factors(Cursor& c, std::vector<std::string> const& symbols, bool nested) {
  std::vector<Letter> out;
  for (;;) {
    c.skip_ws();
    char ch = c.peek();
    if (ch == '\0') {
      if (nested) c.fail("')'");
      break;
    }
    if (ch == ')') {
      if (!nested) c.fail("factor");
      break;
    }
    if (ch == ';' || ch == '=') break;
    if (ch == '(') {
      c.advance();
      Word inner = parse_factors(c, symbols, true);
      c.expect(')', "')'");
      long e = optional_exponent(c);
      if (static_cast<double>(inner.size()) * static_cast<double>(std::abs(e)) > kMaxWordLength) {
        c.fail("a shorter word");
      }
      append(out, power(inner, static_cast<int>(e)), c);
    } else if (ch == '1' && !std::isdigit(static_cast<unsigned char>(c.peek_next()))) {
      c.advance();
      optional_exponent(c);
    } else if (ident_start(ch)) {
      std::size_t col = c.column();
      std::string sym = c.ident("generator");
      auto it = std::find(symbols.begin(), symbols.end(), sym);
      if (it == symbols.end()) throw ParseError(c.line(), col, "declared generator (got '" + sym + "')");
      auto g = static_cast<Letter>(it - symbols.begin() + 1);
      long e = optional_exponent(c);
      append(out, power(Word{g}, static_cast<int>(e)), c);
    } else {
      c.fail("factor");
    }
  }
  return free_reduce(Word(std::move(out)));
}

Word parse_word_to_end(Cursor& c, std::vector<std::string> const& symbols) {
  Word w = parse_factors(c, symbols, false);
  if (!c.done()) c.fail("end of line");
  return w;
}

std::string runs(Word const& w, std::vector<std::string> const& symbols) {
  return Presentation(symbols, {}).format(w);
}

std::size_t relator_number(Cursor& c) {
  std::size_t col = c.column();
  long n = c.integer("relator number");
  if (n < 1) throw ParseError(c.line(), col, "relator number >= 1");
  return static_cast<std::size_t>(n - 1);
}

}  // namespace

Word parse_word(std::string_view text, std::vector<std::string> const& symbols) {
  Cursor c(text, 1);
  return parse_word_to_end(c, symbols);
}

std::string print_word(Word const& w, std::vector<std::string> const& symbols) {
  Word r = free_reduce(w);
  std::size_t n = r.size();
  if (std::all_of(r.begin(), r.end(), [&](Letter x) { return x == r[0]; })) return runs(r, symbols);
  for (std::size_t d = 2; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = r[i] == r[i - d];
    if (periodic) {
      Word u(std::vector<Letter>(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(d)));
      return "(" + runs(u, symbols) + ")^" + std::to_string(n / d);
    }
  }
  return runs(r, symbols);
}

namespace {

// Parses `gens`/`rel` lines from lines[first, last); used for whole files
// and for `expect` blocks.
Presentation parse_presentation_lines(std::vector<std::string_view> const& lines, std::size_t first,
                                      std::size_t last, std::size_t report_line) {
  std::optional<std::vector<std::string>> symbols;
  std::vector<Word> relators;
  for (std::size_t i = first; i < last; ++i) {
    Cursor c(strip_comment(lines[i]), i + 1);
    if (c.done()) continue;
    std::size_t col = c.column();
    std::string kw = c.ident("'gens' or 'rel'");
    if (kw == "gens") {
      if (symbols) throw ParseError(i + 1, col, "a single 'gens' line");
      symbols.emplace();
      std::set<std::string> seen;
      while (!c.done()) {
        std::size_t scol = c.column();
        std::string s = c.ident("generator symbol");
        if (!seen.insert(s).second) throw ParseError(i + 1, scol, "distinct generator symbols");
        symbols->push_back(std::move(s));
      }
    } else if (kw == "rel") {
      if (!symbols) throw ParseError(i + 1, col, "'gens' line before relators");
      relators.push_back(parse_word_to_end(c, *symbols));
    } else {
      throw ParseError(i + 1, col, "'gens' or 'rel'");
    }
  }
  if (!symbols) throw ParseError(report_line, 1, "'gens' line");
  return Presentation(std::move(*symbols), std::move(relators));
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  auto lines = split_lines(text);
  return parse_presentation_lines(lines, 0, lines.size(), 1);
}

std::string print_presentation(Presentation const& p) {
  std::ostringstream out;
  if (!p.provenance().empty()) out << "# " << p.provenance() << '\n';
  out << "gens";
  for (auto const& s : p.symbols()) out << ' ' << s;
  out << '\n';
  for (auto const& r : p.relators()) out << "rel " << print_word(r, p.symbols()) << '\n';
  return out.str();
}

DerivationScript parse_script(std::string_view text, std::vector<std::string> const& start_symbols) {
  auto lines = split_lines(text);
  DerivationScript script;
  std::vector<std::string> current = start_symbols;
  // Symbols in force before the most recent step, for `old`/`new` lines.
  std::vector<std::string> before;
  std::map<std::string, Word> pending_old;
  std::map<std::string, Word> pending_new;

  auto finish_change = [&](std::size_t line) {
    if (script.steps.empty()) return;
    auto* m = std::get_if<ChangeGenerators>(&script.steps.back().move);
    if (!m || !m->old_in_terms_of_new.empty()) return;
    for (auto const& s : before) {
      auto it = pending_old.find(s);
      if (it == pending_old.end()) throw ParseError(line, 1, "'old " + s + " = ...' line");
      m->old_in_terms_of_new.push_back(it->second);
    }
    for (auto const& s : m->new_symbols) {
      auto it = pending_new.find(s);
      if (it == pending_new.end()) throw ParseError(line, 1, "'new " + s + " = ...' line");
      m->new_in_terms_of_old.push_back(it->second);
    }
    pending_old.clear();
    pending_new.clear();
  };

  auto require_step = [&](Cursor const& c) -> DerivationStep& {
    if (script.steps.empty()) c.fail("'step' before this line");
    return script.steps.back();
  };

  std::size_t i = 0;
  while (i < lines.size()) {
    std::string_view raw = lines[i];
    Cursor c(strip_comment(raw), i + 1);
    if (c.done()) {
      ++i;
      continue;
    }
    std::size_t col = c.column();
    std::string kw = c.ident("'step', 'cite' or 'expect'");

    if (kw == "step") {
      finish_change(i + 1);
      std::size_t kcol = c.column();
      std::string kind = c.kind("step kind");
      before = current;
      Move move;
      if (kind == "eliminate") {
        std::size_t scol = c.column();
        std::string sym = c.ident("generator");
        auto it = std::find(current.begin(), current.end(), sym);
        if (it == current.end()) throw ParseError(i + 1, scol, "declared generator");
        c.expect_keyword("using");
        std::size_t idx = relator_number(c);
        if (!c.done()) c.fail("end of line");
        current.erase(it);
        move = EliminateGenerator{sym, idx};
      } else if (kind == "conjugate") {
        std::size_t idx = relator_number(c);
        c.expect_keyword("by");
        move = ConjugateRelator{idx, parse_word_to_end(c, current)};
      } else if (kind == "change-generators") {
        ChangeGenerators m;
        std::set<std::string> seen;
        while (!c.done()) {
          std::size_t scol = c.column();
          std::string s = c.ident("generator symbol");
          if (!seen.insert(s).second) throw ParseError(i + 1, scol, "distinct generator symbols");
          m.new_symbols.push_back(std::move(s));
        }
        current = m.new_symbols;
        move = std::move(m);
      } else if (kind == "add-relators") {
        c.expect_keyword("quotient");
        AddQuotientRelator m;
        m.quotient = true;
        for (;;) {
          m.relators.push_back(parse_factors(c, current, false));
          if (c.done()) break;
          c.expect(';', "';' or end of line");
        }
        move = std::move(m);
      } else if (kind == "normalize-torsion") {
        NormalizeModuloTorsion m;
        m.relator = relator_number(c);
        c.expect_keyword("orders");
        while (!c.done()) {
          std::size_t scol = c.column();
          std::string s = c.ident("generator=order");
          if (std::find(current.begin(), current.end(), s) == current.end()) {
            throw ParseError(i + 1, scol, "declared generator");
          }
          c.expect('=', "'='");
          std::size_t ocol = c.column();
          long k = c.integer("order");
          if (k < 1) throw ParseError(i + 1, ocol, "positive order");
          m.orders.emplace_back(std::move(s), static_cast<int>(k));
        }
        move = std::move(m);
      } else if (kind == "replace") {
        std::size_t idx = relator_number(c);
        c.expect_keyword("with");
        move = ReplaceRelatorByEquivalent{idx, parse_word_to_end(c, current)};
      } else {
        throw ParseError(i + 1, kcol,
                         "step kind (eliminate, conjugate, change-generators, add-relators, "
                         "normalize-torsion, replace)");
      }
      script.steps.push_back(DerivationStep{std::move(move), std::nullopt, {}});
      ++i;
    } else if (kw == "old" || kw == "new") {
      DerivationStep& step = require_step(c);
      auto* change = std::get_if<ChangeGenerators>(&step.move);
      if (!change) c.fail("'old'/'new' only after change-generators");
      if (!change->old_in_terms_of_new.empty()) c.fail("'old'/'new' lines before 'expect'");
      auto const& own = kw == "old" ? before : current;
      auto const& over = kw == "old" ? current : before;
      std::size_t scol = c.column();
      std::string s = c.ident("generator");
      if (std::find(own.begin(), own.end(), s) == own.end()) throw ParseError(i + 1, scol, "declared generator");
      c.expect('=', "'='");
      auto& target = kw == "old" ? pending_old : pending_new;
      if (target.count(s)) throw ParseError(i + 1, scol, "one definition per generator");
      target[s] = parse_word_to_end(c, over);
      ++i;
    } else if (kw == "note") {
      DerivationStep& step = require_step(c);
      auto* m = std::get_if<NormalizeModuloTorsion>(&step.move);
      if (!m) c.fail("'note' only after normalize-torsion");
      Word lhs = parse_factors(c, current, false);
      Word rhs;
      if (!c.done()) {
        c.expect('=', "'=' or end of line");
        rhs = parse_word_to_end(c, current);
      }
      m->annotations.push_back(lhs * invert(rhs));
      ++i;
    } else if (kw == "cite") {
      DerivationStep& step = require_step(c);
      c.skip_ws();
      // Citations keep '#' characters; take the raw remainder of the line.
      std::string_view text_rest = raw.substr(std::min(raw.size(), c.column() - 1));
      while (!text_rest.empty() && std::isspace(static_cast<unsigned char>(text_rest.back()))) {
        text_rest.remove_suffix(1);
      }
      step.citation = std::string(text_rest);
      ++i;
    } else if (kw == "expect") {
      DerivationStep& step = require_step(c);
      if (!c.done()) c.fail("end of line");
      finish_change(i + 1);
      std::size_t start = i + 1;
      std::size_t end = start;
      while (end < lines.size()) {
        Cursor e(strip_comment(lines[end]), end + 1);
        if (!e.done() && e.ident("'end'") == "end") break;
        ++end;
      }
      if (end == lines.size()) throw ParseError(i + 1, col, "'end' closing this expect block");
      step.expected = parse_presentation_lines(lines, start, end, i + 1);
      i = end + 1;
    } else {
      throw ParseError(i + 1, col, "'step', 'cite', 'expect', 'old', 'new' or 'note'");
    }
  }
  finish_change(lines.size());
  return script;
}

std::string print_script(DerivationScript const& script, std::vector<std::string> const& start_symbols) {
  std::ostringstream out;
  std::vector<std::string> current = start_symbols;
  for (auto const& step : script.steps) {
    std::vector<std::string> before = current;
    std::visit(
        [&](auto const& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, EliminateGenerator>) {
            out << "step eliminate " << m.generator << " using " << m.relator + 1 << '\n';
            current.erase(std::find(current.begin(), current.end(), m.generator));
          } else if constexpr (std::is_same_v<T, ConjugateRelator>) {
            out << "step conjugate " << m.relator + 1 << " by " << print_word(m.left, current) << '\n';
          } else if constexpr (std::is_same_v<T, ChangeGenerators>) {
            out << "step change-generators";
            for (auto const& s : m.new_symbols) out << ' ' << s;
            out << '\n';
            current = m.new_symbols;
            for (std::size_t k = 0; k < before.size(); ++k) {
              out << "  old " << before[k] << " = " << print_word(m.old_in_terms_of_new.at(k), current) << '\n';
            }
            for (std::size_t k = 0; k < current.size(); ++k) {
              out << "  new " << current[k] << " = " << print_word(m.new_in_terms_of_old.at(k), before) << '\n';
            }
          } else if constexpr (std::is_same_v<T, AddQuotientRelator>) {
            out << "step add-relators quotient";
            for (std::size_t k = 0; k < m.relators.size(); ++k) {
              out << (k ? " ; " : " ") << print_word(m.relators[k], current);
            }
            out << '\n';
          } else if constexpr (std::is_same_v<T, NormalizeModuloTorsion>) {
            out << "step normalize-torsion " << m.relator + 1 << " orders";
            for (auto const& [s, k] : m.orders) out << ' ' << s << '=' << k;
            out << '\n';
            for (auto const& a : m.annotations) out << "  note " << print_word(a, current) << '\n';
          } else if constexpr (std::is_same_v<T, ReplaceRelatorByEquivalent>) {
            out << "step replace " << m.relator + 1 << " with " << print_word(m.replacement, current) << '\n';
          }
        },
        step.move);
    if (!step.citation.empty()) out << "cite " << step.citation << '\n';
    if (step.expected) {
      out << "expect\n";
      std::istringstream body(print_presentation(step.expected->with_provenance({})));
      for (std::string line; std::getline(body, line);) out << "  " << line << '\n';
      out << "end\n";
    }
  }
  return out.str();
}

}  // namespace fpcheck
