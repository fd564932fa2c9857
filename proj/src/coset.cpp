#include "fpcheck/coset.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fpcheck {

char const* to_string(Strategy s) noexcept { return s == Strategy::Felsch ? "felsch" : "hlt"; }

CosetTable::CosetTable(std::size_t generators, std::size_t cosets)
    : generators_(generators), cosets_(cosets), data_(2 * generators * cosets, undefined) {}

std::optional<std::uint32_t> CosetTable::image(std::size_t coset, Letter x) const {
  std::uint32_t v = entry(coset, column(x));
  if (v == undefined) return std::nullopt;
  return v;
}

bool CosetTable::is_complete() const noexcept {
  return std::none_of(data_.begin(), data_.end(), [](std::uint32_t v) { return v == undefined; });
}

std::string CosetTable::dump(Presentation const& p) const {
  std::ostringstream out;
  out << "# coset";
  for (auto const& s : p.symbols()) out << ' ' << s << ' ' << s << "^-1";
  out << '\n';
  for (std::size_t c = 0; c < cosets_; ++c) {
    out << c + 1 << ':';
    for (std::size_t x = 0; x < column_count(); ++x) {
      std::uint32_t v = entry(c, x);
      out << ' ';
      if (v == undefined) {
        out << '-';
      } else {
        out << v + 1;
      }
    }
    out << '\n';
  }
  return out.str();
}

namespace {

using Column = std::uint32_t;
using Coset = std::uint32_t;
constexpr Coset kUndef = CosetTable::undefined;

constexpr Column inverse_column(Column x) noexcept { return x ^ 1u; }

std::vector<Column> to_columns(Word const& w) {
  std::vector<Column> out;
  out.reserve(w.size());
  for (Letter x : w) out.push_back(static_cast<Column>(CosetTable::column(x)));
  return out;
}

struct OverflowSignal {};

// Single-owner enumeration state. Cosets are never reused; dead rows are
// squeezed out by compact() at points where no coset ids are held outside
// the table.
class Enumerator {
 public:
  Enumerator(Presentation const& p, std::vector<Word> const& subgroup, Strategy strategy,
             std::size_t cap)
      : ncols_(static_cast<Column>(2 * p.generator_count())), strategy_(strategy), cap_(cap) {
    std::set<std::vector<Column>> rotations;
    for (auto const& r : p.relators()) {
      Word c = cyclic_reduce(r).word;
      if (c.empty()) continue;
      relators_.push_back(to_columns(c));
      for (Word const& s : {c, invert(c)}) {
        for (std::size_t k = 0; k < s.size(); ++k) rotations.insert(to_columns(rotate(s, k)));
      }
    }
    by_first_.resize(ncols_);
    for (auto const& rot : rotations) by_first_[rot.front()].push_back(rot);
    for (auto const& w : subgroup) {
      Word r = free_reduce(w);
      if (!r.empty()) subgroup_.push_back(to_columns(r));
    }
    add_row();
    live_ = 1;
    stats_.max_live = 1;
  }

  EnumerationResult run() {
    EnumerationResult result;
    try {
      for (auto const& w : subgroup_) {
        scan_and_fill(0, w);
        process_deductions();
      }
      if (strategy_ == Strategy::Felsch) {
        run_felsch();
      } else {
        run_hlt();
      }
    } catch (OverflowSignal const&) {
      result.outcome = EnumerationResult::Outcome::Overflow;
      result.value = cap_;
      result.stats = stats_;
      result.table = export_table();
      return result;
    }
    result.outcome = EnumerationResult::Outcome::Completed;
    result.value = live_;
    result.stats = stats_;
    result.table = export_table();
    return result;
  }

 private:
  Coset& at(Coset c, Column x) { return table_[static_cast<std::size_t>(c) * ncols_ + x]; }

  bool live(Coset c) const { return parent_[c] == c; }

  void add_row() {
    table_.insert(table_.end(), ncols_, kUndef);
    parent_.push_back(static_cast<Coset>(parent_.size()));
  }

  Coset rep(Coset c) {
    Coset r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      Coset next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void push_deduction(Coset c, Column x) {
    if (strategy_ == Strategy::Felsch) deductions_.emplace_back(c, x);
  }

  // Returns true when the table changed (a lookahead ran) so the caller must
  // re-examine its state. Throws once no room can be found.
  bool make_room() {
    if (live_ < cap_) return false;
    if (strategy_ == Strategy::HLT) {
      lookahead();
      if (live_ < cap_) return true;
    }
    throw OverflowSignal{};
  }

  void define(Coset c, Column x) {
    auto d = static_cast<Coset>(parent_.size());
    add_row();
    ++live_;
    ++stats_.cosets_defined;
    stats_.max_live = std::max<std::uint64_t>(stats_.max_live, live_);
    at(c, x) = d;
    at(d, inverse_column(x)) = c;
    push_deduction(c, x);
  }

  void merge(Coset a, Coset b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_;
    ++stats_.coincidences;
    queue_.push_back(b);
  }

  void coincidence(Coset a, Coset b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      Coset g = queue_[i];
      for (Column x = 0; x < ncols_; ++x) {
        Coset d = at(g, x);
        if (d == kUndef) continue;
        Column ix = inverse_column(x);
        if (at(d, ix) == g) at(d, ix) = kUndef;
        Coset mu = rep(g);
        Coset nu = rep(d);
        if (at(mu, x) != kUndef) {
          merge(nu, at(mu, x));
        } else if (at(nu, ix) != kUndef) {
          merge(mu, at(nu, ix));
        } else {
          at(mu, x) = nu;
          at(nu, ix) = mu;
          push_deduction(mu, x);
        }
      }
    }
    queue_.clear();
  }

  // Traces w from c in both directions. With fill, missing entries are
  // defined until the trace closes; without, only a single gap is deduced.
  void trace(Coset c, std::vector<Column> const& w, bool fill) {
    for (;;) {
      if (!live(c)) return;
      Coset f = c;
      std::size_t i = 0;
      std::size_t j = w.size();  // backward pointer is one past the last unscanned letter
      while (i < j && at(f, w[i]) != kUndef) f = at(f, w[i++]);
      if (i == j) {
        if (f != c) coincidence(f, c);
        return;
      }
      Coset b = c;
      while (j > i && at(b, inverse_column(w[j - 1])) != kUndef) b = at(b, inverse_column(w[--j]));
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        at(f, w[i]) = b;
        at(b, inverse_column(w[i])) = f;
        push_deduction(f, w[i]);
        return;
      }
      if (!fill) return;
      if (make_room()) continue;
      define(f, w[i]);
    }
  }

  void scan_and_fill(Coset c, std::vector<Column> const& w) { trace(c, w, true); }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!live(c)) continue;
      for (auto const& w : by_first_[x]) {
        if (!live(c)) break;
        trace(c, w, false);
      }
      if (!live(c)) continue;
      Coset d = at(c, x);
      if (d == kUndef) continue;
      for (auto const& w : by_first_[inverse_column(x)]) {
        if (!live(d)) break;
        trace(d, w, false);
      }
    }
  }

  void lookahead() {
    ++stats_.lookaheads;
    for (Coset c = 0; c < parent_.size(); ++c) {
      for (auto const& w : relators_) {
        if (!live(c)) break;
        trace(c, w, false);
      }
    }
  }

  // Renumbers live cosets consecutively, preserving order; returns the new id
  // of `keep` (which must be live).
  Coset compact(Coset keep) {
    std::vector<Coset> new_id(parent_.size(), kUndef);
    Coset n = 0;
    for (Coset c = 0; c < parent_.size(); ++c) {
      if (live(c)) new_id[c] = n++;
    }
    std::vector<Coset> table(static_cast<std::size_t>(n) * ncols_, kUndef);
    for (Coset c = 0; c < parent_.size(); ++c) {
      if (!live(c)) continue;
      for (Column x = 0; x < ncols_; ++x) {
        Coset d = at(c, x);
        table[static_cast<std::size_t>(new_id[c]) * ncols_ + x] = d == kUndef ? kUndef : new_id[rep(d)];
      }
    }
    table_ = std::move(table);
    parent_.resize(n);
    for (Coset c = 0; c < n; ++c) parent_[c] = c;
    return new_id[keep];
  }

  bool worth_compacting() const {
    return parent_.size() > 4096 && parent_.size() > 2 * static_cast<std::size_t>(live_);
  }

  void run_felsch() {
    for (Coset c = 0; c < parent_.size(); ++c) {
      for (Column x = 0; x < ncols_; ++x) {
        if (!live(c)) break;
        if (at(c, x) != kUndef) continue;
        if (worth_compacting()) c = compact(c);
        make_room();
        define(c, x);
        process_deductions();
      }
    }
  }

  void run_hlt() {
    for (Coset c = 0; c < parent_.size(); ++c) {
      if (!live(c)) continue;
      if (worth_compacting()) c = compact(c);
      for (auto const& w : relators_) {
        if (!live(c)) break;
        scan_and_fill(c, w);
      }
      for (Column x = 0; x < ncols_ && live(c); ++x) {
        if (at(c, x) != kUndef) continue;
        if (make_room() && (!live(c) || at(c, x) != kUndef)) continue;
        define(c, x);
      }
    }
  }

  CosetTable export_table() {
    std::vector<Coset> new_id(parent_.size(), kUndef);
    Coset n = 0;
    for (Coset c = 0; c < parent_.size(); ++c) {
      if (live(c)) new_id[c] = n++;
    }
    CosetTable t(ncols_ / 2, n);
    for (Coset c = 0; c < parent_.size(); ++c) {
      if (!live(c)) continue;
      for (Column x = 0; x < ncols_; ++x) {
        Coset d = at(c, x);
        t.set(new_id[c], x, d == kUndef ? kUndef : new_id[rep(d)]);
      }
    }
    return t;
  }

  Column ncols_;
  Strategy strategy_;
  std::size_t cap_;
  std::vector<std::vector<Column>> relators_;
  std::vector<std::vector<std::vector<Column>>> by_first_;
  std::vector<std::vector<Column>> subgroup_;
  std::vector<Coset> table_;
  std::vector<Coset> parent_;
  std::size_t live_ = 0;
  std::vector<std::pair<Coset, Column>> deductions_;
  std::vector<Coset> queue_;
  EnumerationStats stats_;
};

}  // namespace

EnumerationResult enumerate(Presentation const& p, std::vector<Word> const& subgroup,
                            Strategy strategy, std::size_t max_cosets) {
  if (max_cosets < 1) throw std::invalid_argument("max_cosets must be at least 1");
  for (auto const& w : subgroup) {
    if (w.max_generator() > static_cast<int>(p.generator_count())) {
      throw std::invalid_argument("subgroup generator references an undeclared generator");
    }
  }
  return Enumerator(p, subgroup, strategy, max_cosets).run();
}

OrderResult order(Presentation const& p, std::size_t max_cosets, Strategy strategy) {
  auto r = enumerate(p, {}, strategy, max_cosets);
  return {r.completed(), r.value};
}

std::vector<Permutation> permutation_rep(CosetTable const& t) {
  if (!t.is_complete()) throw std::invalid_argument("permutation representation needs a complete table");
  std::vector<Permutation> out;
  for (std::size_t g = 0; g < t.generator_count(); ++g) {
    std::vector<std::uint32_t> img(t.size());
    for (std::size_t c = 0; c < t.size(); ++c) img[c] = t.entry(c, 2 * g) + 1;
    out.push_back(Permutation::from_images(img));
  }
  return out;
}

std::vector<std::string> table_defects(CosetTable const& t, Presentation const& p,
                                       std::vector<Word> const& subgroup) {
  std::vector<std::string> defects;
  auto report = [&](std::string msg) {
    if (defects.size() < 32) defects.push_back(std::move(msg));
  };
  if (t.generator_count() != p.generator_count()) {
    report("table has " + std::to_string(t.generator_count()) + " generators, presentation has " +
           std::to_string(p.generator_count()));
    return defects;
  }
  if (t.size() == 0) {
    report("table has no cosets");
    return defects;
  }
  for (std::size_t c = 0; c < t.size(); ++c) {
    for (std::size_t x = 0; x < t.column_count(); ++x) {
      std::uint32_t d = t.entry(c, x);
      if (d == CosetTable::undefined) {
        report("coset " + std::to_string(c + 1) + " column " + std::to_string(x) + " undefined");
      } else if (d >= t.size()) {
        report("coset " + std::to_string(c + 1) + " column " + std::to_string(x) + " out of range");
      } else if (t.entry(d, x ^ 1u) != c) {
        report("coset " + std::to_string(c + 1) + " column " + std::to_string(x) +
               " disagrees with its inverse column");
      }
    }
  }
  if (!defects.empty()) return defects;
  auto trace = [&](std::size_t c, Word const& w) {
    for (Letter x : w) c = t.entry(c, CosetTable::column(x));
    return c;
  };
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    for (std::size_t c = 0; c < t.size(); ++c) {
      if (trace(c, p.relators()[i]) != c) {
        report("relator " + std::to_string(i + 1) + " does not close at coset " + std::to_string(c + 1));
      }
    }
  }
  for (std::size_t i = 0; i < subgroup.size(); ++i) {
    if (trace(0, subgroup[i]) != 0) {
      report("subgroup generator " + std::to_string(i + 1) + " does not fix the subgroup coset");
    }
  }
  return defects;
}

}  // namespace fpcheck
