#include "fpcheck/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fpcheck {

bool is_valid_symbol(std::string_view s) noexcept {
  if (s.empty()) return false;
  auto alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) {
    return alpha(c) || std::isdigit(static_cast<unsigned char>(c));
  });
}

Presentation::Presentation(std::vector<std::string> symbols, std::vector<Word> relators,
                           std::string provenance)
    : symbols_(std::move(symbols)), provenance_(std::move(provenance)) {
  std::set<std::string_view> seen;
  for (auto const& s : symbols_) {
    if (!is_valid_symbol(s)) throw std::invalid_argument("invalid generator symbol '" + s + "'");
    if (!seen.insert(s).second) throw std::invalid_argument("duplicate generator symbol '" + s + "'");
  }
  relators_.reserve(relators.size());
  for (auto& r : relators) {
    if (r.max_generator() > static_cast<int>(symbols_.size())) {
      throw std::invalid_argument("relator references an undeclared generator");
    }
    relators_.push_back(free_reduce(r));
  }
}

GeneratorId Presentation::generator(std::string_view symbol) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end()) {
    throw std::invalid_argument("unknown generator '" + std::string(symbol) + "'");
  }
  return {static_cast<int>(it - symbols_.begin()) + 1, *it};
}

GeneratorId Presentation::generator(int index) const {
  if (index < 1 || index > static_cast<int>(symbols_.size())) {
    throw std::out_of_range("generator index out of range");
  }
  return {index, symbols_[static_cast<std::size_t>(index - 1)]};
}

bool Presentation::has_generator(std::string_view symbol) const noexcept {
  return std::find(symbols_.begin(), symbols_.end(), symbol) != symbols_.end();
}

Presentation Presentation::with_relators(std::vector<Word> relators) const {
  Presentation p(symbols_, std::move(relators), provenance_);
  p.lineage_ = lineage_;
  return p;
}

Presentation Presentation::with_lineage(Lineage l) const {
  Presentation p = *this;
  p.lineage_ = l;
  return p;
}

Presentation Presentation::with_provenance(std::string provenance) const {
  Presentation p = *this;
  p.provenance_ = std::move(provenance);
  return p;
}

std::size_t Presentation::total_relator_length() const noexcept {
  std::size_t n = 0;
  for (auto const& r : relators_) n += r.size();
  return n;
}

std::string Presentation::format(Word const& w) const {
  if (w.empty()) return "1";
  std::ostringstream out;
  auto letters = w.letters();
  std::size_t i = 0;
  bool first = true;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    auto run = static_cast<long>(j - i);
    Letter x = letters[i];
    auto g = static_cast<std::size_t>(generator_of(x));
    if (!first) out << ' ';
    first = false;
    out << (g <= symbols_.size() ? symbols_[g - 1] : "?" + std::to_string(g));
    long e = x < 0 ? -run : run;
    if (e != 1) out << '^' << e;
    i = j;
  }
  return out.str();
}

std::string Presentation::to_string() const {
  std::ostringstream out;
  out << "<";
  for (std::size_t i = 0; i < symbols_.size(); ++i) out << (i ? ", " : "") << symbols_[i];
  out << " | ";
  for (std::size_t i = 0; i < relators_.size(); ++i) out << (i ? ", " : "") << format(relators_[i]);
  out << ">";
  return out.str();
}

bool equivalent_up_to_relator_conjugacy(Presentation const& p, Presentation const& q) {
  if (p.symbols() != q.symbols()) return false;
  if (p.relators().size() != q.relators().size()) return false;
  std::multiset<Word> a;
  std::multiset<Word> b;
  for (auto const& r : p.relators()) a.insert(cyclic_key(r));
  for (auto const& r : q.relators()) b.insert(cyclic_key(r));
  return a == b;
}

}  // namespace fpcheck
