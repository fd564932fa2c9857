#include "fpcheck/permgrp.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "fpcheck/tietze.hpp"

namespace fpcheck {

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  return Permutation(std::move(img));
}

Permutation Permutation::from_images(std::vector<std::uint32_t> const& images) {
  std::vector<std::uint32_t> img;
  std::vector<bool> hit(images.size(), false);
  img.reserve(images.size());
  for (auto x : images) {
    if (x < 1 || x > images.size() || hit[x - 1]) {
      throw std::invalid_argument("permutation images must be a bijection of 1..degree");
    }
    hit[x - 1] = true;
    img.push_back(x - 1);
  }
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(
    std::size_t degree, std::initializer_list<std::initializer_list<std::uint32_t>> cycles) {
  std::vector<std::uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  std::vector<bool> used(degree, false);
  for (auto const& cycle : cycles) {
    std::vector<std::uint32_t> c(cycle);
    for (auto x : c) {
      if (x < 1 || x > degree || used[x - 1]) throw std::invalid_argument("malformed cycle");
      used[x - 1] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i) img[c[i] - 1] = c[(i + 1) % c.size()] - 1;
  }
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

bool Permutation::is_even() const noexcept {
  std::vector<bool> seen(images_.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(inv));
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out << '(';
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      out << (j == i ? "" : " ") << j + 1;
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

Permutation compose(Permutation const& p, Permutation const& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("composing permutations of different degree");
  auto const& a = p.zero_based_images();
  auto const& b = q.zero_based_images();
  std::vector<std::uint32_t> img(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) img[i] = b[a[i]] + 1;
  return Permutation::from_images(img);
}

std::optional<std::vector<Permutation>> closure(std::vector<Permutation> const& gens,
                                                std::size_t cap) {
  if (gens.empty()) throw std::invalid_argument("closure needs at least one generator");
  std::size_t degree = gens.front().degree();
  for (auto const& g : gens) {
    if (g.degree() != degree) throw std::invalid_argument("generators of different degree");
  }
  std::vector<Permutation> elements{Permutation::identity(degree)};
  std::unordered_set<Permutation> seen(elements.begin(), elements.end());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (auto const& g : gens) {
      Permutation next = compose(elements[i], g);
      if (seen.insert(next).second) {
        if (elements.size() >= cap) return std::nullopt;
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

Permutation evaluate(Word const& w, Assignment const& a) {
  if (a.images.empty()) {
    if (!w.empty()) throw std::invalid_argument("empty assignment cannot evaluate a nonempty word");
    return Permutation::identity(0);
  }
  Permutation result = Permutation::identity(a.degree());
  for (Letter x : w) {
    auto g = static_cast<std::size_t>(generator_of(x));
    if (g > a.images.size()) throw std::invalid_argument("word uses an unassigned generator");
    auto const& img = a.images[g - 1];
    result = compose(result, x > 0 ? img : img.inverse());
  }
  return result;
}

bool satisfies(Presentation const& p, Assignment const& a) {
  if (a.images.size() != p.generator_count()) return false;
  return std::all_of(p.relators().begin(), p.relators().end(),
                     [&](Word const& r) { return evaluate(r, a).is_identity(); });
}

std::vector<Permutation> even_permutations(std::size_t degree) {
  std::vector<std::uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 1u);
  std::vector<Permutation> out;
  do {
    Permutation p = Permutation::from_images(img);
    if (p.is_even()) out.push_back(std::move(p));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

namespace {

class EpimorphismSearcher {
 public:
  EpimorphismSearcher(Presentation const& p, std::size_t degree, std::size_t target_order,
                      std::uint64_t cap)
      : target_order_(target_order), cap_(cap) {
    std::vector<Permutation> all = even_permutations(degree);
    TorsionOrders orders = witnessed_orders(p);
    candidates_.resize(p.generator_count());
    for (std::size_t g = 0; g < p.generator_count(); ++g) {
      auto it = orders.find(static_cast<int>(g + 1));
      for (auto const& perm : all) {
        if (it == orders.end() || static_cast<std::uint64_t>(it->second) % perm.order() == 0) {
          candidates_[g].push_back(perm);
        }
      }
    }
    // A relator is checked as soon as its highest generator is assigned.
    ready_at_.resize(p.generator_count());
    for (auto const& r : p.relators()) {
      int m = r.max_generator();
      if (m > 0) ready_at_[static_cast<std::size_t>(m - 1)].push_back(&r);
    }
  }

  EpimorphismSearch run() {
    EpimorphismSearch result;
    bool found = false;
    try {
      found = descend(0);
    } catch (OverflowSignal const&) {
      result.outcome = EpimorphismSearch::Outcome::Overflow;
      result.nodes_visited = nodes_;
      return result;
    }
    result.nodes_visited = nodes_;
    if (found) {
      result.outcome = EpimorphismSearch::Outcome::Found;
      result.witness = Assignment{current_};
    }
    return result;
  }

 private:
  struct OverflowSignal {};

  bool descend(std::size_t depth) {
    if (depth == candidates_.size()) return image_has_target_order();
    for (auto const& perm : candidates_[depth]) {
      if (++nodes_ > cap_) throw OverflowSignal{};
      current_.push_back(perm);
      Assignment partial{current_};
      bool ok = std::all_of(ready_at_[depth].begin(), ready_at_[depth].end(),
                            [&](Word const* r) { return evaluate(*r, partial).is_identity(); });
      if (ok && descend(depth + 1)) return true;
      current_.pop_back();
    }
    return false;
  }

  bool image_has_target_order() const {
    if (current_.empty()) return target_order_ == 1;
    auto elements = closure(current_, target_order_);
    return elements && elements->size() == target_order_;
  }

  std::size_t target_order_;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<Permutation>> candidates_;
  std::vector<std::vector<Word const*>> ready_at_;
  std::vector<Permutation> current_;
};

}  // namespace

EpimorphismSearch find_epimorphism(Presentation const& p, std::size_t degree,
                                   std::size_t target_order, std::uint64_t cap) {
  if (degree < 1) throw std::invalid_argument("degree must be at least 1");
  if (degree > 9) throw std::invalid_argument("degree too large for exhaustive search");
  return EpimorphismSearcher(p, degree, target_order, cap).run();
}

}  // namespace fpcheck
