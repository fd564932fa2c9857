#include "fpcheck/abelian.hpp"

#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace fpcheck {

namespace {

struct Int64Overflow {};

// Arithmetic that either is exact or throws Int64Overflow.
struct CheckedOps {
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
  }
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Int64Overflow{};
    return r;
  }
  static std::int64_t div(std::int64_t a, std::int64_t b) {
    if (a == std::numeric_limits<std::int64_t>::min() && b == -1) throw Int64Overflow{};
    return a / b;
  }
  static std::int64_t rem(std::int64_t a, std::int64_t b) { return b == -1 ? 0 : a % b; }
  static std::int64_t neg(std::int64_t a) { return sub(0, a); }
  static std::int64_t abs(std::int64_t a) { return a < 0 ? neg(a) : a; }
};

struct BigOps {
  static BigInt add(BigInt const& a, BigInt const& b) { return a + b; }
  static BigInt sub(BigInt const& a, BigInt const& b) { return a - b; }
  static BigInt mul(BigInt const& a, BigInt const& b) { return a * b; }
  static BigInt div(BigInt const& a, BigInt const& b) { return a / b; }
  static BigInt rem(BigInt const& a, BigInt const& b) { return a % b; }
  static BigInt neg(BigInt const& a) { return -a; }
  static BigInt abs(BigInt const& a) { return a < 0 ? BigInt(-a) : a; }
};

template <class T, class Ops>
class SmithReducer {
 public:
  explicit SmithReducer(Matrix<T> m)
      : a_(std::move(m)), left_(Matrix<T>::identity(a_.rows())), right_(Matrix<T>::identity(a_.cols())) {}

  void run() {
    std::size_t const n = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < n; ++t) {
      if (!reduce_block(t)) break;
    }
  }

  SNFResult result() const {
    SNFResult r;
    std::size_t const n = std::min(a_.rows(), a_.cols());
    for (std::size_t i = 0; i < n; ++i) r.diagonal.emplace_back(a_(i, i));
    r.left = big(left_);
    r.right = big(right_);
    return r;
  }

 private:
  static BigMatrix big(Matrix<T> const& m) {
    BigMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = BigInt(m(i, j));
    }
    return out;
  }

  // Smallest nonzero |entry| in the block starting at (t, t); ties go to the
  // lowest (row, column).
  std::optional<std::pair<std::size_t, std::size_t>> pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    T best_abs{};
    for (std::size_t i = t; i < a_.rows(); ++i) {
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (a_(i, j) == 0) continue;
        T v = Ops::abs(a_(i, j));
        if (!best || v < best_abs) {
          best = {i, j};
          best_abs = v;
        }
      }
    }
    return best;
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < a_.cols(); ++j) std::swap(a_(i, j), a_(k, j));
    for (std::size_t j = 0; j < left_.cols(); ++j) std::swap(left_(i, j), left_(k, j));
  }

  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < a_.rows(); ++i) std::swap(a_(i, j), a_(i, k));
    for (std::size_t i = 0; i < right_.rows(); ++i) std::swap(right_(i, j), right_(i, k));
  }

  // row_i += q * row_k
  void add_row_multiple(std::size_t i, std::size_t k, T const& q) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(i, j) = Ops::add(a_(i, j), Ops::mul(q, a_(k, j)));
    for (std::size_t j = 0; j < left_.cols(); ++j) {
      left_(i, j) = Ops::add(left_(i, j), Ops::mul(q, left_(k, j)));
    }
  }

  // col_j += q * col_k
  void add_col_multiple(std::size_t j, std::size_t k, T const& q) {
    for (std::size_t i = 0; i < a_.rows(); ++i) a_(i, j) = Ops::add(a_(i, j), Ops::mul(q, a_(i, k)));
    for (std::size_t i = 0; i < right_.rows(); ++i) {
      right_(i, j) = Ops::add(right_(i, j), Ops::mul(q, right_(i, k)));
    }
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(i, j) = Ops::neg(a_(i, j));
    for (std::size_t j = 0; j < left_.cols(); ++j) left_(i, j) = Ops::neg(left_(i, j));
  }

  // Returns false when the remaining block is zero.
  bool reduce_block(std::size_t t) {
    for (;;) {
      auto p = pivot(t);
      if (!p) return false;
      swap_rows(t, p->first);
      swap_cols(t, p->second);
      T const piv = a_(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t) == 0) continue;
        add_row_multiple(i, t, Ops::neg(Ops::div(a_(i, t), piv)));
        if (a_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j) == 0) continue;
        add_col_multiple(j, t, Ops::neg(Ops::div(a_(t, j), piv)));
        if (a_(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < a_.rows() && !bad_row; ++i) {
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
          if (Ops::rem(a_(i, j), piv) != 0) {
            bad_row = i;
            break;
          }
        }
      }
      if (bad_row) {
        add_row_multiple(t, *bad_row, T(1));
        continue;
      }
      if (a_(t, t) < 0) negate_row(t);
      return true;
    }
  }

  Matrix<T> a_;
  Matrix<T> left_;
  Matrix<T> right_;
};

}  // namespace

BigMatrix to_big(IntMatrix const& m) {
  BigMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  }
  return out;
}

BigMatrix multiply(BigMatrix const& a, BigMatrix const& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimensions do not match");
  BigMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

BigInt determinant(BigMatrix const& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  std::size_t const n = m.rows();
  if (n == 0) return 1;
  BigMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && a(i, k) == 0) ++i;
      if (i == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(i, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

SNFResult smith_normal_form(BigMatrix const& m) {
  SmithReducer<BigInt, BigOps> r(m);
  r.run();
  return r.result();
}

SNFResult smith_normal_form(IntMatrix const& m) {
  try {
    SmithReducer<std::int64_t, CheckedOps> r(m);
    r.run();
    return r.result();
  } catch (Int64Overflow const&) {
    SNFResult res = smith_normal_form(to_big(m));
    res.promoted = true;
    return res;
  }
}

IntMatrix relation_matrix(Presentation const& p) {
  IntMatrix m(p.relators().size(), p.generator_count());
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    for (std::size_t j = 0; j < p.generator_count(); ++j) {
      m(i, j) = exponent_sum(p.relators()[i], static_cast<int>(j + 1));
    }
  }
  return m;
}

std::string AbelianInvariants::to_string() const {
  if (trivial()) return "0";
  std::ostringstream out;
  bool first = true;
  if (free_rank > 0) {
    out << "Z";
    if (free_rank > 1) out << '^' << free_rank;
    first = false;
  }
  for (auto const& d : torsion) {
    out << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  return out.str();
}

AbelianInvariants abelian_invariants(Presentation const& p) {
  SNFResult snf = smith_normal_form(relation_matrix(p));
  AbelianInvariants inv;
  std::size_t nonzero = 0;
  for (auto const& d : snf.diagonal) {
    if (d != 0) ++nonzero;
    if (d > 1) inv.torsion.push_back(d);
  }
  inv.free_rank = p.generator_count() - nonzero;
  return inv;
}

bool is_perfect(Presentation const& p) { return abelian_invariants(p).trivial(); }

HandleCountTable::HandleCountTable(int dimension, std::vector<std::pair<int, long>> const& entries)
    : dimension_(dimension) {
  if (dimension < 0) throw std::invalid_argument("manifold dimension must be nonnegative");
  for (auto const& [index, count] : entries) {
    if (index < 0 || index > dimension) {
      throw std::invalid_argument("handle index " + std::to_string(index) + " outside 0.." +
                                  std::to_string(dimension));
    }
    if (count < 0) throw std::invalid_argument("handle counts must be nonnegative");
    auto [it, inserted] = counts_.emplace(index, count);
    if (!inserted) {
      it->second += count;
      merged_ = true;
    }
  }
}

long HandleCountTable::count(int index) const {
  auto it = counts_.find(index);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<long> HandleCountTable::dense() const {
  std::vector<long> out(static_cast<std::size_t>(dimension_) + 1, 0);
  for (auto const& [i, c] : counts_) out[static_cast<std::size_t>(i)] = c;
  return out;
}

long euler_characteristic(HandleCountTable const& h) {
  long chi = 0;
  for (auto const& [i, c] : h.counts()) chi += (i % 2 == 0) ? c : -c;
  return chi;
}

}  // namespace fpcheck
