#pragma once

// Exact integer linear algebra: relation matrices, Smith normal form,
// abelianization and Euler characteristics of handle decompositions.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fpcheck/presentation.hpp"

namespace fpcheck {

using BigInt = boost::multiprecision::cpp_int;

// Dense row-major integer matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  T const& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(Matrix const&, Matrix const&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (auto const& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

using IntMatrix = Matrix<std::int64_t>;
using BigMatrix = Matrix<BigInt>;

BigMatrix to_big(IntMatrix const& m);
BigMatrix multiply(BigMatrix const& a, BigMatrix const& b);
// Fraction-free (Bareiss) determinant of a square matrix.
BigInt determinant(BigMatrix const& m);
inline BigInt determinant(IntMatrix const& m) { return determinant(to_big(m)); }

struct SNFResult {
  std::vector<BigInt> diagonal;  // min(rows, cols) entries, d_i | d_{i+1}
  BigMatrix left;                // rows x rows, unimodular
  BigMatrix right;               // cols x cols, unimodular
  bool promoted = false;         // int64 arithmetic overflowed; redone exactly
};

// left · m · right equals the rectangular diagonal matrix of `diagonal`.
SNFResult smith_normal_form(IntMatrix const& m);
SNFResult smith_normal_form(BigMatrix const& m);

// Row i, column j: exponent sum of generator j+1 in relator i.
IntMatrix relation_matrix(Presentation const& p);

struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // entries > 1, each dividing the next

  bool trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
  // "Z^2 + Z/2 + Z/6", or "0" for the trivial group.
  std::string to_string() const;
};

AbelianInvariants abelian_invariants(Presentation const& p);
bool is_perfect(Presentation const& p);

// Handle counts of a manifold of dimension `dimension`, indexed 0..dimension.
class HandleCountTable {
 public:
  // Entries with equal indices are added together and flag the table merged.
  HandleCountTable(int dimension, std::vector<std::pair<int, long>> const& entries);

  int dimension() const noexcept { return dimension_; }
  std::map<int, long> const& counts() const noexcept { return counts_; }
  long count(int index) const;
  bool merged() const noexcept { return merged_; }
  // Counts at indices 0..dimension, zeros included.
  std::vector<long> dense() const;

 private:
  int dimension_;
  std::map<int, long> counts_;
  bool merged_ = false;
};

long euler_characteristic(HandleCountTable const& h);

}  // namespace fpcheck
