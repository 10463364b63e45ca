#pragma once

// Exact integer matrix algebra over arbitrary-precision entries.

#include <gmpxx.h>

#include <initializer_list>
#include <span>
#include <vector>

#include "baerinv/abelian.hpp"

namespace baerinv {

class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const mpz_class& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const mpz_class> row(std::size_t r) const;

  /// Appends a row; its length must equal cols().
  void append_row(std::span<const mpz_class> values);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpz_class> entries_;
};

struct SmithForm {
  std::vector<mpz_class> diagonal;  // positive, d1 | d2 | ... | d_rank
  std::size_t rank = 0;
};

/// Nonzero Smith normal form diagonal and rank.
SmithForm smith_normal_form(const IntMatrix& m);

/// Z^cols modulo the row lattice of m.
AbelianStructure cokernel_structure(const IntMatrix& m);

}  // namespace baerinv
