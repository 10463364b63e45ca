#pragma once

// Basic commutators realized as Lyndon words with their standard bracketing.
// Letters are 0..k-1 with 0 < 1 < ...; on two letters 0 is x and 1 is y.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "baerinv/freegroup.hpp"

namespace baerinv {

/// A word over an ordered alphabet {0, ..., k-1}; compares lexicographically.
using Monomial = std::vector<std::uint8_t>;

/// Display name of a letter: x, y, z, t, u, v, w, then g7, g8, ...
std::string letter_name(std::uint8_t letter);
std::string monomial_to_string(const Monomial& m);

bool is_lyndon(const Monomial& word);

/// Split point of the standard factorization: the right factor is the longest
/// proper suffix that is itself a Lyndon word. Requires length >= 2.
std::size_t standard_split(const Monomial& lyndon_word);

class LyndonCommutator {
 public:
  /// Throws PreconditionError if `word` is not a Lyndon word.
  explicit LyndonCommutator(Monomial word);

  const Monomial& word() const { return word_; }
  int weight() const { return static_cast<int>(word_.size()); }
  bool is_letter() const { return word_.size() == 1; }
  /// Left and right factors of the standard factorization.
  std::pair<LyndonCommutator, LyndonCommutator> factors() const;

  /// e.g. `xxy`
  std::string word_string() const { return monomial_to_string(word_); }
  /// e.g. `[x,[x,y]]`
  std::string bracket_string() const;
  /// Group commutator with the same bracketing; two-letter alphabets only.
  CommutatorExpr to_expr() const;

  auto operator<=>(const LyndonCommutator& other) const = default;

 private:
  Monomial word_;
};

/// A homogeneous noncommutative polynomial with integer coefficients.
struct LieElement {
  int weight = 0;
  std::map<Monomial, mpz_class> coefficients;  // zero entries are never stored

  void add(const Monomial& m, const mpz_class& c);
  bool is_zero() const { return coefficients.empty(); }
  friend bool operator==(const LieElement&, const LieElement&) = default;
};

/// Number of Lyndon words of the given length: (1/w) sum_{d|w} mu(d) k^{w/d}.
/// Throws std::overflow_error if the count does not fit in 64 bits.
std::uint64_t witt_rank(int weight, int letters);

/// All Lyndon words of one length in lexicographic order.
std::vector<LyndonCommutator> enumerate_basis(int weight, int letters);

/// Associative expansion of the bracketing, [u,v] -> uv - vu.
LieElement lie_bracket_expansion(const LyndonCommutator& b);

/// Unique integer coefficients expressing `e` over the bracketed Lyndon words
/// of its weight, in lexicographic basis order, zero coefficients omitted.
/// Throws InternalError("not a Lie element") when `e` is outside their span.
std::vector<std::pair<LyndonCommutator, mpz_class>> lie_coordinates(const LieElement& e);

}  // namespace baerinv
