#pragma once

// Exponent coordinates of elements of gamma_low(F) modulo gamma_{high+1}(F)
// over the two-letter basic-commutator basis of weights low..high.

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

#include "baerinv/freegroup.hpp"
#include "baerinv/lyndon.hpp"
#include "baerinv/magnus.hpp"

namespace baerinv {

/// Two-letter basic commutators of weights 1..cap together with the data the
/// peeling algorithm needs: Magnus images at `cap` and dense bracket
/// expansions. Instances are immutable; get() shares one per cap.
class NilBasis {
 public:
  struct Element {
    LyndonCommutator commutator;
    std::uint32_t word_bits;  // Lyndon word as a MonomialCode bit pattern
    std::vector<std::pair<std::uint32_t, mpz_class>> expansion;  // nonzero terms, by bits
    TruncatedSeries magnus;
  };

  explicit NilBasis(int cap);
  static const NilBasis& get(int cap);

  int cap() const { return cap_; }
  std::span<const Element> weight(int w) const { return by_weight_.at(static_cast<std::size_t>(w)); }
  /// Total basis size over weights low..high.
  std::size_t rank(int low, int high) const;

 private:
  int cap_;
  std::vector<std::vector<Element>> by_weight_;
};

class CoordinateVector {
 public:
  /// Zero vector.
  CoordinateVector(int low, int high);
  /// Throws PreconditionError if the entry count does not match the basis.
  CoordinateVector(int low, int high, std::vector<mpz_class> entries);

  int low_weight() const { return low_; }
  int high_weight() const { return high_; }
  std::span<const mpz_class> entries() const { return entries_; }
  std::span<mpz_class> entries() { return entries_; }
  /// Entries for the basic commutators of weight w.
  std::span<const mpz_class> weight_block(int w) const;
  std::span<mpz_class> weight_block(int w);
  /// Basis in entry order (weight ascending, then lexicographic).
  std::vector<LyndonCommutator> basis() const;
  bool is_zero() const;

  /// Weight blocks separated by " | ", e.g. `(2 | 1, 0)`.
  std::string to_string() const;

  friend bool operator==(const CoordinateVector&, const CoordinateVector&) = default;

 private:
  std::size_t block_offset(int w) const;
  int low_;
  int high_;
  std::vector<mpz_class> entries_;
};

/// Exponents e_i with g = prod b_i^{e_i} modulo gamma_{high+1}, found by
/// peeling leading terms off the Magnus expansion.
CoordinateVector coordinates(const Word& g, int low, int high);
/// Same, from a Magnus image whose cap is at least `high`.
CoordinateVector coordinates(const TruncatedSeries& g, int low, int high);

/// The word prod b_i^{e_i} in basis order.
Word from_coordinates(const CoordinateVector& v);

/// Coordinates of a homogeneous degree-w block over the weight-w basis.
/// Throws InternalError("not a Lie element") on a nonzero residual.
std::vector<mpz_class> weight_coordinates(std::span<const mpz_class> block, int w,
                                          const NilBasis& basis);

}  // namespace baerinv
