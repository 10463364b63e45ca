#pragma once

// Truncated noncommutative power series Z<<X, Y>> and the Magnus embedding
// x -> 1 + X, y -> 1 + Y. A word lies in the k-th lower central term of the
// free group exactly when its expansion is 1 + (terms of degree >= k).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "baerinv/freegroup.hpp"

namespace baerinv {

/// Largest degree cap any series may carry (2^13 - 1 stored coefficients).
inline constexpr int kMaxSeriesCap = 12;

/// Throws ResourceError unless 1 <= cap <= kMaxSeriesCap.
void check_series_cap(int cap);

/// A monomial in X, Y encoded as (degree, bits); the first letter is the most
/// significant bit and Y is 1. Ordering by index gives length-then-lex order.
struct MonomialCode {
  int degree = 0;
  std::uint32_t bits = 0;

  static MonomialCode parse(std::string_view text);
  std::string to_string() const;
};

/// Element of Z<<X,Y>> modulo monomials of degree > cap, stored densely by
/// degree block. Semantically a sparse map monomial -> nonzero coefficient.
class TruncatedSeries {
 public:
  /// The zero series.
  explicit TruncatedSeries(int cap);

  static TruncatedSeries one(int cap);
  /// 1 + X or 1 + Y.
  static TruncatedSeries generator(Generator g, int cap);

  int cap() const { return cap_; }

  const mpz_class& coefficient(const MonomialCode& m) const;
  const mpz_class& coefficient(std::string_view monomial) const {
    return coefficient(MonomialCode::parse(monomial));
  }
  void set_coefficient(const MonomialCode& m, mpz_class value);
  void add_to_coefficient(const MonomialCode& m, const mpz_class& value);

  /// Coefficients of all 2^degree monomials of one degree, indexed by bits.
  std::span<const mpz_class> block(int degree) const;
  std::span<mpz_class> block(int degree);

  /// Nonzero terms in length-then-lexicographic order.
  std::vector<std::pair<std::string, mpz_class>> terms() const;
  bool is_zero() const;
  bool is_one() const;
  /// Smallest positive degree with a nonzero coefficient, if any.
  std::optional<int> lowest_nonconstant_degree() const;

  /// Drops every monomial above new_cap (new_cap <= cap()).
  TruncatedSeries truncated(int new_cap) const;

  /// e.g. `1 + X + XY - YX`, `0`.
  std::string to_string() const;

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(const mpz_class& scalar);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  /// Product restricted to degrees <= max_degree; higher degrees are zero.
  friend TruncatedSeries multiply_upto(const TruncatedSeries& a, const TruncatedSeries& b,
                                       int max_degree);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  static std::size_t offset(int degree) { return (std::size_t{1} << degree) - 1; }
  int cap_;
  std::vector<mpz_class> coeffs_;
};

/// Product with everything above the cap discarded. Caps must match.
TruncatedSeries series_multiply(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries multiply_upto(const TruncatedSeries& a, const TruncatedSeries& b, int max_degree);
/// Two-sided inverse of a series with constant term one.
TruncatedSeries series_inverse(const TruncatedSeries& a);
/// a^k for any integer k (negative powers go through the inverse).
TruncatedSeries series_power(const TruncatedSeries& a, std::int64_t k);
/// Image of the group commutator a^-1 b^-1 a b.
TruncatedSeries series_commutator(const TruncatedSeries& a, const TruncatedSeries& b);

TruncatedSeries magnus_expand(const Word& w, int cap);
/// Expands an expression structurally, without materializing the word.
/// Equal to magnus_expand(eval_expr(e), cap) but avoids exponential word growth.
TruncatedSeries magnus_expand(const CommutatorExpr& e, int cap);

/// Lower-central-series class of an element from its Magnus image: the first
/// degree d with a nonzero component in (series - 1), or nullopt when the
/// element lies in gamma_{cap+1}.
std::optional<int> lcs_class(const TruncatedSeries& series);
std::optional<int> lcs_class(const Word& w, int cap);

}  // namespace baerinv
