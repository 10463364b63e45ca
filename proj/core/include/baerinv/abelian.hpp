#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace baerinv {

/// A finitely generated abelian group Z_{d1} + ... + Z_{dm} + Z^f in
/// invariant-factor form: d1 | d2 | ... | dm, every di >= 2.
class AbelianStructure {
 public:
  /// The trivial group.
  AbelianStructure() = default;
  /// Throws PreconditionError unless the factors already form a chain of
  /// integers >= 2.
  AbelianStructure(std::vector<mpz_class> invariant_factors, std::size_t free_rank);

  /// Canonicalizes an arbitrary list of cyclic orders (Z_0 counts as Z,
  /// orders 1 vanish, signs are ignored).
  static AbelianStructure from_orders(std::span<const mpz_class> orders, std::size_t free_rank = 0);
  /// Z_d^copies; d = 1 gives the trivial group and d = 0 gives Z^copies.
  static AbelianStructure cyclic_power(const mpz_class& d, std::size_t copies);

  const std::vector<mpz_class>& invariant_factors() const { return factors_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }
  /// Direct sum.
  AbelianStructure operator+(const AbelianStructure& other) const;

  /// `trivial`, `Z_3^5`, `Z_2 + Z_6`, `Z_2 + Z^3`.
  std::string to_string() const;

  friend bool operator==(const AbelianStructure&, const AbelianStructure&) = default;

 private:
  std::vector<mpz_class> factors_;
  std::size_t free_rank_ = 0;
};

}  // namespace baerinv
