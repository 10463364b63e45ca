#pragma once

// Baer-invariants N_cM(G) of G(r,s,n) = <x, y | x^r, y^s, gamma_{n+1}(F)>,
// computed as gamma_{c+1}(F) / gamma_{c+n+1}(F) rho_{c+1}(S) where
// S = <x^r, y^s>^F and rho_{c+1}(S) = [S, cF]; plus closed-form predictors
// and congruence checkers for the commutator expansions of x^r.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "baerinv/abelian.hpp"
#include "baerinv/freegroup.hpp"
#include "baerinv/intlin.hpp"

namespace baerinv {

/// Default bound on the total nilpotency class (c + n) of a computation.
inline constexpr int kDefaultCap = 10;

/// Throws ResourceError if `needed` exceeds `cap`, or `cap` exceeds the
/// hard series limit.
void check_class_cap(int needed, int cap);

struct ProblemSpec {
  std::int64_t r = 1;  // order of Z_r
  std::int64_t s = 1;  // order of Z_s
  int n = 1;           // nilpotent-product class
  int c = 1;           // variety class N_c

  /// Throws PreconditionError unless r, s, n, c >= 1.
  void validate() const;
  mpz_class d() const;  // gcd(r, s)
  std::string to_string() const;
  auto operator<=>(const ProblemSpec&) const = default;
};

/// All left-normed [u, b1, ..., bm] with head u in {x^r, y^s}, every bi a
/// two-letter basic commutator, m >= c, and 1 + sum weight(bi) <= c + n.
/// Heads x^r first; tails in depth-first order over the weight-then-lex basis.
std::vector<CommutatorExpr> rho_generators(const ProblemSpec& spec, int cap = kDefaultCap);

/// Coordinate rows over weights c+1..high of every generator of total weight
/// <= high (generators as in rho_generators with c + n replaced by high).
/// Zero and duplicate rows are dropped; order follows the enumeration.
IntMatrix rho_matrix(const ProblemSpec& spec, int high, int cap = kDefaultCap);

/// A sublattice of Z^ambient_rank described by its Smith diagonal.
struct SubgroupStructure {
  std::vector<mpz_class> diagonal;
  std::size_t rank = 0;
  std::size_t ambient_rank = 0;

  /// True when the lattice is d * Z^ambient_rank.
  bool is_scalar(const mpz_class& d) const;
  std::string to_string() const;
  friend bool operator==(const SubgroupStructure&, const SubgroupStructure&) = default;
};

/// gamma_{c+j} rho_{c+1}(S) / gamma_{c+j} inside gamma_{c+1} / gamma_{c+j}.
SubgroupStructure rho_subgroup_structure(const ProblemSpec& spec, int j, int cap = kDefaultCap);

/// N_cM(G(r,s,n)) for c >= n.
AbelianStructure baer_invariant(const ProblemSpec& spec, int cap = kDefaultCap);

/// Which closed form produced a prediction.
enum class ClosedForm {
  kCoprime,          // gcd(r,s) = 1: trivial for all n, c
  kDirectProduct,    // n = 1: Z_d^{r(c+1)}
  kOddClassTwo,      // n = 2, c >= 2, r and s odd
  kCoprimeToSix,     // n in {3,4}, c >= n, gcd(r,6) = gcd(s,6) = 1
};

/// Name used in reports, e.g. "Theorem 3.4".
std::string_view closed_form_label(ClosedForm form);

struct Prediction {
  AbelianStructure structure;
  ClosedForm form;
};

/// nullopt when no closed form covers the parameters.
std::optional<Prediction> predict_closed_form(const ProblemSpec& spec);

/// N_cM of the finite abelian group Z_{n1} + ... + Z_{nk}. Orders need not
/// form a divisibility chain; they are canonicalized first.
AbelianStructure abelian_multiplicator(std::span<const mpz_class> orders, int c);

// ---------------------------------------------------------------------------
// Congruence checking

struct CongruenceTerm {
  CommutatorExpr base;
  std::int64_t exponent;
};

struct CongruenceReport {
  bool holds = false;
  /// Class of lhs * rhs^-1; nullopt means it lies in gamma_{modulus_weight}.
  std::optional<int> residual_class;
  int modulus_weight = 0;
  std::string lhs;
  std::string rhs;
  /// Leading term of the residual in the basic-commutator basis, e.g.
  /// `-1*[x,[x,[x,y]]]`; empty when the congruence holds.
  std::string residual_leading;
  int c = 0;
  std::int64_t r = 0;
  std::string a;  // the letter tuple, e.g. "xy"
};

/// Product of base^exponent in order.
CommutatorExpr congruence_rhs(std::span<const CongruenceTerm> terms);

/// Decides lhs == prod(terms) modulo gamma_{modulus_weight}(F).
CongruenceReport check_congruence(const CommutatorExpr& lhs, std::span<const CongruenceTerm> terms,
                                  int modulus_weight);

/// [x^r, y, a1, ..., a_{c-1}]
CommutatorExpr lemma21_lhs(std::int64_t r, std::span<const Generator> a);
/// The nine-term expansion of [x^r, y, a1, ..., a_{c-1}] modulo gamma_{c+5}.
std::vector<CongruenceTerm> lemma21_terms(std::int64_t r, std::span<const Generator> a);
/// Requires c >= 3, r >= 4, |a| = c - 1, c + 4 <= cap.
CongruenceReport lemma21_check(int c, std::int64_t r, std::span<const Generator> a,
                               int cap = kDefaultCap);

/// [x^r, a1, ..., ac]
CommutatorExpr prop22_lhs(std::int64_t r, std::span<const Generator> a);
/// [x,a1..ac]^r modulo gamma_{c+2}; times [x,a1,x,a2..ac]^C(r,2) modulo gamma_{c+3}.
std::vector<CongruenceTerm> prop22_terms(std::int64_t r, std::span<const Generator> a,
                                         int modulus_weight);
/// Requires c >= 1, |a| = c, modulus_weight in {c+2, c+3}, modulus_weight <= cap + 1.
CongruenceReport prop22_congruence_check(int c, std::int64_t r, std::span<const Generator> a,
                                         int modulus_weight, int cap = kDefaultCap);

/// Parses a letter tuple such as "xy" or "x,y".
std::vector<Generator> parse_letters(std::string_view text);
std::string letters_to_string(std::span<const Generator> a);

}  // namespace baerinv
