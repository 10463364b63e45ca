#pragma once

// Words in the free group F = <x, y> and commutator expression trees.
//
// Conventions: [a,b] = a^-1 b^-1 a b, and [a,b,c] = [[a,b],c].

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace baerinv {

/// One of the two free generators: index 0 is x, index 1 is y.
struct Generator {
  std::uint8_t index = 0;

  static constexpr Generator x() { return {0}; }
  static constexpr Generator y() { return {1}; }

  char name() const { return index == 0 ? 'x' : 'y'; }
  auto operator<=>(const Generator&) const = default;
};

/// A generator raised to +1 or -1.
struct Letter {
  Generator gen;
  bool inverted = false;

  Letter inverse() const { return {gen, !inverted}; }
  /// 'x', 'y', 'X' (= x^-1) or 'Y' (= y^-1).
  char symbol() const;
  auto operator<=>(const Letter&) const = default;
};

/// A freely reduced word. Construction always reduces, so a Word can never
/// hold an adjacent cancelling pair.
class Word {
 public:
  Word() = default;
  /// Freely reduces `letters`.
  explicit Word(std::span<const Letter> letters);

  static Word generator(Generator g, bool inverted = false);
  /// Parses the `xyXY` syntax; whitespace is ignored, any other character is
  /// a ParseError. The result is reduced.
  static Word parse(std::string_view text);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word power(std::int64_t exponent) const;
  std::string to_string() const;

  friend Word operator*(const Word& u, const Word& v);
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

Word word_multiply(const Word& u, const Word& v);
Word word_inverse(const Word& u);
/// u^-1 v^-1 u v
Word word_commutator(const Word& u, const Word& v);

/// Immutable expression tree over words. Copies share structure.
class CommutatorExpr {
 public:
  enum class Kind { kLeaf, kBracket, kPower, kProduct };

  /// base^exponent
  static CommutatorExpr leaf(Word base, std::int64_t exponent = 1);
  static CommutatorExpr bracket(CommutatorExpr left, CommutatorExpr right);
  /// Left-normed [a1, a2, ..., ak]; requires k >= 2.
  static CommutatorExpr left_normed(std::span<const CommutatorExpr> parts);
  static CommutatorExpr power(CommutatorExpr inner, std::int64_t exponent);
  static CommutatorExpr product(std::vector<CommutatorExpr> factors);

  /// Parses e.g. `[x^3,y,x,y]`, `[x,y]^2*[x,y,x]^-1`, `XYxy`, `1`.
  static CommutatorExpr parse(std::string_view text);

  Kind kind() const;
  // Accessors are only meaningful for the matching kind.
  const Word& base() const;
  std::int64_t exponent() const;
  const CommutatorExpr& left() const;
  const CommutatorExpr& right() const;
  const CommutatorExpr& inner() const;
  std::span<const CommutatorExpr> factors() const;

  /// Nesting weight when every leaf counts as 1: a leaf has weight 1, a
  /// bracket the sum of its sides; powers inherit, products take the minimum.
  int weight() const;

  /// Renders in the syntax accepted by parse(), flattening left-normed
  /// brackets.
  std::string to_string() const;

 private:
  struct Node;
  explicit CommutatorExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Structural evaluation to a reduced word.
Word eval_expr(const CommutatorExpr& e);

}  // namespace baerinv
