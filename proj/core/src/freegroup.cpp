#include "baerinv/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <variant>

#include "baerinv/errors.hpp"

namespace baerinv {

char Letter::symbol() const {
  const char c = gen.name();
  return inverted ? static_cast<char>(std::toupper(c)) : c;
}

namespace {

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == l.inverse()) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

Word::Word(std::span<const Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) push_reduced(letters_, l);
}

Word Word::generator(Generator g, bool inverted) {
  const Letter l{g, inverted};
  return Word(std::span<const Letter>(&l, 1));
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> raw;
  for (char ch : text) {
    switch (ch) {
      case 'x': raw.push_back({Generator::x(), false}); break;
      case 'y': raw.push_back({Generator::y(), false}); break;
      case 'X': raw.push_back({Generator::x(), true}); break;
      case 'Y': raw.push_back({Generator::y(), true}); break;
      default:
        if (std::isspace(static_cast<unsigned char>(ch))) break;
        throw ParseError(std::string("unexpected character '") + ch + "' in word");
    }
  }
  return Word(raw);
}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back(it->inverse());
  }
  return out;
}

Word Word::power(std::int64_t exponent) const {
  Word base = exponent < 0 ? inverse() : *this;
  // Negating INT64_MIN is UB; such exponents are far outside any usable range.
  if (exponent == std::numeric_limits<std::int64_t>::min()) {
    throw PreconditionError("word exponent out of range");
  }
  std::uint64_t k = static_cast<std::uint64_t>(exponent < 0 ? -exponent : exponent);
  Word result;
  while (k != 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k != 0) base = base * base;
  }
  return result;
}

std::string Word::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (const Letter& l : letters_) s.push_back(l.symbol());
  return s;
}

Word operator*(const Word& u, const Word& v) {
  Word out;
  out.letters_ = u.letters_;
  out.letters_.reserve(u.letters_.size() + v.letters_.size());
  for (const Letter& l : v.letters_) push_reduced(out.letters_, l);
  return out;
}

Word word_multiply(const Word& u, const Word& v) { return u * v; }
Word word_inverse(const Word& u) { return u.inverse(); }
Word word_commutator(const Word& u, const Word& v) {
  return u.inverse() * v.inverse() * u * v;
}

// ---------------------------------------------------------------------------

struct CommutatorExpr::Node {
  struct Leaf {
    Word base;
    std::int64_t exponent;
  };
  struct Bracket {
    CommutatorExpr left, right;
  };
  struct Power {
    CommutatorExpr inner;
    std::int64_t exponent;
  };
  struct Product {
    std::vector<CommutatorExpr> factors;
  };
  std::variant<Leaf, Bracket, Power, Product> value;
};

CommutatorExpr::CommutatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

CommutatorExpr CommutatorExpr::leaf(Word base, std::int64_t exponent) {
  return CommutatorExpr(std::make_shared<const Node>(Node{Node::Leaf{std::move(base), exponent}}));
}

CommutatorExpr CommutatorExpr::bracket(CommutatorExpr left, CommutatorExpr right) {
  return CommutatorExpr(
      std::make_shared<const Node>(Node{Node::Bracket{std::move(left), std::move(right)}}));
}

CommutatorExpr CommutatorExpr::left_normed(std::span<const CommutatorExpr> parts) {
  if (parts.size() < 2) throw PreconditionError("a commutator needs at least two entries");
  CommutatorExpr acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = bracket(acc, parts[i]);
  return acc;
}

CommutatorExpr CommutatorExpr::power(CommutatorExpr inner, std::int64_t exponent) {
  return CommutatorExpr(
      std::make_shared<const Node>(Node{Node::Power{std::move(inner), exponent}}));
}

CommutatorExpr CommutatorExpr::product(std::vector<CommutatorExpr> factors) {
  return CommutatorExpr(std::make_shared<const Node>(Node{Node::Product{std::move(factors)}}));
}

CommutatorExpr::Kind CommutatorExpr::kind() const {
  return static_cast<Kind>(node_->value.index());
}

const Word& CommutatorExpr::base() const { return std::get<Node::Leaf>(node_->value).base; }

std::int64_t CommutatorExpr::exponent() const {
  if (const auto* l = std::get_if<Node::Leaf>(&node_->value)) return l->exponent;
  return std::get<Node::Power>(node_->value).exponent;
}

const CommutatorExpr& CommutatorExpr::left() const {
  return std::get<Node::Bracket>(node_->value).left;
}
const CommutatorExpr& CommutatorExpr::right() const {
  return std::get<Node::Bracket>(node_->value).right;
}
const CommutatorExpr& CommutatorExpr::inner() const {
  return std::get<Node::Power>(node_->value).inner;
}
std::span<const CommutatorExpr> CommutatorExpr::factors() const {
  return std::get<Node::Product>(node_->value).factors;
}

int CommutatorExpr::weight() const {
  switch (kind()) {
    case Kind::kLeaf: return 1;
    case Kind::kBracket: return left().weight() + right().weight();
    case Kind::kPower: return inner().weight();
    case Kind::kProduct: {
      int w = std::numeric_limits<int>::max();
      for (const auto& f : factors()) w = std::min(w, f.weight());
      return factors().empty() ? std::numeric_limits<int>::max() : w;
    }
  }
  return 0;
}

namespace {

std::string exponent_suffix(std::int64_t e) {
  return e == 1 ? std::string() : "^" + std::to_string(e);
}

void render(const CommutatorExpr& e, std::string& out);

// Emits the comma-separated entries of a left-normed bracket.
void render_bracket_entries(const CommutatorExpr& e, std::string& out) {
  if (e.left().kind() == CommutatorExpr::Kind::kBracket) {
    render_bracket_entries(e.left(), out);
  } else {
    render(e.left(), out);
  }
  out += ',';
  render(e.right(), out);
}

void render(const CommutatorExpr& e, std::string& out) {
  using Kind = CommutatorExpr::Kind;
  switch (e.kind()) {
    case Kind::kLeaf: {
      const std::string w = e.base().to_string();
      if (w.empty()) {
        out += '1';
      } else if (e.exponent() != 1 && w.size() > 1) {
        out += '(' + w + ')' + exponent_suffix(e.exponent());
      } else {
        out += w + exponent_suffix(e.exponent());
      }
      break;
    }
    case Kind::kBracket:
      out += '[';
      render_bracket_entries(e, out);
      out += ']';
      break;
    case Kind::kPower: {
      if (e.exponent() == 1) {
        render(e.inner(), out);
        break;
      }
      const bool wrap = e.inner().kind() == Kind::kProduct ||
                        e.inner().kind() == Kind::kPower ||
                        (e.inner().kind() == Kind::kLeaf &&
                         (e.inner().exponent() != 1 || e.inner().base().length() > 1));
      if (wrap) out += '(';
      render(e.inner(), out);
      if (wrap) out += ')';
      out += exponent_suffix(e.exponent());
      break;
    }
    case Kind::kProduct: {
      if (e.factors().empty()) {
        out += '1';
        break;
      }
      bool first = true;
      for (const auto& f : e.factors()) {
        if (!first) out += '*';
        first = false;
        render(f, out);
      }
      break;
    }
  }
}

// Recursive-descent parser:
//   expr    := factor ('*' factor)*
//   factor  := primary ('^' integer)?
//   primary := '[' expr (',' expr)+ ']' | '(' expr ')' | word | '1'
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  CommutatorExpr parse_all() {
    CommutatorExpr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  CommutatorExpr parse_expr() {
    std::vector<CommutatorExpr> factors{parse_factor()};
    while (accept('*')) factors.push_back(parse_factor());
    if (factors.size() == 1) return factors.front();
    return CommutatorExpr::product(std::move(factors));
  }

  std::int64_t parse_integer() {
    skip_space();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (begin != end && *begin == '+') ++begin;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) fail("expected an integer exponent");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  CommutatorExpr parse_factor() {
    CommutatorExpr base = parse_primary();
    while (accept('^')) {
      const std::int64_t k = parse_integer();
      if (base.kind() == CommutatorExpr::Kind::kLeaf) {
        base = CommutatorExpr::leaf(base.base(), base.exponent() * k);
      } else {
        base = CommutatorExpr::power(base, k);
      }
    }
    return base;
  }

  CommutatorExpr parse_primary() {
    skip_space();
    if (accept('[')) {
      std::vector<CommutatorExpr> parts{parse_expr()};
      while (accept(',')) parts.push_back(parse_expr());
      if (!accept(']')) fail("expected ']'");
      if (parts.size() < 2) fail("a commutator needs at least two entries");
      return CommutatorExpr::left_normed(parts);
    }
    if (accept('(')) {
      CommutatorExpr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (accept('1')) return CommutatorExpr::leaf(Word());
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::string_view("xyXY").find(text_[pos_]) != std::string_view::npos) {
      ++pos_;
    }
    if (start == pos_) fail("expected a word, '[' or '('");
    return CommutatorExpr::leaf(Word::parse(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CommutatorExpr CommutatorExpr::parse(std::string_view text) {
  return ExprParser(text).parse_all();
}

std::string CommutatorExpr::to_string() const {
  std::string out;
  render(*this, out);
  return out;
}

Word eval_expr(const CommutatorExpr& e) {
  using Kind = CommutatorExpr::Kind;
  switch (e.kind()) {
    case Kind::kLeaf: return e.base().power(e.exponent());
    case Kind::kBracket: return word_commutator(eval_expr(e.left()), eval_expr(e.right()));
    case Kind::kPower: return eval_expr(e.inner()).power(e.exponent());
    case Kind::kProduct: {
      Word acc;
      for (const auto& f : e.factors()) acc = acc * eval_expr(f);
      return acc;
    }
  }
  return {};
}

}  // namespace baerinv
