#include "baerinv/lyndon.hpp"

#include <stdexcept>

#include "baerinv/errors.hpp"

namespace baerinv {

std::string letter_name(std::uint8_t letter) {
  static constexpr char kNames[] = {'x', 'y', 'z', 't', 'u', 'v', 'w'};
  if (letter < sizeof(kNames)) return std::string(1, kNames[letter]);
  return "g" + std::to_string(letter);
}

std::string monomial_to_string(const Monomial& m) {
  std::string s;
  for (auto l : m) s += letter_name(l);
  return s;
}

bool is_lyndon(const Monomial& word) {
  if (word.empty()) return false;
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (!std::lexicographical_compare(word.begin(), word.end(), word.begin() + static_cast<std::ptrdiff_t>(i),
                                      word.end())) {
      return false;
    }
  }
  return true;
}

std::size_t standard_split(const Monomial& lyndon_word) {
  for (std::size_t i = 1; i < lyndon_word.size(); ++i) {
    Monomial suffix(lyndon_word.begin() + static_cast<std::ptrdiff_t>(i), lyndon_word.end());
    if (is_lyndon(suffix)) return i;
  }
  throw PreconditionError("standard factorization needs a Lyndon word of length >= 2");
}

LyndonCommutator::LyndonCommutator(Monomial word) : word_(std::move(word)) {
  if (!is_lyndon(word_)) {
    throw PreconditionError("'" + monomial_to_string(word_) + "' is not a Lyndon word");
  }
}

std::pair<LyndonCommutator, LyndonCommutator> LyndonCommutator::factors() const {
  const auto split = static_cast<std::ptrdiff_t>(standard_split(word_));
  return {LyndonCommutator(Monomial(word_.begin(), word_.begin() + split)),
          LyndonCommutator(Monomial(word_.begin() + split, word_.end()))};
}

std::string LyndonCommutator::bracket_string() const {
  if (is_letter()) return letter_name(word_[0]);
  const auto [u, v] = factors();
  return "[" + u.bracket_string() + "," + v.bracket_string() + "]";
}

CommutatorExpr LyndonCommutator::to_expr() const {
  if (is_letter()) {
    if (word_[0] > 1) throw PreconditionError("group expressions exist only on letters x, y");
    return CommutatorExpr::leaf(Word::generator(Generator{word_[0]}));
  }
  const auto [u, v] = factors();
  return CommutatorExpr::bracket(u.to_expr(), v.to_expr());
}

void LieElement::add(const Monomial& m, const mpz_class& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = coefficients.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) coefficients.erase(it);
  }
}

namespace {

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

LieElement multiply(const LieElement& a, const LieElement& b) {
  LieElement out;
  out.weight = a.weight + b.weight;
  for (const auto& [ma, ca] : a.coefficients) {
    for (const auto& [mb, cb] : b.coefficients) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.add(m, ca * cb);
    }
  }
  return out;
}

}  // namespace

std::uint64_t witt_rank(int weight, int letters) {
  if (weight < 1 || letters < 1) throw PreconditionError("witt_rank needs weight >= 1 and letters >= 1");
  mpz_class sum = 0;
  for (int d = 1; d <= weight; ++d) {
    if (weight % d != 0) continue;
    const int mu = mobius(d);
    if (mu == 0) continue;
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(letters),
                  static_cast<unsigned long>(weight / d));
    sum += mu * term;
  }
  sum /= weight;
  if (!sum.fits_ulong_p()) throw std::overflow_error("witt_rank does not fit in 64 bits");
  return sum.get_ui();
}

std::vector<LyndonCommutator> enumerate_basis(int weight, int letters) {
  if (weight < 1 || letters < 1) throw PreconditionError("enumerate_basis needs weight >= 1 and letters >= 1");
  if (letters > 255) throw PreconditionError("alphabet too large");
  // Duval's generation of Lyndon words of length <= weight, in lex order.
  std::vector<LyndonCommutator> out;
  const auto top = static_cast<std::uint8_t>(letters - 1);
  Monomial w{0};
  while (!w.empty()) {
    if (static_cast<int>(w.size()) == weight) out.emplace_back(w);
    const std::size_t m = w.size();
    while (static_cast<int>(w.size()) < weight) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == top) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

LieElement lie_bracket_expansion(const LyndonCommutator& b) {
  if (b.is_letter()) {
    LieElement e;
    e.weight = 1;
    e.add(b.word(), 1);
    return e;
  }
  const auto [u, v] = b.factors();
  const LieElement pu = lie_bracket_expansion(u);
  const LieElement pv = lie_bracket_expansion(v);
  LieElement out = multiply(pu, pv);
  for (const auto& [m, c] : multiply(pv, pu).coefficients) out.add(m, -c);
  return out;
}

std::vector<std::pair<LyndonCommutator, mpz_class>> lie_coordinates(const LieElement& e) {
  // The expansion of a bracketed Lyndon word is the word itself plus strictly
  // larger monomials, so the smallest surviving monomial is always the next
  // basis element to eliminate.
  LieElement residual = e;
  std::vector<std::pair<LyndonCommutator, mpz_class>> out;
  while (!residual.is_zero()) {
    const auto& [smallest, coef] = *residual.coefficients.begin();
    if (!is_lyndon(smallest)) throw InternalError("not a Lie element");
    LyndonCommutator b(smallest);
    const mpz_class alpha = coef;
    for (const auto& [m, c] : lie_bracket_expansion(b).coefficients) residual.add(m, -alpha * c);
    out.emplace_back(std::move(b), alpha);
  }
  return out;
}

}  // namespace baerinv
