#include "baerinv/magnus.hpp"

#include <limits>

#include "baerinv/errors.hpp"

namespace baerinv {

void check_series_cap(int cap) {
  if (cap < 1) throw PreconditionError("series cap must be at least 1");
  if (cap > kMaxSeriesCap) {
    throw ResourceError("series cap " + std::to_string(cap) + " exceeds the limit of " +
                        std::to_string(kMaxSeriesCap));
  }
}

MonomialCode MonomialCode::parse(std::string_view text) {
  if (text == "1") return {};
  if (text.size() > static_cast<std::size_t>(kMaxSeriesCap)) {
    throw ParseError("monomial longer than the maximum cap");
  }
  MonomialCode m;
  for (char ch : text) {
    m.bits <<= 1U;
    if (ch == 'Y') {
      m.bits |= 1U;
    } else if (ch != 'X') {
      throw ParseError(std::string("unexpected character '") + ch + "' in monomial");
    }
    ++m.degree;
  }
  return m;
}

std::string MonomialCode::to_string() const {
  if (degree == 0) return "1";
  std::string s(static_cast<std::size_t>(degree), 'X');
  for (int i = 0; i < degree; ++i) {
    if ((bits >> (degree - 1 - i)) & 1U) s[static_cast<std::size_t>(i)] = 'Y';
  }
  return s;
}

TruncatedSeries::TruncatedSeries(int cap) : cap_(cap) {
  check_series_cap(cap);
  coeffs_.resize(offset(cap + 1));
}

TruncatedSeries TruncatedSeries::one(int cap) {
  TruncatedSeries s(cap);
  s.coeffs_[0] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::generator(Generator g, int cap) {
  TruncatedSeries s = one(cap);
  s.block(1)[g.index] = 1;
  return s;
}

const mpz_class& TruncatedSeries::coefficient(const MonomialCode& m) const {
  if (m.degree > cap_) {
    static const mpz_class zero;
    return zero;
  }
  return coeffs_[offset(m.degree) + m.bits];
}

void TruncatedSeries::set_coefficient(const MonomialCode& m, mpz_class value) {
  if (m.degree > cap_) return;
  coeffs_[offset(m.degree) + m.bits] = std::move(value);
}

void TruncatedSeries::add_to_coefficient(const MonomialCode& m, const mpz_class& value) {
  if (m.degree > cap_) return;
  coeffs_[offset(m.degree) + m.bits] += value;
}

std::span<const mpz_class> TruncatedSeries::block(int degree) const {
  return {coeffs_.data() + offset(degree), std::size_t{1} << degree};
}

std::span<mpz_class> TruncatedSeries::block(int degree) {
  return {coeffs_.data() + offset(degree), std::size_t{1} << degree};
}

std::vector<std::pair<std::string, mpz_class>> TruncatedSeries::terms() const {
  std::vector<std::pair<std::string, mpz_class>> out;
  for (int d = 0; d <= cap_; ++d) {
    const auto blk = block(d);
    for (std::uint32_t b = 0; b < blk.size(); ++b) {
      if (sgn(blk[b]) != 0) out.emplace_back(MonomialCode{d, b}.to_string(), blk[b]);
    }
  }
  return out;
}

bool TruncatedSeries::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool TruncatedSeries::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return false;
  }
  return true;
}

std::optional<int> TruncatedSeries::lowest_nonconstant_degree() const {
  for (int d = 1; d <= cap_; ++d) {
    for (const auto& c : block(d)) {
      if (sgn(c) != 0) return d;
    }
  }
  return std::nullopt;
}

TruncatedSeries TruncatedSeries::truncated(int new_cap) const {
  if (new_cap > cap_) throw PreconditionError("cannot raise the cap of a truncated series");
  TruncatedSeries out(new_cap);
  std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(out.coeffs_.size()),
            out.coeffs_.begin());
  return out;
}

std::string TruncatedSeries::to_string() const {
  std::string out;
  for (const auto& [mono, coef] : terms()) {
    const bool negative = sgn(coef) < 0;
    mpz_class mag = abs(coef);
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    if (mono == "1") {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + '*';
      out += mono;
    }
  }
  return out.empty() ? "0" : out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  if (cap_ != other.cap_) throw PreconditionError("series cap mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  if (cap_ != other.cap_) throw PreconditionError("series cap mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const mpz_class& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

namespace {

struct NonzeroEntry {
  int degree;
  std::uint32_t bits;
  const mpz_class* value;
};

std::vector<NonzeroEntry> nonzero_entries(const TruncatedSeries& s, int min_degree = 0) {
  std::vector<NonzeroEntry> out;
  for (int d = min_degree; d <= s.cap(); ++d) {
    const auto blk = s.block(d);
    for (std::uint32_t b = 0; b < blk.size(); ++b) {
      if (sgn(blk[b]) != 0) out.push_back({d, b, &blk[b]});
    }
  }
  return out;
}

}  // namespace

TruncatedSeries multiply_upto(const TruncatedSeries& a, const TruncatedSeries& b, int max_degree) {
  if (a.cap_ != b.cap_) throw PreconditionError("series cap mismatch");
  TruncatedSeries out(a.cap_);
  const auto rhs = nonzero_entries(b);
  for (int da = 0; da <= max_degree; ++da) {
    const auto blk = a.block(da);
    for (std::uint32_t pa = 0; pa < blk.size(); ++pa) {
      const mpz_class& ca = blk[pa];
      if (sgn(ca) == 0) continue;
      for (const auto& e : rhs) {
        // rhs is sorted by degree
        if (da + e.degree > max_degree) break;
        const std::size_t idx =
            TruncatedSeries::offset(da + e.degree) + ((std::size_t{pa} << e.degree) | e.bits);
        mpz_addmul(out.coeffs_[idx].get_mpz_t(), ca.get_mpz_t(), e.value->get_mpz_t());
      }
    }
  }
  return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return multiply_upto(a, b, a.cap_);
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.cap_ == b.cap_ && a.coeffs_ == b.coeffs_;
}

TruncatedSeries series_multiply(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a * b;
}

namespace {

// Inverse of a series with constant term one, exact in degrees <= max_degree
// and zero above.
TruncatedSeries inverse_upto(const TruncatedSeries& a, int max_degree) {
  // Write a = 1 + t. The inverse b = 1 - t*b is fixed degree by degree:
  // b_d = -sum_{k>=1} t_k b_{d-k}. This is the geometric series sum (-t)^k.
  TruncatedSeries inv = TruncatedSeries::one(a.cap());
  const auto tail = nonzero_entries(a, 1);
  for (int d = 1; d <= max_degree; ++d) {
    auto out = inv.block(d);
    for (const auto& e : tail) {
      if (e.degree > d) break;
      const int rest = d - e.degree;
      const auto prev = std::as_const(inv).block(rest);
      for (std::uint32_t q = 0; q < prev.size(); ++q) {
        if (sgn(prev[q]) == 0) continue;
        const std::size_t idx = (std::size_t{e.bits} << rest) | q;
        mpz_submul(out[idx].get_mpz_t(), e.value->get_mpz_t(), prev[q].get_mpz_t());
      }
    }
  }
  return inv;
}

}  // namespace

TruncatedSeries series_inverse(const TruncatedSeries& a) {
  if (a.coefficient(MonomialCode{}) != 1) {
    throw PreconditionError("not a unit with constant term one");
  }
  return inverse_upto(a, a.cap());
}

TruncatedSeries series_power(const TruncatedSeries& a, std::int64_t k) {
  if (k == std::numeric_limits<std::int64_t>::min()) {
    throw PreconditionError("series exponent out of range");
  }
  TruncatedSeries base = k < 0 ? series_inverse(a) : a;
  std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  TruncatedSeries result = TruncatedSeries::one(a.cap());
  while (e != 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

TruncatedSeries series_commutator(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.coefficient(MonomialCode{}) != 1 || b.coefficient(MonomialCode{}) != 1) {
    throw PreconditionError("not a unit with constant term one");
  }
  // a^-1 b^-1 a b = 1 + (b a)^-1 (a b - b a). When a b - b a starts in degree
  // v, only degrees <= cap - v of (b a)^-1 can contribute.
  TruncatedSeries diff = a * b - b * a;
  const auto v = diff.lowest_nonconstant_degree();
  if (!v) return TruncatedSeries::one(a.cap());
  const int keep = a.cap() - *v;
  TruncatedSeries out = multiply_upto(inverse_upto(multiply_upto(b, a, keep), keep), diff, a.cap());
  out.add_to_coefficient(MonomialCode{}, 1);
  return out;
}

TruncatedSeries magnus_expand(const Word& w, int cap) {
  TruncatedSeries result = TruncatedSeries::one(cap);
  if (w.empty()) return result;
  const TruncatedSeries gens[2] = {TruncatedSeries::generator(Generator::x(), cap),
                                   TruncatedSeries::generator(Generator::y(), cap)};
  const TruncatedSeries inverses[2] = {series_inverse(gens[0]), series_inverse(gens[1])};
  for (const Letter& l : w.letters()) {
    result = result * (l.inverted ? inverses[l.gen.index] : gens[l.gen.index]);
  }
  return result;
}

TruncatedSeries magnus_expand(const CommutatorExpr& e, int cap) {
  using Kind = CommutatorExpr::Kind;
  switch (e.kind()) {
    case Kind::kLeaf: return series_power(magnus_expand(e.base(), cap), e.exponent());
    case Kind::kBracket:
      return series_commutator(magnus_expand(e.left(), cap), magnus_expand(e.right(), cap));
    case Kind::kPower: return series_power(magnus_expand(e.inner(), cap), e.exponent());
    case Kind::kProduct: {
      TruncatedSeries acc = TruncatedSeries::one(cap);
      for (const auto& f : e.factors()) acc = acc * magnus_expand(f, cap);
      return acc;
    }
  }
  return TruncatedSeries::one(cap);
}

std::optional<int> lcs_class(const TruncatedSeries& series) {
  return series.lowest_nonconstant_degree();
}

std::optional<int> lcs_class(const Word& w, int cap) { return lcs_class(magnus_expand(w, cap)); }

}  // namespace baerinv
