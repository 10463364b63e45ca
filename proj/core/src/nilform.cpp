#include "baerinv/nilform.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "baerinv/errors.hpp"

namespace baerinv {

namespace {

std::uint32_t bits_of(const Monomial& m) {
  std::uint32_t bits = 0;
  for (auto l : m) bits = (bits << 1U) | l;
  return bits;
}

}  // namespace

NilBasis::NilBasis(int cap) : cap_(cap) {
  check_series_cap(cap);
  by_weight_.resize(static_cast<std::size_t>(cap) + 1);
  for (int w = 1; w <= cap; ++w) {
    for (auto& b : enumerate_basis(w, 2)) {
      Element e{b, bits_of(b.word()), {}, magnus_expand(b.to_expr(), cap)};
      for (const auto& [m, c] : lie_bracket_expansion(b).coefficients) {
        e.expansion.emplace_back(bits_of(m), c);
      }
      by_weight_[static_cast<std::size_t>(w)].push_back(std::move(e));
    }
  }
}

const NilBasis& NilBasis::get(int cap) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const NilBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[cap];
  if (!slot) slot = std::make_unique<const NilBasis>(cap);
  return *slot;
}

std::size_t NilBasis::rank(int low, int high) const {
  std::size_t n = 0;
  for (int w = low; w <= high; ++w) n += weight(w).size();
  return n;
}

// ---------------------------------------------------------------------------

namespace {

void check_range(int low, int high) {
  if (low < 1 || low > high) throw PreconditionError("coordinate range needs 1 <= low <= high");
  check_series_cap(high);
}

}  // namespace

CoordinateVector::CoordinateVector(int low, int high) : low_(low), high_(high) {
  check_range(low, high);
  std::size_t n = 0;
  for (int w = low; w <= high; ++w) n += witt_rank(w, 2);
  entries_.resize(n);
}

CoordinateVector::CoordinateVector(int low, int high, std::vector<mpz_class> entries)
    : CoordinateVector(low, high) {
  if (entries.size() != entries_.size()) {
    throw PreconditionError("coordinate vector has " + std::to_string(entries.size()) +
                            " entries, basis has " + std::to_string(entries_.size()));
  }
  entries_ = std::move(entries);
}

std::size_t CoordinateVector::block_offset(int w) const {
  if (w < low_ || w > high_) throw PreconditionError("weight outside coordinate range");
  std::size_t off = 0;
  for (int j = low_; j < w; ++j) off += witt_rank(j, 2);
  return off;
}

std::span<const mpz_class> CoordinateVector::weight_block(int w) const {
  return std::span<const mpz_class>(entries_).subspan(block_offset(w), witt_rank(w, 2));
}

std::span<mpz_class> CoordinateVector::weight_block(int w) {
  return std::span<mpz_class>(entries_).subspan(block_offset(w), witt_rank(w, 2));
}

std::vector<LyndonCommutator> CoordinateVector::basis() const {
  std::vector<LyndonCommutator> out;
  for (int w = low_; w <= high_; ++w) {
    auto blk = enumerate_basis(w, 2);
    out.insert(out.end(), blk.begin(), blk.end());
  }
  return out;
}

bool CoordinateVector::is_zero() const {
  for (const auto& e : entries_) {
    if (sgn(e) != 0) return false;
  }
  return true;
}

std::string CoordinateVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int w = low_; w <= high_; ++w) {
    if (w != low_) os << " | ";
    bool first = true;
    for (const auto& e : weight_block(w)) {
      if (!first) os << ", ";
      first = false;
      os << e.get_str();
    }
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<mpz_class> weight_coordinates(std::span<const mpz_class> block, int w,
                                          const NilBasis& basis) {
  std::vector<mpz_class> residual(block.begin(), block.end());
  const auto elems = basis.weight(w);
  std::vector<mpz_class> coords(elems.size());
  // Basis words ascend lexicographically and each expansion is its own word
  // plus strictly larger monomials, so every coefficient is final when read.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const mpz_class alpha = residual[elems[i].word_bits];
    if (sgn(alpha) == 0) continue;
    for (const auto& [bits, c] : elems[i].expansion) residual[bits] -= alpha * c;
    coords[i] = alpha;
  }
  for (const auto& r : residual) {
    if (sgn(r) != 0) throw InternalError("not a Lie element");
  }
  return coords;
}

CoordinateVector coordinates(const TruncatedSeries& g, int low, int high) {
  check_range(low, high);
  if (g.cap() < high) throw PreconditionError("series cap is below the requested weight");
  if (g.coefficient(MonomialCode{}) != 1) throw PreconditionError("series is not a group element");
  TruncatedSeries residual = g.cap() == high ? g : g.truncated(high);
  const auto cls = lcs_class(residual);
  if (cls && *cls < low) throw PreconditionError("element not in gamma_" + std::to_string(low));

  const NilBasis& basis = NilBasis::get(high);
  CoordinateVector out(low, high);
  for (int w = low; w <= high; ++w) {
    const auto coords = weight_coordinates(residual.block(w), w, basis);
    const auto elems = basis.weight(w);
    auto dest = out.weight_block(w);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      const mpz_class& e = coords[i];
      dest[i] = e;
      if (sgn(e) == 0) continue;
      if (2 * w > high) {
        // Everything left is central modulo gamma_{high+1}: products of two
        // terms of degree >= w vanish, so peeling is plain subtraction.
        for (int d = w; d <= high; ++d) {
          auto blk = residual.block(d);
          const auto src = elems[i].magnus.block(d);
          for (std::size_t k = 0; k < blk.size(); ++k) {
            if (sgn(src[k]) != 0) mpz_submul(blk[k].get_mpz_t(), e.get_mpz_t(), src[k].get_mpz_t());
          }
        }
      } else {
        if (!e.fits_slong_p()) throw ResourceError("coordinate exponent too large to peel");
        residual = series_power(elems[i].magnus, -e.get_si()) * residual;
      }
    }
    const auto after = lcs_class(residual);
    if (after && *after <= w) throw InternalError("peeling left a weight-" + std::to_string(w) + " residue");
  }
  return out;
}

CoordinateVector coordinates(const Word& g, int low, int high) {
  check_range(low, high);
  return coordinates(magnus_expand(g, high), low, high);
}

Word from_coordinates(const CoordinateVector& v) {
  Word out;
  const auto basis = v.basis();
  const auto entries = v.entries();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (sgn(entries[i]) == 0) continue;
    if (!entries[i].fits_slong_p()) throw PreconditionError("exponent too large to materialize a word");
    out = out * eval_expr(basis[i].to_expr()).power(entries[i].get_si());
  }
  return out;
}

}  // namespace baerinv
