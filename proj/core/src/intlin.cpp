#include "baerinv/intlin.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

#include "baerinv/errors.hpp"

namespace baerinv {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw PreconditionError("ragged matrix literal");
    for (long v : r) entries_.emplace_back(v);
  }
}

std::span<const mpz_class> IntMatrix::row(std::size_t r) const {
  return std::span<const mpz_class>(entries_).subspan(r * cols_, cols_);
}

void IntMatrix::append_row(std::span<const mpz_class> values) {
  if (values.size() != cols_) throw PreconditionError("row length does not match column count");
  entries_.insert(entries_.end(), values.begin(), values.end());
  ++rows_;
}

namespace {

using Row = std::vector<mpz_class>;

// row -= q * other, from column `from` on.
void sub_multiple(Row& row, const mpz_class& q, const Row& other, std::size_t from) {
  for (std::size_t j = from; j < row.size(); ++j) {
    if (sgn(other[j]) != 0) mpz_submul(row[j].get_mpz_t(), q.get_mpz_t(), other[j].get_mpz_t());
  }
}

// Symmetric residue of x modulo d, in (-d/2, d/2].
void reduce_mod(mpz_class& x, const mpz_class& d) {
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  if (2 * x > d) x -= d;
}

// Row echelon basis of the row lattice, built one row at a time. Pivots are
// indexed by column; at most `cols` rows survive, so tall redundant inputs
// collapse before the quadratic Smith phase. With a modulus D such that the
// lattice contains D * Z^cols, every pivot starts as D * e_c and all other
// entries are kept reduced mod D, which bounds coefficient growth.
class EchelonLattice {
 public:
  EchelonLattice(std::size_t cols, const mpz_class* modulus)
      : pivots_(cols), modulus_(modulus) {
    if (modulus_) {
      for (std::size_t c = 0; c < cols; ++c) {
        Row r(cols);
        r[c] = *modulus_;
        pivots_[c] = std::move(r);
      }
    }
  }

  void insert(Row v) {
    const std::size_t n = pivots_.size();
    if (modulus_) {
      for (auto& e : v) reduce_mod(e, *modulus_);
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (sgn(v[c]) == 0) continue;
      auto& piv = pivots_[c];
      if (!piv) {
        if (sgn(v[c]) < 0) {
          for (auto& e : v) e = -e;
        }
        piv = std::move(v);
        return;
      }
      Row& p = *piv;
      if (mpz_divisible_p(v[c].get_mpz_t(), p[c].get_mpz_t())) {
        const mpz_class q = v[c] / p[c];
        sub_multiple(v, q, p, c);
        reduce_tail(v, c);
        continue;
      }
      // Unimodular 2x2 step: [s t; -b/g a/g] maps (a, b) to (g, 0).
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p[c].get_mpz_t(), v[c].get_mpz_t());
      const mpz_class a_g = p[c] / g;
      const mpz_class b_g = v[c] / g;
      Row new_p(n), new_v(n);
      for (std::size_t j = c; j < n; ++j) {
        new_p[j] = s * p[j] + t * v[j];
        new_v[j] = a_g * v[j] - b_g * p[j];
      }
      p = std::move(new_p);
      v = std::move(new_v);
      reduce_tail(p, c);
      reduce_tail(v, c);
    }
  }

  std::vector<Row> rows() const {
    std::vector<Row> out;
    for (const auto& p : pivots_) {
      if (p) out.push_back(*p);
    }
    return out;
  }

 private:
  void reduce_tail(Row& r, std::size_t c) const {
    if (!modulus_) return;
    for (std::size_t j = c + 1; j < r.size(); ++j) reduce_mod(r[j], *modulus_);
  }

  std::vector<std::optional<Row>> pivots_;
  const mpz_class* modulus_;
};

std::optional<std::pair<std::size_t, std::size_t>> min_abs_entry(const std::vector<Row>& a,
                                                                 std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  mpz_class best_abs;
  for (std::size_t i = t; i < a.size(); ++i) {
    for (std::size_t j = t; j < a[i].size(); ++j) {
      if (sgn(a[i][j]) == 0) continue;
      if (!best || mpz_cmpabs(a[i][j].get_mpz_t(), best_abs.get_mpz_t()) < 0) {
        best = {i, j};
        best_abs = abs(a[i][j]);
        if (best_abs == 1) return best;
      }
    }
  }
  return best;
}

void swap_columns(std::vector<Row>& a, std::size_t x, std::size_t y) {
  if (x == y) return;
  for (auto& r : a) std::swap(r[x], r[y]);
}

// Min-pivot Smith reduction of the rows in `a`. With a modulus D the rows
// stand for the lattice they span plus D * Z^cols; entries are kept reduced
// mod D and every invariant is taken as a gcd with D.
SmithForm diagonalize(std::vector<Row> a, std::size_t cols, const mpz_class* modulus) {
  auto reduce = [&](mpz_class& x) {
    if (modulus) reduce_mod(x, *modulus);
  };
  SmithForm out;
  const std::size_t limit = modulus ? cols : std::min(a.size(), cols);
  for (std::size_t t = 0; t < limit; ++t) {
    const auto first = min_abs_entry(a, t);
    if (!first) {
      if (modulus) {
        for (; t < limit; ++t) out.diagonal.push_back(*modulus);
        out.rank = cols;
      }
      return out;
    }
    for (;;) {
      const auto pos = min_abs_entry(a, t);
      std::swap(a[t], a[pos->first]);
      swap_columns(a, t, pos->second);
      const mpz_class pivot = a[t][t];

      bool clean = true;
      for (std::size_t i = t + 1; i < a.size(); ++i) {
        if (sgn(a[i][t]) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), pivot.get_mpz_t());
        sub_multiple(a[i], q, a[t], t);
        for (std::size_t j = t; j < a[i].size(); ++j) reduce(a[i][j]);
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a[t].size(); ++j) {
        if (sgn(a[t][j]) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), pivot.get_mpz_t());
        for (auto& r : a) {
          if (sgn(r[t]) != 0) {
            mpz_submul(r[j].get_mpz_t(), q.get_mpz_t(), r[t].get_mpz_t());
            reduce(r[j]);
          }
        }
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot row and column are clear; enforce divisibility of the rest.
      bool divisible = true;
      for (std::size_t i = t + 1; i < a.size() && divisible; ++i) {
        for (std::size_t j = t + 1; j < a[i].size(); ++j) {
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), pivot.get_mpz_t())) {
            for (std::size_t k = t; k < a[t].size(); ++k) {
              a[t][k] += a[i][k];
              reduce(a[t][k]);
            }
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    mpz_class d = abs(a[t][t]);
    if (modulus) d = gcd(d, *modulus);
    out.diagonal.push_back(std::move(d));
    ++out.rank;
  }
  return out;
}

// Rows whose reductions modulo a large prime are linearly independent; such
// rows are independent over Q as well.
constexpr std::uint64_t kRankPrime = (std::uint64_t{1} << 61) - 1;

__extension__ using Wide = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<Wide>(a) * b % kRankPrime);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e != 0; e >>= 1U, a = mul_mod(a, a)) {
    if (e & 1U) r = mul_mod(r, a);
  }
  return r;
}

std::vector<std::size_t> independent_rows_mod_p(const IntMatrix& m) {
  const std::size_t n = m.cols();
  std::vector<std::vector<std::uint64_t>> pivots(n);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < m.rows() && chosen.size() < n; ++i) {
    std::vector<std::uint64_t> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = mpz_fdiv_ui(m.at(i, j).get_mpz_t(), kRankPrime);
    for (std::size_t c = 0; c < n; ++c) {
      if (v[c] == 0) continue;
      if (pivots[c].empty()) {
        const std::uint64_t inv = pow_mod(v[c], kRankPrime - 2);
        for (auto& e : v) e = mul_mod(e, inv);
        pivots[c] = std::move(v);
        chosen.push_back(i);
        break;
      }
      const std::uint64_t f = v[c];
      for (std::size_t j = c; j < n; ++j) {
        v[j] = (v[j] + kRankPrime - mul_mod(f, pivots[c][j])) % kRankPrime;
      }
    }
  }
  return chosen;
}

// Fraction-free (Bareiss) determinant.
mpz_class determinant(std::vector<Row> a) {
  const std::size_t n = a.size();
  mpz_class prev = 1;
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t i = k + 1;
      while (i < n && sgn(a[i][k]) == 0) ++i;
      if (i == n) return 0;
      std::swap(a[k], a[i]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i][j] * a[k][k];
        mpz_submul(t.get_mpz_t(), a[i][k].get_mpz_t(), a[k][j].get_mpz_t());
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return negate ? mpz_class(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  // Full column rank: the lattice contains det(B) * Z^cols for any square
  // basis B of independent rows, so all arithmetic can run modulo det(B).
  std::optional<mpz_class> modulus;
  if (m.cols() > 0) {
    const auto chosen = independent_rows_mod_p(m);
    if (chosen.size() == m.cols()) {
      std::vector<Row> square;
      for (std::size_t i : chosen) {
        const auto r = m.row(i);
        square.emplace_back(r.begin(), r.end());
      }
      modulus = abs(determinant(std::move(square)));
      if (*modulus == 0) throw InternalError("independent rows with zero determinant");
    }
  }
  const mpz_class* mod = modulus ? &*modulus : nullptr;
  EchelonLattice lattice(m.cols(), mod);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    lattice.insert(Row(r.begin(), r.end()));
  }
  return diagonalize(lattice.rows(), m.cols(), mod);
}

AbelianStructure cokernel_structure(const IntMatrix& m) {
  const SmithForm snf = smith_normal_form(m);
  std::vector<mpz_class> factors;
  for (const auto& d : snf.diagonal) {
    if (d > 1) factors.push_back(d);
  }
  return AbelianStructure(std::move(factors), m.cols() - snf.rank);
}

}  // namespace baerinv
