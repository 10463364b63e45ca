#pragma once

// Fixed-seed generators and independent oracles shared by the test suites.
// Oracles deliberately avoid the library's own algorithms.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "baerinv/freegroup.hpp"
#include "baerinv/intlin.hpp"

namespace baerinv::testing {

inline constexpr int kPropertyCases = 120;

class Rng {
 public:
  explicit Rng(std::uint32_t seed) : engine_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return uniform(0, 1) == 1; }

  Letter letter() { return {Generator{static_cast<std::uint8_t>(uniform(0, 1))}, coin()}; }
  Generator generator() { return Generator{static_cast<std::uint8_t>(uniform(0, 1))}; }

  Word word(int max_len) {
    std::vector<Letter> letters;
    const int len = uniform(0, max_len);
    for (int i = 0; i < len; ++i) letters.push_back(letter());
    return Word(letters);
  }

  std::vector<Generator> letters(int count) {
    std::vector<Generator> out;
    for (int i = 0; i < count; ++i) out.push_back(generator());
    return out;
  }

  /// A left-normed commutator of `depth` random letters or short words.
  /// It lies in gamma_depth.
  CommutatorExpr nested(int depth) {
    std::vector<CommutatorExpr> parts;
    for (int i = 0; i < depth; ++i) parts.push_back(CommutatorExpr::leaf(nonempty_word(2)));
    return depth == 1 ? parts.front() : CommutatorExpr::left_normed(parts);
  }

  Word nonempty_word(int max_len) {
    for (;;) {
      Word w = word(max_len);
      if (!w.empty()) return w;
    }
  }

  std::mt19937& engine() { return engine_; }

 private:
  std::mt19937 engine_;
};

// ---------------------------------------------------------------------------
// Polynomial oracle: noncommutative polynomials as string -> coefficient maps.

using Poly = std::map<std::string, mpz_class>;

inline void poly_add(Poly& p, const std::string& m, const mpz_class& c) {
  mpz_class& slot = p[m];
  slot += c;
  if (slot == 0) p.erase(m);
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::size_t cap) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if (ma.size() + mb.size() > cap) continue;
      poly_add(out, ma + mb, ca * cb);
    }
  }
  return out;
}

/// Magnus image of a single letter: 1 + X, or sum_k (-X)^k for X^-1.
inline Poly poly_letter(const Letter& l, std::size_t cap) {
  const std::string v(1, l.gen.index == 0 ? 'X' : 'Y');
  Poly p{{"", 1}};
  if (!l.inverted) {
    p[v] = 1;
    return p;
  }
  std::string m;
  for (std::size_t k = 1; k <= cap; ++k) {
    m += v;
    p[m] = (k % 2 == 0) ? 1 : -1;
  }
  return p;
}

inline Poly poly_magnus(const Word& w, std::size_t cap) {
  Poly acc{{"", 1}};
  for (const Letter& l : w.letters()) acc = poly_mul(acc, poly_letter(l, cap), cap);
  return acc;
}

/// Smallest positive degree with a nonzero coefficient, or -1 if none.
inline int poly_class(const Poly& p) {
  int best = -1;
  for (const auto& [m, c] : p) {
    if (m.empty()) continue;
    if (best < 0 || static_cast<int>(m.size()) < best) best = static_cast<int>(m.size());
  }
  return best;
}

// ---------------------------------------------------------------------------
// Word oracle: reduction by repeated scanning, independent of push_reduced.

inline std::vector<Letter> reduce_by_scanning(std::vector<Letter> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].gen == w[i + 1].gen && w[i].inverted != w[i + 1].inverted) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i),
                w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Lyndon oracle: a word is Lyndon iff it is strictly smaller than each of its
// nontrivial rotations.

inline bool lyndon_by_rotation(const std::vector<std::uint8_t>& w) {
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::vector<std::uint8_t> rot(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    if (!(w < rot)) return false;
  }
  return !w.empty();
}

inline std::uint64_t count_lyndon_brute(int weight, int letters) {
  std::uint64_t count = 0;
  std::vector<std::uint8_t> w(static_cast<std::size_t>(weight), 0);
  for (;;) {
    if (lyndon_by_rotation(w)) ++count;
    int i = weight - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == letters - 1) {
      w[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return count;
}

// ---------------------------------------------------------------------------
// Integer linear algebra oracles on small matrices.

inline mpz_class det_by_expansion(const std::vector<std::vector<mpz_class>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  mpz_class total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) row.push_back(a[i][k]);
      }
      minor.push_back(std::move(row));
    }
    const mpz_class term = a[0][j] * det_by_expansion(minor);
    total += (j % 2 == 0) ? term : mpz_class(-term);
  }
  return total;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// gcd of all k x k minors.
inline mpz_class minor_gcd(const IntMatrix& m, std::size_t k) {
  mpz_class g = 0;
  for (const auto& rows : subsets(m.rows(), k)) {
    for (const auto& cols : subsets(m.cols(), k)) {
      std::vector<std::vector<mpz_class>> sub;
      for (std::size_t r : rows) {
        std::vector<mpz_class> row;
        for (std::size_t c : cols) row.push_back(m.at(r, c));
        sub.push_back(std::move(row));
      }
      g = gcd(g, det_by_expansion(sub));
    }
  }
  return g;
}

/// Rank as the largest k with a nonzero k x k minor.
inline std::size_t rank_by_minors(const IntMatrix& m) {
  std::size_t k = std::min(m.rows(), m.cols());
  while (k > 0 && minor_gcd(m, k) == 0) --k;
  return k;
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.uniform(-bound, bound);
  }
  return m;
}

}  // namespace baerinv::testing
