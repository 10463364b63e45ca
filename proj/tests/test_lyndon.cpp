#include <gtest/gtest.h>

#include "baerinv/errors.hpp"
#include "baerinv/intlin.hpp"
#include "baerinv/lyndon.hpp"
#include "support.hpp"

namespace baerinv {
namespace {

using testing::kPropertyCases;
using testing::Rng;

LyndonCommutator lc(std::initializer_list<std::uint8_t> letters) { return LyndonCommutator(Monomial(letters)); }

LieElement lie(int weight, std::initializer_list<std::pair<Monomial, long>> terms) {
  LieElement e;
  e.weight = weight;
  for (const auto& [m, c] : terms) e.add(m, c);
  return e;
}

TEST(WittRank, Examples) {
  EXPECT_EQ(witt_rank(1, 2), 2U);
  EXPECT_EQ(witt_rank(2, 2), 1U);
  EXPECT_EQ(witt_rank(5, 2), 6U);
  EXPECT_EQ(witt_rank(2, 3), 3U);
}

TEST(WittRank, MatchesRotationOracle) {
  for (int k = 1; k <= 4; ++k) {
    for (int w = 1; w <= (k == 4 ? 8 : 10); ++w) {
      EXPECT_EQ(witt_rank(w, k), testing::count_lyndon_brute(w, k)) << "w=" << w << " k=" << k;
    }
  }
}

TEST(EnumerateBasis, Examples) {
  const auto b2 = enumerate_basis(2, 2);
  ASSERT_EQ(b2.size(), 1U);
  EXPECT_EQ(b2[0].word_string(), "xy");
  EXPECT_EQ(b2[0].bracket_string(), "[x,y]");

  const auto b3 = enumerate_basis(3, 2);
  ASSERT_EQ(b3.size(), 2U);
  EXPECT_EQ(b3[0].word_string(), "xxy");
  EXPECT_EQ(b3[0].bracket_string(), "[x,[x,y]]");
  EXPECT_EQ(b3[1].word_string(), "xyy");
  EXPECT_EQ(b3[1].bracket_string(), "[[x,y],y]");

  const auto b1 = enumerate_basis(1, 2);
  ASSERT_EQ(b1.size(), 2U);
  EXPECT_EQ(b1[0].word_string(), "x");
  EXPECT_EQ(b1[1].word_string(), "y");
}

TEST(EnumerateBasis, CountsMatchWittAndAreLyndonInOrder) {
  for (int k = 1; k <= 4; ++k) {
    for (int w = 1; w <= 10; ++w) {
      if (k == 4 && w > 8) continue;  // 4^9 words; the Witt side is covered above
      const auto basis = enumerate_basis(w, k);
      EXPECT_EQ(basis.size(), witt_rank(w, k)) << "w=" << w << " k=" << k;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        EXPECT_TRUE(testing::lyndon_by_rotation(basis[i].word()));
        if (i > 0) {
          EXPECT_LT(basis[i - 1].word(), basis[i].word());
        }
      }
    }
  }
}

TEST(LyndonCommutator, RejectsNonLyndonWords) {
  EXPECT_THROW(lc({1, 0}), PreconditionError);
  EXPECT_THROW(lc({0, 0}), PreconditionError);
  EXPECT_NO_THROW(lc({0, 0, 1}));
}

TEST(LyndonCommutator, StandardFactorizationUsesLongestLyndonSuffix) {
  for (int w = 2; w <= 8; ++w) {
    for (const auto& b : enumerate_basis(w, 3)) {
      const auto [left, right] = b.factors();
      Monomial joined = left.word();
      joined.insert(joined.end(), right.word().begin(), right.word().end());
      EXPECT_EQ(joined, b.word());
      // No longer proper suffix is Lyndon.
      for (std::size_t start = 1; start < left.word().size(); ++start) {
        Monomial suffix(b.word().begin() + static_cast<std::ptrdiff_t>(start), b.word().end());
        EXPECT_FALSE(testing::lyndon_by_rotation(suffix));
      }
    }
  }
}

TEST(LieBracketExpansion, Examples) {
  EXPECT_EQ(lie_bracket_expansion(lc({0, 1})), lie(2, {{{0, 1}, 1}, {{1, 0}, -1}}));
  EXPECT_EQ(lie_bracket_expansion(lc({0, 0, 1})),
            lie(3, {{{0, 0, 1}, 1}, {{0, 1, 0}, -2}, {{1, 0, 0}, 1}}));
  EXPECT_EQ(lie_bracket_expansion(lc({0})), lie(1, {{{0}, 1}}));
}

TEST(LieCoordinates, Examples) {
  const auto c1 = lie_coordinates(lie(2, {{{0, 1}, 1}, {{1, 0}, -1}}));
  ASSERT_EQ(c1.size(), 1U);
  EXPECT_EQ(c1[0].first.bracket_string(), "[x,y]");
  EXPECT_EQ(c1[0].second, 1);

  const auto c2 = lie_coordinates(lie(3, {{{0, 0, 1}, 3}, {{0, 1, 0}, -6}, {{1, 0, 0}, 3}}));
  ASSERT_EQ(c2.size(), 1U);
  EXPECT_EQ(c2[0].first.bracket_string(), "[x,[x,y]]");
  EXPECT_EQ(c2[0].second, 3);

  try {
    lie_coordinates(lie(2, {{{0, 1}, 1}, {{1, 0}, 1}}));
    FAIL() << "expected an error";
  } catch (const InternalError& e) {
    EXPECT_STREQ(e.what(), "not a Lie element");
  }
}

TEST(LyndonProperties, Triangularity) {
  for (int k = 2; k <= 3; ++k) {
    for (int w = 1; w <= 7; ++w) {
      for (const auto& b : enumerate_basis(w, k)) {
        const auto e = lie_bracket_expansion(b);
        EXPECT_EQ(e.weight, w);
        ASSERT_TRUE(e.coefficients.contains(b.word()));
        EXPECT_EQ(e.coefficients.at(b.word()), 1);
        for (const auto& [m, c] : e.coefficients) {
          EXPECT_EQ(static_cast<int>(m.size()), w);
          if (m != b.word()) {
            EXPECT_GT(m, b.word());
          }
        }
      }
    }
  }
}

TEST(LyndonProperties, CoordinateRoundTrip) {
  Rng rng(31);
  for (int i = 0; i < kPropertyCases; ++i) {
    const int k = rng.uniform(2, 3);
    const int w = rng.uniform(2, k == 2 ? 8 : 6);
    const auto basis = enumerate_basis(w, k);
    std::vector<long> alpha(basis.size());
    LieElement sum;
    sum.weight = w;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      alpha[j] = rng.uniform(-4, 4);
      if (alpha[j] == 0) continue;
      for (const auto& [m, c] : lie_bracket_expansion(basis[j]).coefficients) {
        sum.add(m, c * alpha[j]);
      }
    }
    const auto coords = lie_coordinates(sum);
    std::size_t nonzero = 0;
    for (long a : alpha) nonzero += a != 0 ? 1 : 0;
    ASSERT_EQ(coords.size(), nonzero);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (alpha[j] == 0) continue;
      EXPECT_EQ(coords[pos].first, basis[j]);
      EXPECT_EQ(coords[pos].second, alpha[j]);
      ++pos;
    }
  }
}

TEST(LyndonProperties, ExpansionsSpanLatticeOfWittRank) {
  for (int w = 1; w <= 8; ++w) {
    const auto basis = enumerate_basis(w, 2);
    const std::size_t cols = std::size_t{1} << w;
    IntMatrix m(0, cols);
    for (const auto& b : basis) {
      std::vector<mpz_class> row(cols);
      for (const auto& [mono, c] : lie_bracket_expansion(b).coefficients) {
        std::size_t idx = 0;
        for (std::uint8_t l : mono) idx = (idx << 1U) | l;
        row[idx] = c;
      }
      m.append_row(row);
    }
    const auto snf = smith_normal_form(m);
    EXPECT_EQ(snf.rank, witt_rank(w, 2)) << "w=" << w;
    // Triangularity with unit pivots makes the lattice saturated.
    for (const auto& d : snf.diagonal) EXPECT_EQ(d, 1);
  }
}

}  // namespace
}  // namespace baerinv
