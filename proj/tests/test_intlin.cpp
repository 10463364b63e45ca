#include <gtest/gtest.h>

#include "baerinv/abelian.hpp"
#include "baerinv/errors.hpp"
#include "baerinv/intlin.hpp"
#include "support.hpp"

namespace baerinv {
namespace {

using testing::kPropertyCases;
using testing::Rng;

std::vector<mpz_class> z(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

IntMatrix scalar_identity(std::size_t n, long d) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = d;
  return m;
}

TEST(SmithNormalForm, Examples) {
  auto s1 = smith_normal_form({{2, 0}, {0, 2}});
  EXPECT_EQ(s1.diagonal, z({2, 2}));
  EXPECT_EQ(s1.rank, 2U);
  auto s2 = smith_normal_form({{1, 0}, {0, 6}});
  EXPECT_EQ(s2.diagonal, z({1, 6}));
  auto s3 = smith_normal_form({{2, 4}, {4, 2}});
  EXPECT_EQ(s3.diagonal, z({2, 6}));
  EXPECT_EQ(s3.rank, 2U);
}

TEST(SmithNormalForm, DegenerateShapes) {
  EXPECT_EQ(smith_normal_form(IntMatrix(0, 0)).rank, 0U);
  EXPECT_EQ(smith_normal_form(IntMatrix(0, 3)).rank, 0U);
  EXPECT_EQ(smith_normal_form(IntMatrix(3, 0)).rank, 0U);
  EXPECT_EQ(smith_normal_form(IntMatrix(2, 2)).rank, 0U);
  auto s = smith_normal_form({{2, 4, 6}, {1, 2, 3}});
  EXPECT_EQ(s.diagonal, z({1}));
  EXPECT_EQ(s.rank, 1U);
}

TEST(SmithNormalForm, LargeEntriesStayExact) {
  IntMatrix m(2, 2);
  m.at(0, 0) = mpz_class("123456789012345678901234567890");
  m.at(0, 1) = 6;
  m.at(1, 0) = 4;
  m.at(1, 1) = mpz_class("987654321098765432109876543210");
  const auto snf = smith_normal_form(m);
  ASSERT_EQ(snf.rank, 2U);
  EXPECT_EQ(snf.diagonal[0], testing::minor_gcd(m, 1));
  EXPECT_EQ(snf.diagonal[0] * snf.diagonal[1], abs(testing::det_by_expansion(
                                                    {{m.at(0, 0), m.at(0, 1)}, {m.at(1, 0), m.at(1, 1)}})));
}

TEST(CokernelStructure, Examples) {
  const auto free3 = cokernel_structure(IntMatrix(0, 3));
  EXPECT_TRUE(free3.invariant_factors().empty());
  EXPECT_EQ(free3.free_rank(), 3U);
  EXPECT_EQ(cokernel_structure(scalar_identity(5, 2)).to_string(), "Z_2^5");
  const auto z6 = cokernel_structure({{2, 0}, {0, 3}});
  EXPECT_EQ(z6.invariant_factors(), z({6}));
  EXPECT_EQ(z6.free_rank(), 0U);
}

TEST(AbelianStructure, RenderingAndValidation) {
  EXPECT_EQ(AbelianStructure().to_string(), "trivial");
  EXPECT_EQ(AbelianStructure::cyclic_power(3, 5).to_string(), "Z_3^5");
  EXPECT_EQ(AbelianStructure(z({2, 6}), 0).to_string(), "Z_2 + Z_6");
  EXPECT_EQ(AbelianStructure({}, 3).to_string(), "Z^3");
  EXPECT_THROW(AbelianStructure(z({3, 2}), 0), PreconditionError);
  EXPECT_THROW(AbelianStructure(z({1}), 0), PreconditionError);
  const auto orders = z({4, 6, 1, 0});
  EXPECT_EQ(AbelianStructure::from_orders(orders), AbelianStructure(z({2, 12}), 1));
}

TEST(IntlinProperties, MinorGcdOracle) {
  Rng rng(51);
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto rows = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto cols = static_cast<std::size_t>(rng.uniform(1, 4));
    const IntMatrix m = testing::random_matrix(rng, rows, cols, 6);
    const auto snf = smith_normal_form(m);
    ASSERT_EQ(snf.rank, testing::rank_by_minors(m));
    // Each prefix product is the gcd of the k x k minors.
    mpz_class prefix = 1;
    for (std::size_t k = 0; k < snf.rank; ++k) {
      prefix *= snf.diagonal[k];
      EXPECT_EQ(prefix, testing::minor_gcd(m, k + 1));
      EXPECT_GT(snf.diagonal[k], 0);
      if (k > 0) {
        EXPECT_TRUE(mpz_divisible_p(snf.diagonal[k].get_mpz_t(), snf.diagonal[k - 1].get_mpz_t()));
      }
    }
  }
}

TEST(IntlinProperties, UnimodularInvariance) {
  Rng rng(52);
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto rows = static_cast<std::size_t>(rng.uniform(1, 7));
    const auto cols = static_cast<std::size_t>(rng.uniform(1, 6));
    const IntMatrix m = testing::random_matrix(rng, rows, cols, 9);
    IntMatrix t = m;
    for (int op = 0; op < 12; ++op) {
      const int kind = rng.uniform(0, 3);
      if (kind == 0 && rows > 1) {  // add a multiple of one row to another
        const auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(rows) - 1));
        auto b = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(rows) - 2));
        if (b >= a) ++b;
        const long q = rng.uniform(-3, 3);
        for (std::size_t j = 0; j < cols; ++j) t.at(b, j) += q * t.at(a, j);
      } else if (kind == 1 && cols > 1) {  // add a multiple of one column to another
        const auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(cols) - 1));
        auto b = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(cols) - 2));
        if (b >= a) ++b;
        const long q = rng.uniform(-3, 3);
        for (std::size_t r = 0; r < rows; ++r) t.at(r, b) += q * t.at(r, a);
      } else if (kind == 2) {  // negate a row
        const auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(rows) - 1));
        for (std::size_t j = 0; j < cols; ++j) t.at(a, j) = -t.at(a, j);
      } else if (cols > 1) {  // swap two columns
        const auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(cols) - 1));
        const auto b = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(cols) - 1));
        for (std::size_t r = 0; r < rows; ++r) std::swap(t.at(r, a), t.at(r, b));
      }
    }
    const auto s1 = smith_normal_form(m), s2 = smith_normal_form(t);
    EXPECT_EQ(s1.diagonal, s2.diagonal);
    EXPECT_EQ(s1.rank, s2.rank);
  }
}

TEST(IntlinProperties, DuplicateAndZeroRowsDoNotChangeCokernel) {
  Rng rng(53);
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto rows = static_cast<std::size_t>(rng.uniform(0, 6));
    const auto cols = static_cast<std::size_t>(rng.uniform(1, 6));
    const IntMatrix m = testing::random_matrix(rng, rows, cols, 8);
    IntMatrix padded = m;
    const std::vector<mpz_class> zero(cols);
    padded.append_row(zero);
    for (std::size_t r = 0; r < rows; ++r) {
      if (rng.coin()) padded.append_row(m.row(r));
    }
    EXPECT_EQ(cokernel_structure(padded), cokernel_structure(m));
  }
}

TEST(IntlinProperties, TallRedundantFullRankLattices) {
  // Exercises the modular path: many rows, full column rank, known answer.
  Rng rng(54);
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 8));
    const long d = rng.uniform(1, 12);
    IntMatrix m(0, n);
    // Rows are d times random integer combinations, plus d * e_j.
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<mpz_class> row(n);
      row[j] = d;
      m.append_row(row);
    }
    for (int k = 0; k < 3 * static_cast<int>(n); ++k) {
      std::vector<mpz_class> row(n);
      for (auto& e : row) e = d * rng.uniform(-50, 50);
      m.append_row(row);
    }
    // Shuffle row order.
    std::vector<std::size_t> order(m.rows());
    for (std::size_t r = 0; r < order.size(); ++r) order[r] = r;
    std::shuffle(order.begin(), order.end(), rng.engine());
    IntMatrix shuffled(0, n);
    for (std::size_t r : order) shuffled.append_row(m.row(r));
    const auto got = cokernel_structure(shuffled);
    EXPECT_EQ(got, d == 1 ? AbelianStructure() : AbelianStructure::cyclic_power(d, n));
  }
}

TEST(IntlinProperties, ModularAndSquareOraclesAgree) {
  // Square full-rank matrices: product of the diagonal equals |det|.
  Rng rng(55);
  for (int i = 0; i < kPropertyCases; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const IntMatrix m = testing::random_matrix(rng, n + static_cast<std::size_t>(rng.uniform(0, 3)), n, 20);
    const auto snf = smith_normal_form(m);
    if (snf.rank != n) continue;
    mpz_class prod = 1;
    for (const auto& d : snf.diagonal) prod *= d;
    EXPECT_EQ(prod, testing::minor_gcd(m, n));
  }
}

}  // namespace
}  // namespace baerinv
