#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "support.hpp"

using namespace chainmf;
using chainmf::testing::dense_det;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int spread) {
  std::uniform_int_distribution<int> d(-spread, spread);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

std::vector<std::vector<Rational>> to_rational(const IntMatrix& m) {
  std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = static_cast<long>(m(i, j));
  return out;
}

// gcd of all k x k minors
mpz_class determinantal_divisor(const IntMatrix& m, std::size_t k) {
  std::vector<std::size_t> rows(m.rows()), cols(m.cols());
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  mpz_class g = 0;
  std::vector<bool> rs(m.rows(), false), cs(m.cols(), false);
  std::fill(rs.begin(), rs.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::fill(cs.begin(), cs.end(), false);
    std::fill(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::vector<Rational>> sub;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!rs[i]) continue;
        sub.emplace_back();
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (cs[j]) sub.back().push_back(static_cast<long>(m(i, j)));
      }
      const Rational d = dense_det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_num_mpz_t());
    } while (std::prev_permutation(cs.begin(), cs.end()));
  } while (std::prev_permutation(rs.begin(), rs.end()));
  return g;
}

}  // namespace

TEST(Smith, SmallExamples) {
  auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(s.d, (IntMatrix{{1, 0}, {0, 6}}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{1}}).d, (IntMatrix{{1}}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}).d, (IntMatrix{{0, 0}, {0, 0}}));
}

TEST(Smith, RandomMatricesAgainstMinors) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 250; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix m = random_matrix(rng, r, c, 6);
    const auto s = smith_normal_form(m);
    ASSERT_EQ(s.u * m * s.v, s.d) << "trial " << trial;
    ASSERT_EQ(s.v * s.v_inverse, IntMatrix::identity(c));
    ASSERT_EQ(abs(dense_det(to_rational(s.u))), 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) ASSERT_EQ(s.d(i, j), 0);
    const auto diag = s.diagonal();
    mpz_class prev_divisor = 1;
    for (std::size_t k = 0; k < diag.size(); ++k) {
      ASSERT_GE(diag[k], 0);
      if (k + 1 < diag.size() && diag[k] != 0) ASSERT_EQ(diag[k + 1] % diag[k], 0);
      if (k + 1 < diag.size() && diag[k] == 0) ASSERT_EQ(diag[k + 1], 0);
      const mpz_class dk = determinantal_divisor(m, k + 1);
      if (dk == 0) {
        ASSERT_EQ(diag[k], 0);
        prev_divisor = 0;
        continue;
      }
      ASSERT_EQ(mpz_class(static_cast<long>(diag[k])) * prev_divisor, dk) << "trial " << trial;
      prev_divisor = dk;
    }
  }
}

TEST(Grading, ChainTwoTwo) {
  auto g = build_maximal_grading({2, 2});
  EXPECT_EQ(g.group->rank(), 1u);
  EXPECT_TRUE(g.group->torsion_invariants().empty());
  EXPECT_EQ(g.variable_degrees[0].coords(), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(g.variable_degrees[1].coords(), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(g.potential_degree.coords(), (std::vector<std::int64_t>{4}));
  EXPECT_EQ(free_weight(g.variable_degrees[0]), Rational(1, 2));
  EXPECT_EQ(free_weight(g.variable_degrees[1]), Rational(1, 4));
  EXPECT_EQ(free_weight(g.potential_degree), 1);
  EXPECT_EQ(free_weight(g.group->zero()), 0);
}

TEST(Grading, EmptyAndSingle) {
  auto g0 = build_maximal_grading({});
  EXPECT_EQ(g0.group->rank(), 1u);
  EXPECT_EQ(g0.potential_degree.coords(), (std::vector<std::int64_t>{1}));
  auto g1 = build_maximal_grading({2});
  EXPECT_EQ(g1.variable_degrees[0].coords(), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(g1.potential_degree.coords(), (std::vector<std::int64_t>{2}));
}

TEST(Grading, TorsionAppearsForLongerChains) {
  // |L / Z f| equals the product of the exponents; the torsion is what the free part misses.
  for (const auto& a : std::vector<std::vector<int>>{{2, 2}, {3, 2}, {2, 2, 2}, {3, 3}, {2, 3, 4}}) {
    auto g = build_maximal_grading(a);
    EXPECT_EQ(g.group->rank(), 1u);
    std::int64_t prod = 1, tors = 1;
    for (int x : a) prod *= x;
    for (auto t : g.group->torsion_invariants()) tors *= t;
    EXPECT_EQ(g.potential_degree.coords()[0] * tors, prod);
    for (const auto& d : g.variable_degrees) EXPECT_GT(free_weight(d), 0);
  }
}

TEST(Grading, EmbedChasesGenerators) {
  auto g1 = build_maximal_grading({2});
  auto g2 = build_maximal_grading({2, 2});
  EXPECT_EQ(embed(g1.potential_degree, g2.group), g2.potential_degree);
  EXPECT_EQ(embed(g1.variable_degrees[0], g2.group), g2.variable_degrees[0]);
  EXPECT_TRUE(embed(g1.group->zero(), g2.group).is_zero());
  EXPECT_THROW(embed(g2.potential_degree, g1.group), GroupMismatch);
}

TEST(Grading, RejectsBadExponents) {
  EXPECT_THROW(build_maximal_grading({1, 2}), NonPositiveExponent);
  EXPECT_THROW(build_maximal_grading({2, 0}), NonPositiveExponent);
  EXPECT_THROW(build_maximal_grading({2, -3}), NonPositiveExponent);
}

TEST(Grading, GroupLaws) {
  auto g = build_maximal_grading({3, 2, 2});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int k = 0; k < 200; ++k) {
    GroupElement a = g.group->zero(), b = a;
    for (const auto& x : g.variable_degrees) {
      a += static_cast<std::int64_t>(d(rng)) * x;
      b += static_cast<std::int64_t>(d(rng)) * x;
    }
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(g.group->from_generator_coords(g.group->lift(a)), a);
    EXPECT_EQ(free_weight(a + b), free_weight(a) + free_weight(b));
  }
}
