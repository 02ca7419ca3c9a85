#include <gtest/gtest.h>

#include "support.hpp"

using namespace chainmf;
using namespace chainmf::testing;

TEST(Factorization, BaseObjectsOverTwo) {
  ChainTower T({2});
  auto e0 = T.base_object();
  EXPECT_EQ(e0.rank1(), 0u);
  EXPECT_EQ(e0.rank0(), 1u);
  auto p = T.psi(e0);
  EXPECT_TRUE(is_valid(p));
  ASSERT_EQ(p.rank1(), 1u);
  ASSERT_EQ(p.rank0(), 1u);
  const auto& R = *p.ring();
  EXPECT_EQ(p.phi1()(0, 0), R.variable(0));
  EXPECT_EQ(p.phi0()(0, 0), R.variable(0));
  EXPECT_EQ(p.m1().twists[0], -R.variable_degree(0));
  EXPECT_TRUE(p.m0().twists[0].is_zero());
}

TEST(Factorization, PhiOverTwoTwo) {
  ChainTower T({2, 2});
  auto q = T.phi(T.base_object());
  EXPECT_TRUE(is_valid(q));
  const auto& R = *q.ring();
  EXPECT_EQ(q.phi0()(0, 0), R.variable(0) + R.variable(1, 2));
}

TEST(Factorization, CorruptedSquare) {
  ChainTower T({3});
  auto p = T.psi(T.base_object());
  PolyMatrix bad = p.phi0();
  bad(0, 0) = p.ring()->variable(0, 3);
  MatrixFactorization q(p.ring(), p.potential(), p.m1(), p.m0(), p.phi1(), bad);
  auto issues = validate(q);
  ASSERT_FALSE(issues.empty());
  bool square = false;
  for (const auto& i : issues) square = square || i.kind == "SquareMismatch";
  EXPECT_TRUE(square);
  EXPECT_TRUE(is_valid(MatrixFactorization::zero(p.ring(), p.potential())));
}

TEST(Factorization, ShiftConventions) {
  ChainTower T({2});
  auto p = T.psi(T.base_object());
  EXPECT_EQ(shift(p, 0), p);
  EXPECT_EQ(shift(p, 2), twist(p, p.potential_degree()));
  auto s = shift(p, 1);
  EXPECT_EQ(s.m1(), p.m0());
  EXPECT_EQ(s.m0(), p.m1().twisted(p.potential_degree()));
  EXPECT_EQ(s.phi1(), -p.phi0());
  EXPECT_EQ(s.phi0(), -p.phi1());
}

TEST(Factorization, TwistExamples) {
  ChainTower T({3});
  auto p = T.psi(T.base_object());
  const auto& R = *p.ring();
  EXPECT_EQ(twist(p, R.zero()), p);
  auto a = R.variable_degree(0), b = 2 * R.variable_degree(0);
  EXPECT_EQ(twist(twist(p, a), b), twist(p, a + b));
  EXPECT_EQ(T.psi_i(T.base_object(), 1), shift(twist(p, -R.variable_degree(0)), 1));
  EXPECT_EQ(T.psi_i(T.base_object(), 0), p);
  EXPECT_THROW(T.psi_i(T.base_object(), 2), IndexOutOfRange);
}

TEST(Factorization, DirectSum) {
  ChainTower T({2, 2});
  auto e0 = T.base_object();
  auto p = T.psi_i(T.psi(e0), 0), q = T.phi(e0);
  auto zero = MatrixFactorization::zero(p.ring(), p.potential());
  EXPECT_EQ(direct_sum(p, zero), p);
  EXPECT_TRUE(is_valid(direct_sum(p, q)));
  for (int l = -1; l <= 1; ++l) EXPECT_EQ(hom_dim(direct_sum(p, p), q, l), 2 * hom_dim(p, q, l));
}

TEST(Factorization, ConeExamples) {
  ChainTower T({2, 2});
  auto F = make_mf(T.psi(T.psi(T.base_object())));
  auto C = cone(identity_morphism(F));
  EXPECT_EQ(hom_dim(C, C, 0), 0u);
  auto Z = make_mf(MatrixFactorization::zero(F->ring(), F->potential()));
  auto K = cone(zero_morphism(Z, F));
  EXPECT_EQ(K, *F);
}

TEST(Factorization, TensorOfSquares) {
  GroupPresentation pres;
  pres.generator_count = 1;
  pres.relations = IntMatrix(0, 1);
  auto g = GradedGroup::from_presentation(pres, 0);
  auto x = g->generator(0);
  auto R = GradedRing::create({x, x}, 2 * x);
  auto X = R->variable(0), Y = R->variable(1);
  auto rank11 = [&](const Polynomial& v) {
    PolyMatrix a(1, 1, 2), b(1, 1, 2);
    a(0, 0) = v;
    b(0, 0) = v;
    return MatrixFactorization(R, v * v, FreeModule{{-x}}, FreeModule{{R->zero()}}, a, b);
  };
  auto A = rank11(X), B = rank11(Y);
  ASSERT_TRUE(is_valid(A));
  auto AB = tensor(A, B);
  EXPECT_EQ(AB.rank1(), 2u);
  EXPECT_EQ(AB.rank0(), 2u);
  EXPECT_EQ(AB.potential(), X * X + Y * Y);
  EXPECT_TRUE(is_valid(AB));
  auto unit = tensor_unit(R);
  EXPECT_EQ(tensor(A, unit), A);
  auto Z = MatrixFactorization::zero(R, Polynomial(2));
  EXPECT_TRUE(tensor(Z, A).is_zero_object());
}

TEST(Factorization, MorphismBasics) {
  ChainTower T({3});
  auto F = make_mf(T.psi(T.base_object()));
  auto id = identity_morphism(F);
  auto m = compose(id, id);
  EXPECT_EQ(m, id);
  EXPECT_TRUE(is_valid(id));
  auto G = make_mf(T.psi_i(T.base_object(), 1));
  EXPECT_TRUE(is_null_homotopic(zero_morphism(F, G)));
  EXPECT_FALSE(is_null_homotopic(id));
}

// Randomized engine properties; each runs 200+ cases.
class EngineProperty : public ::testing::TestWithParam<int> {};

TEST_P(EngineProperty, Holds) {
  const auto k = static_cast<std::size_t>(GetParam());
  const auto r = property_functions().at(k)(20261016 + k, 220);
  EXPECT_GE(r.cases, 200u) << r.name;
  EXPECT_TRUE(r.failures.empty()) << r.name << ": " << (r.failures.empty() ? "" : r.failures.front());
}

INSTANTIATE_TEST_SUITE_P(All, EngineProperty, ::testing::Range(0, 6));
