#include <gtest/gtest.h>

#include <random>

#include "heron/homspace.hpp"

using namespace heron;

namespace {

// Central difference of a quadratic form is exact: (Q(x + e) - Q(x - e)) / 2.
BigInt partial(const DiagonalForm& f, Point4 x, int i) {
  Point4 a = x, b = x;
  a[i] += 1;
  b[i] -= 1;
  return (f(a) - f(b)) / 2;
}

}  // namespace

TEST(Build, Examples) {
  auto c = new_curve(3, 1);
  auto h = build(c, make_pair(c, 2, 2));
  EXPECT_EQ(h.q1.str(), "2*x1^2 - 2*x2^2 - 18*x0^2");
  EXPECT_EQ(h.q2.str(), "2*x1^2 - 4*x3^2 + 2*x0^2");
  auto id = build(c, make_pair(c, 1, 1));
  EXPECT_EQ(id.q2.str(), "x1^2 - x3^2 + 2*x0^2");
  auto c2 = new_curve(15, 2);
  auto h2 = build(c2, make_pair(c2, 15, 15));
  // Q3 = Q2 - Q1; its negative is the same quadric written with C on the right.
  EXPECT_EQ(h2.q3.str(), "15*x2^2 - 225*x3^2 + 904*x0^2");
  EXPECT_EQ((h2.q1 - h2.q2).str(), "-15*x2^2 + 225*x3^2 - 904*x0^2");
}

TEST(Build, ThirdFormIsDifference) {
  for (uint64_t n : {3, 15, 79, 3689})
    for (int m : {1, 2}) {
      auto c = new_curve(n, m);
      for (auto& b1 : enumerate_qs2(c.ambient))
        for (auto& b2 : enumerate_qs2(c.ambient)) {
          auto h = build(c, {b1, b2});
          ASSERT_EQ(h.q3, h.q2 - h.q1);
          ASSERT_EQ(h.q3.coef[0], c.C());
        }
    }
}

TEST(Evaluate, Examples) {
  auto c = new_curve(3, 1);
  auto id = build(c, make_pair(c, 1, 1));
  EXPECT_EQ(evaluate(id, {0, 0, 0, 0}, 5, 1), std::make_pair(BigInt(0), BigInt(0)));
  EXPECT_EQ(evaluate(id, {0, 1, 1, 1}, 5, 1), std::make_pair(BigInt(0), BigInt(0)));
  auto h = build(c, make_pair(c, 2, 2));
  EXPECT_EQ(evaluate(h, {1, 1, 0, 1}, 3, 1), std::make_pair(BigInt(2), BigInt(0)));
}

TEST(Evaluate, CompatibleWithReduction) {
  auto c = new_curve(391, 3);
  std::mt19937_64 rng(11);
  auto all = enumerate_qs2(c.ambient);
  for (int i = 0; i < 300; ++i) {
    auto h = build(c, {all[rng() % all.size()], all[rng() % all.size()]});
    Point4 x;
    for (auto& xi : x) xi = BigInt(int64_t(rng() % 100000) - 50000);
    for (uint64_t l : {2, 3, 17, 23}) {
      auto [a, b] = evaluate(h, x, l, 6);
      auto [a3, b3] = evaluate(h, x, l, 3);
      BigInt m3 = ipow(l, 3);
      ASSERT_EQ(a % m3, a3);
      ASSERT_EQ(b % m3, b3);
    }
  }
}

TEST(Evaluate, IdentityPairHasRationalPoint) {
  for (uint64_t n : {3, 15, 209, 6545})
    for (int m = 1; m <= 6; ++m) {
      auto c = new_curve(n, m);
      auto h = build(c, make_pair(c, 1, 1));
      EXPECT_EQ(h.q1({0, 1, 1, 1}), 0);
      EXPECT_EQ(h.q2({0, 1, 1, 1}), 0);
    }
}

TEST(Jacobian, Example) {
  auto c = new_curve(3, 1);
  auto h = build(c, make_pair(c, 1, 1));
  auto J = jacobian(h, {0, 1, 0, 1});
  // x0 = 0 kills the x0 column: rows (0,2,0,0) and (0,2,0,-2).
  EXPECT_EQ(J.rows[0], (std::array<BigInt, 4>{0, 2, 0, 0}));
  EXPECT_EQ(J.rows[1], (std::array<BigInt, 4>{0, 2, 0, -2}));
  EXPECT_EQ(J.minor(1, 3), -4);
  EXPECT_EQ(jacobian_minor_valuation(h, {0, 1, 0, 1}, 7), 0);
  EXPECT_EQ(jacobian_minor_valuation(h, {0, 1, 0, 1}, 2), 2);
  EXPECT_FALSE(jacobian_minor_valuation(h, {0, 0, 0, 0}, 7).has_value());
}

TEST(Jacobian, AgreesWithFiniteDifferences) {
  auto c = new_curve(79, 1);
  auto all = enumerate_qs2(c.ambient);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    auto h = build(c, {all[rng() % all.size()], all[rng() % all.size()]});
    Point4 x;
    for (auto& xi : x) xi = BigInt(int64_t(rng() % 2001) - 1000);
    auto J = jacobian(h, x);
    for (int i = 0; i < 4; ++i) {
      ASSERT_EQ(J.rows[0][i], partial(h.q1, x, i));
      ASSERT_EQ(J.rows[1][i], partial(h.q2, x, i));
    }
  }
}

TEST(Jacobian, ScalingRaisesValuation) {
  auto c = new_curve(15, 1);
  auto all = enumerate_qs2(c.ambient);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    auto h = build(c, {all[rng() % all.size()], all[rng() % all.size()]});
    Point4 x;
    for (auto& xi : x) xi = BigInt(int64_t(rng() % 2001) - 1000);
    for (uint64_t l : {2, 3, 5, 113}) {
      auto e = jacobian_minor_valuation(h, x, l);
      Point4 y = x;
      for (auto& yi : y) yi *= l;
      auto f = jacobian_minor_valuation(h, y, l);
      if (!e) {
        ASSERT_FALSE(f);
        continue;
      }
      ASSERT_TRUE(f);
      ASSERT_GE(*f, *e + 1);
    }
  }
}

TEST(Jacobian, OnlyFirstColumnSurvives) {
  // x0 = x2 = x3 = 0: every minor involves a zero column, so all vanish.
  auto c = new_curve(3, 1);
  auto h = build(c, make_pair(c, 2, 2));
  EXPECT_FALSE(jacobian_minor_valuation(h, {0, 5, 0, 0}, 3).has_value());
}
