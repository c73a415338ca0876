#include <gtest/gtest.h>

#include "skl/expsums.hpp"

using namespace skl;

TEST(Kloosterman, SmallModuli) {
  EXPECT_EQ(es::kloosterman(1, 1, 1), 1);
  EXPECT_EQ(es::kloosterman(1, 1, 2), 1);
  // units 1..4 pair up as 1<->1, 2<->3, 4<->4
  Real im;
  Real s = es::kloosterman(1, 1, 5, &im);
  EXPECT_LT(abs(im), Real(1e-30));
  Real expect = 2 + 2 * cos(4 * pi() / 5);
  EXPECT_LT(abs(s - expect), Real(1e-40));
}

TEST(Kloosterman, Symmetric) {
  for (int c = 1; c <= 30; ++c)
    for (int m = 0; m <= 6; ++m)
      for (int n = 0; n <= 6; ++n)
        EXPECT_LT(abs(es::kloosterman(m, n, c) - es::kloosterman(n, m, c)), Real(1e-35));
}

TEST(Kloosterman, RamanujanSpecialCase) {
  // S(m,0;c) is the Ramanujan sum c_c(m)
  for (int c = 1; c <= 40; ++c)
    for (int m = 0; m <= 10; ++m)
      EXPECT_LT(abs(es::kloosterman(m, 0, c) - es::ramanujan_divisor(m, c)), Real(1e-35));
}

TEST(Weil, Trivial) {
  EXPECT_TRUE(es::weil_check(1, 1, 1));
  for (int p : {2, 3, 5, 7, 11, 13, 101, 199}) {
    Real s = es::kloosterman(1, 1, p);
    EXPECT_LE(abs(s), 2 * sqrt(Real(p)));
  }
}

TEST(Weil, SmallSweep) {
  for (int c = 1; c <= 60; ++c) {
    es::Modulus<Real> md(c);
    for (int m = 1; m <= 8; ++m)
      for (int n = 1; n <= 8; ++n) EXPECT_TRUE(es::weil_holds(md, m, n)) << m << " " << n << " " << c;
  }
}

TEST(GaussT, Examples) {
  EXPECT_EQ(es::gauss_T(1).brute, 1);
  EXPECT_EQ(es::gauss_T(4).brute, 4);
  EXPECT_EQ(es::gauss_T(2).brute, 0);
  EXPECT_EQ(es::gauss_T(9).brute, 18);
  EXPECT_EQ(es::gauss_T_closed(9), 18);
}

TEST(GaussT, DivisorRouteAgrees) {
  for (int c = 1; c <= 120; ++c) EXPECT_EQ(es::gauss_T_divisor(c), es::gauss_T_closed(c)) << c;
}

TEST(GaussT, PrimePowers) {
  for (int p : {2, 3, 5, 7}) {
    int64_t q = 1;
    for (int j = 1; j <= 4; ++j) {
      q *= p;
      if (q > 500) break;
      int64_t t = es::gauss_T_brute(q);
      if (j % 2) EXPECT_EQ(t, 0);
      else EXPECT_EQ(t, euler_phi(q) * isqrt(q));
    }
  }
}

TEST(GaussT, R2Independence) {
  EXPECT_TRUE(es::gauss_T_r2_independence(4, {1, 2, 3}));
  EXPECT_TRUE(es::gauss_T_r2_independence(2, {1, 2, 3}));
  EXPECT_EQ(es::gauss_T_shifted(2, 1, 1), 0);
  EXPECT_TRUE(es::gauss_T_r2_independence(7, {5}));
  EXPECT_TRUE(es::gauss_T_r2_independence(36, {1, 4, 6, 7}));
}

TEST(GaussT, Multiplicative) {
  for (int a = 1; a <= 20; ++a)
    for (int b = 1; a * b <= 120; ++b)
      if (gcd(a, b) == 1) EXPECT_EQ(es::gauss_T_brute(a * b), es::gauss_T_brute(a) * es::gauss_T_brute(b));
}

TEST(Ramanujan, Examples) {
  for (int c = 1; c <= 30; ++c) {
    EXPECT_EQ(es::ramanujan(0, c).brute, euler_phi(c));
    EXPECT_EQ(es::ramanujan(1, c).divisor, mobius(c));
    auto r = es::ramanujan(c + 3, c);
    EXPECT_EQ(r.brute, r.divisor);
  }
  // c_4(6) = e(3/2) + e(9/2) = -2
  EXPECT_EQ(es::ramanujan(6, 4).brute, -2);
  EXPECT_EQ(es::ramanujan(6, 4).divisor, -2);
  for (int n = 1; n < 20; n += 2) EXPECT_EQ(es::ramanujan(n, 4).brute, 0);
}

TEST(Kloosterman, TwistedMultiplicativity) {
  for (int c = 1; c <= 12; ++c)
    for (int q = 1; c * q <= 60; ++q) {
      if (gcd(c, q) != 1) continue;
      for (int m = 0; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
          int64_t qb = c == 1 ? 0 : inv_mod(q, c), cb = q == 1 ? 0 : inv_mod(c, q);
          Real lhs = es::kloosterman(m, n, c * q);
          Real rhs = es::kloosterman(qb * m, qb * n, c) * es::kloosterman(cb * m, cb * n, q);
          EXPECT_LT(abs(lhs - rhs), Real(1e-30));
        }
    }
}

TEST(Arith, Kronecker) {
  EXPECT_EQ(kronecker(-4, 3), -1);
  EXPECT_EQ(kronecker(-4, 5), 1);
  EXPECT_EQ(kronecker(-3, 2), -1);
  EXPECT_EQ(kronecker(-3, 7), 1);
  EXPECT_EQ(kronecker(-4, 2), 0);
  EXPECT_EQ(kronecker(5, 2), -1);
  EXPECT_EQ(kronecker(-7, 2), 1);
  EXPECT_TRUE(is_fundamental_discriminant(-4));
  EXPECT_TRUE(is_fundamental_discriminant(-3));
  EXPECT_FALSE(is_fundamental_discriminant(-12));
  EXPECT_TRUE(is_fundamental_discriminant(-8));
}

TEST(Arith, Bernoulli) {
  auto b = bernoulli_table(12);
  EXPECT_EQ(b[1], Rat(-1, 2));
  EXPECT_EQ(b[2], Rat(1, 6));
  EXPECT_EQ(b[4], Rat(-1, 30));
  EXPECT_EQ(b[6], Rat(1, 42));
  EXPECT_EQ(b[12], Rat(-691, 2730));
  EXPECT_EQ(b[7], 0);
}
