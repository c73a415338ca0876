#include <gtest/gtest.h>

#include "skl/asymptotics.hpp"

using namespace skl::as;

TEST(Bessel, SmallCases) {
  EXPECT_EQ(bessel_J(0, 0), 1);
  EXPECT_EQ(bessel_J(3, 0), 0);
  EXPECT_NEAR(bessel_J(1, 1), bessel_J_series(1, 1), 1e-12);
  EXPECT_NEAR(bessel_J(0, 1), 0.76519768655796655, 1e-14);
  // J_{k-1}(x) << 2^{-k} x for x <= k/3
  EXPECT_LE(std::fabs(bessel_J(39, 10)), std::ldexp(10.0, -40));
  EXPECT_LE(std::fabs(bessel_J_table(39, 10)[39]), std::ldexp(10.0, -40));
}

TEST(Bessel, NonIntegerOrder) {
  EXPECT_NEAR(bessel_J(0.5, 2), std::sqrt(2 / (kPi * 2)) * std::sin(2.0), 1e-12);
  for (double l : {0.5, 2.5, 7.3, 40.7})
    for (double x : {0.3, 7.0, 55.0}) EXPECT_NEAR(bessel_J(l, x), std::cyl_bessel_j(l, x), 1e-12) << l << " " << x;
}

TEST(Bessel, QuadratureAgainstRecurrence) {
  for (double x : {0.5, 5.0, 100.0, 1000.0, 20000.0}) {
    int top = 700;
    auto t = bessel_J_table(top, x);
    for (int l : {0, 1, 7, 150, 333, 600}) EXPECT_NEAR(bessel_J(l, x), t[l], 1e-10) << l << " " << x;
  }
  for (int l : {0, 3, 20})
    for (double x : {0.1, 1.0, 4.0}) EXPECT_NEAR(bessel_J_table(l, x)[l], bessel_J_series(l, x), 1e-14);
}

TEST(Bessel, RecurrenceKeepsRelativeAccuracy) {
  // J_60(5) by the ascending series
  double s = bessel_J_series(60, 5), r = bessel_J_table(60, 5)[60];
  EXPECT_GT(s, 0);
  EXPECT_NEAR(r / s, 1, 1e-12);
}

TEST(Bessel, Envelope) {
  EXPECT_THROW(bessel_J(2e4, 1), std::domain_error);
  EXPECT_THROW(bessel_J(1, 2e7), std::domain_error);
  EXPECT_THROW(bessel_J(-1, 1), std::domain_error);
}

TEST(Weight, BumpAndDerivatives) {
  BumpWeight w(100);
  EXPECT_EQ(w(100), 0);
  EXPECT_EQ(w(200), 0);
  EXPECT_DOUBLE_EQ(w(150), 1);
  auto d = w.derivatives(150, 4);
  EXPECT_NEAR(d[1], 0, 1e-15);
  // w'' at the centre: t = (2x - 3K)/K, w = exp(-t^2 - ...) so w'' = -2 (2/K)^2
  EXPECT_NEAR(d[2], -2 * 4.0 / (100 * 100), 1e-12);
  // finite differences away from the centre
  double x = 130, h = 1e-3;
  auto e = w.derivatives(x, 3);
  EXPECT_NEAR(e[1], (w(x + h) - w(x - h)) / (2 * h), 1e-8);
  EXPECT_NEAR(e[2], (w(x + h) - 2 * w(x) + w(x - h)) / (h * h), 1e-6);
  auto C = w.derivative_constants(6);
  EXPECT_NEAR(C[0], 1, 1e-6);
  for (int j = 1; j <= 6; ++j) EXPECT_GT(C[j], 0);
  // constants in units of K^{-j} do not depend on K
  auto C2 = BumpWeight(400).derivative_constants(6);
  for (int j = 0; j <= 6; ++j) EXPECT_NEAR(C2[j] / C[j], 1, 1e-3) << j;
}

TEST(Weight, CheckTransform) {
  BumpWeight w(32);
  // v = 0: sqrt(2/pi) int w
  double integral = 0;
  for (int i = 1; i < 20000; ++i) integral += w(32 + 32.0 * i / 20000);
  integral *= 32.0 / 20000;
  EXPECT_NEAR(w.check(0).real(), std::sqrt(2 / kPi) * integral, 1e-10);
  EXPECT_NEAR(w.check(0).imag(), 0, 1e-12);
  // w-hat(0) = int w
  EXPECT_NEAR(w.hat_neg(0).real(), integral, 1e-9);
}

TEST(SingleBessel, ExponentiallySmallBeforeSumming) {
  for (double K : {128.0, 256.0}) {
    BumpWeight w(K);
    EXPECT_LT(std::fabs(single_bessel_sum(0, K / 200, w).direct), 1e-20);
    EXPECT_LT(std::fabs(single_bessel_sum(2, K / 200, w).direct), 1e-20);
  }
}

TEST(SingleBessel, ResidualAtCentre) {
  for (double K : {128.0, 256.0}) {
    BumpWeight w(K);
    for (int a : {0, 2}) {
      auto s = single_bessel_sum(a, 1.5 * K, w);
      EXPECT_LE(s.scaled, 100) << K << " " << a;
      EXPECT_NEAR(s.direct, 1, 2e-3);
    }
    EXPECT_LE(single_bessel_alternating_residual(1.5 * K, w) * K * K / 1.5, 100);
  }
  EXPECT_THROW(single_bessel_sum(1, 10, BumpWeight(10)), std::invalid_argument);
}

TEST(SingleBessel, ResidualShrinksWithK) {
  // fixed x/K: the residual falls with K, though not as a clean power at
  // these sizes
  for (double r : {1.0, 1.5, 3.0}) {
    double a = single_bessel_sum(0, r * 64, BumpWeight(64)).residual;
    double b = single_bessel_sum(0, r * 256, BumpWeight(256)).residual;
    EXPECT_LT(b, a / 4) << r;
  }
}

TEST(DoubleBessel, Regimes) {
  BesselSumParams p(10, 50, 64);
  EXPECT_DOUBLE_EQ(p.gamma, 1.25);
  EXPECT_TRUE(p.gamma_ge_1);
  EXPECT_THROW(s_asymptotic(p, BumpWeight(64)), std::domain_error);
  BesselSumParams q(0.5, 50, 128);
  EXPECT_TRUE(q.exponentially_small);
  EXPECT_FALSE(q.main_term());
  EXPECT_TRUE(params_for(128, 0.5).main_term());
  EXPECT_THROW(BesselSumParams(0, 1, 1), std::domain_error);
}

TEST(DoubleBessel, ExponentiallySmall) {
  BumpWeight w(128);
  for (auto [a, b] : {std::pair{128.0 / 200, 128.0}, {128.0, 128.0 / 200}, {0.5, 0.5}}) {
    BesselSumParams p(a, b, 128);
    EXPECT_LE(std::abs(s_direct(p, w)), std::exp(-64.0)) << a << " " << b;
  }
}

TEST(DoubleBessel, EmptySupport) {
  BumpWeight w(0.4);  // (0.4, 0.8) holds no integer
  EXPECT_EQ(std::abs(s_direct(BesselSumParams(3, 2, 0.4), w)), 0);
}

TEST(DoubleBessel, PurelyImaginaryAndRouteIndependent) {
  BumpWeight w(64);
  auto p = params_for(64, 0.5);
  cd a = s_direct(p, w), b = s_direct(p, w, BesselRoute::Quadrature);
  EXPECT_EQ(a.real(), 0);
  EXPECT_NEAR(a.imag(), b.imag(), 1e-12);
}

TEST(DoubleBessel, TaylorConstants) {
  EXPECT_EQ(taylor_a(0, 1), cd(1, 0));
  EXPECT_EQ(taylor_a(0, -1), cd(1, 0));
  EXPECT_NEAR(std::abs(taylor_a(1, -1) - cd(0, -2 * kPi)), 0, 1e-15);
  EXPECT_NEAR(std::abs(taylor_a(2, 1) - cd(-2 * kPi * kPi, 0)), 0, 1e-13);
  EXPECT_NEAR(std::abs(asym_c1() - 1 / (2 * kPi)), 0, 1e-16);
}

// The residual oscillates in K, so growth is judged on its envelope over
// each octave [K, 2K) rather than at single points.
TEST(DoubleBessel, AsymptoticAgainstDirect) {
  for (double g : {0.2, 0.5, 0.8}) {
    std::vector<double> C;
    for (double K : {64.0, 128.0, 256.0}) {
      double c = 0;
      for (int i = 0; i < 16; ++i) {
        double k = K * (1 + i / 16.0);
        BumpWeight w(k);
        auto p = params_for(k, g);
        cd a = s_asymptotic(p, w);
        double r = std::abs(s_direct(p, w) - a);
        double bound = std::log(k) / k;
        EXPECT_LE(r, 10 * bound) << k << " " << g;
        c = std::max(c, r / bound);
        EXPECT_LE(std::abs(a), 2 * (p.beta / k) / std::sqrt(p.alpha));
      }
      C.push_back(c);
    }
    EXPECT_LE(C[1], C[0]) << g;
    EXPECT_LE(C[2], C[1]) << g;
  }
}

TEST(IK, VanishesAtAlphaZero) {
  BumpWeight w(64);
  auto v = ik_integral(0.1, 0, 1, w);
  EXPECT_LT(std::abs(v.integral), 1e-9);
  EXPECT_EQ(std::abs(v.expansion), 0);
}

TEST(IK, QuadratureMatchesBesselSeries) {
  BumpWeight w(64);
  for (double u : {0.01, 0.05, 0.3})
    for (int sg : {1, -1}) {
      auto v = ik_integral(u, 16, sg, w);
      EXPECT_LT(std::abs(v.integral - ik_integral_series(u, 16, sg, w)), 1e-9) << u << " " << sg;
    }
}

TEST(IK, ExpansionAgainstIntegral) {
  for (double K : {64.0, 128.0, 256.0}) {
    BumpWeight w(K);
    double worst = 0, small = 0;
    for (double u = 0.002; u < 0.25; u += 0.03) {
      auto v = ik_integral(u, K / 8, -1, w);
      worst = std::max(worst, std::abs(v.integral - v.expansion));
      auto s = ik_integral(u, K / 16, -1, w);
      small = std::max(small, std::abs(s.integral - s.expansion));
    }
    EXPECT_LE(worst * K, 50) << K;
    EXPECT_LT(small, 1e-6) << K;
  }
  // away from sin(4 pi u) ~ 0 the expansion's argument leaves the support
  BumpWeight w(128);
  auto v = ik_integral(0.3, 128, 1, w);
  EXPECT_EQ(std::abs(v.expansion), 0);
  EXPECT_LT(std::abs(v.integral), 1.0 / 128);
}

TEST(IK, TruncationOrder) {
  BumpWeight w(128);
  for (double u : {0.01, 0.03}) {
    cd a = ik_integral(u, 8, -1, w, 2).expansion, b = ik_integral(u, 8, -1, w, 4).expansion;
    EXPECT_LT(std::abs(a - b), 1.0 / 128);
    cd c = ik_integral(u, 8, -1, w, kTaylorJ).expansion, d = ik_integral(u, 8, -1, w, kTaylorJ + 2).expansion;
    EXPECT_LT(std::abs(c - d), 1.0 / 128);
  }
  EXPECT_THROW(ik_integral(0.1, 1, 0, w), std::invalid_argument);
}
