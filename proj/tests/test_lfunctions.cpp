#include <gtest/gtest.h>

#include "skl/cfkrs.hpp"
#include "skl/norm.hpp"

#include <boost/math/special_functions/gamma.hpp>

using namespace skl;
using namespace skl::lf;
using mf::Eigenform;

namespace {

// Forms for l = 12: f in S_22, g = Delta in S_12, tables long enough for
// the default norm computation.
struct Forms12 {
  size_t n;
  Eigenform f, g;
  Forms12() : n(norm_table_size(12, {})) {
    mf::FormCache fc(n);
    f = mf::eigenbasis(22, n, fc).at(0);
    g = mf::eigenbasis(12, n, fc).at(0);
  }
};

const Forms12& forms12() {
  static Forms12 F;
  return F;
}

const RSEvaluator& ev11() {
  static RSEvaluator ev(11);
  return ev;
}

// h_n for the variables (alpha^2, 1, beta^2) with e1 = e2 = t, e3 = 1
std::vector<Real> complete_h(const Real& t, int n) {
  std::vector<Real> h(n + 1, Real(0));
  h[0] = 1;
  for (int i = 1; i <= n; ++i) {
    h[i] = t * h[i - 1];
    if (i >= 2) h[i] -= t * h[i - 2];
    if (i >= 3) h[i] += h[i - 3];
  }
  return h;
}

}  // namespace

TEST(GL3, SchurPolynomialsAtPrimePowers) {
  const auto& g = forms12().g;
  GL3Coefficients G(g, 50);
  EXPECT_EQ(G.at(1, 1), 1);
  Sieve sv(50);
  for (size_t m1 = 1; m1 <= 50; ++m1)
    for (size_t m2 = 1; m2 <= 50; ++m2) {
      // multiplicative over primes, s_{(a+b, b)} at each prime
      Real expect = 1;
      size_t r1 = m1, r2 = m2;
      for (int64_t p = 2; p <= 50; ++p) {
        if (!is_prime(p)) continue;
        int a = 0, b = 0;
        while (r1 % p == 0) { r1 /= p; ++a; }
        while (r2 % p == 0) { r2 /= p; ++b; }
        if (!a && !b) continue;
        Real t = g.lam(p) * g.lam(p) - 1;
        auto h = complete_h(t, a + b + 2);
        Real s = h[a + b] * h[b] - (b ? h[a + b + 1] * h[b - 1] : Real(0));
        expect *= s;
      }
      ASSERT_LT(abs(G.at(m1, m2) - expect), Real(1e-40)) << m1 << "," << m2;
    }
  for (int64_t p : {2, 3, 5, 7}) {
    Real l2 = g.lam(p) * g.lam(p) - 1;
    EXPECT_LT(abs(G.at(p, 1) - l2), Real(1e-45));
    EXPECT_LT(abs(G.at(p, p) - (l2 * l2 - 1)), Real(1e-45));
  }
}

TEST(GL3, OutOfRangeThrows) {
  GL3Coefficients G(forms12().g, 20);
  EXPECT_THROW(G.at(21, 1), std::out_of_range);
  EXPECT_THROW(G.at1(0), std::out_of_range);
}

TEST(RankinSelberg, CoefficientsMatchFivefoldExpansion) {
  const auto& F = forms12();
  size_t X = 3000;
  GL3Coefficients G(F.g, X);
  auto c = rs_coefficients(F.f, G, X);
  auto d = rs_coefficients_fivefold(F.f, F.g, X);
  EXPECT_EQ(c[1], 1);
  for (size_t n = 1; n <= X; ++n) ASSERT_LT(abs(c[n] - d[n]), Real(1e-40)) << n;
}

TEST(RankinSelberg, WeightFunction) {
  const auto& ev = ev11();
  EXPECT_EQ(RSEvaluator::H(Cplx<Real>(Real(0))).re, 1);
  EXPECT_LT(abs(RSEvaluator::H(Cplx<Real>(Real(-1) / 4))), Real(1e-50));
  EXPECT_LT(abs(ev.gamma_ratio(Cplx<Real>(Real(0))).re - 1), Real(1e-50));

  // small y: V -> 1; the shifted contour is an independent route
  for (double y : {1e-4, 1e-2, 1.0}) {
    auto a = ev.V(Real(y)), b = ev.V_shifted(Real(y));
    EXPECT_LT(abs(a.value.re - b.value.re), Real(1e-20)) << y;
  }
  EXPECT_NEAR(ev.V(Real(1e-4)).value.re.convert_to<double>(), 1.0047886985385465, 1e-15);

  // finer grid and longer line
  RSConfig fine;
  fine.step = Real(1) / 128;
  fine.height = 24;
  RSEvaluator ev2(11, fine);
  for (double y : {1.0, 50.0, 1000.0, 12100.0}) {
    auto a = ev.V(Real(y)), b = ev2.V(Real(y));
    EXPECT_LT(abs(a.value.re - b.value.re), Real(1e-20)) << y;
    EXPECT_LT(a.err, Real(1e-20)) << y;
  }

  // far out, V is small and within its majorant
  double y = 100.0 * 121;
  double v = std::fabs(ev.V(Real(y)).value.re.convert_to<double>());
  EXPECT_LE(v, ev.V_bound(y));
  EXPECT_LT(v, 1e-6);
  double far = std::fabs(ev.V(Real(400.0 * 121)).value.re.convert_to<double>());
  EXPECT_LT(far, v);
}

TEST(RankinSelberg, CentralValueAtLevel12) {
  const auto& F = forms12();
  const auto& ev = ev11();
  RSValue r = rankin_central_value(F.f, F.g, ev);
  EXPECT_EQ(r.cutoff, 4840u);
  EXPECT_NEAR(r.value.convert_to<double>(), 0.701523735319464, 1e-9);
  EXPECT_GE(r.value + r.budget, 0);
  EXPECT_LT(r.budget, Real(1e-3));
  EXPECT_GT(r.divisor_tail, r.tail);
  // doubling X moves the value by less than the budget
  RSValue r2 = rankin_central_value(F.f, F.g, ev, 2 * r.cutoff, 2);
  EXPECT_LT(abs(r2.value - r.value), r.budget);
  EXPECT_THROW(rankin_central_value(F.g, F.f, ev), std::invalid_argument);
}

TEST(Sym2, SmoothedSumStable) {
  // Delta to 4 * 10^5 covers V = 10^4
  auto g = mf::eigenbasis(12, 400001).at(0);
  auto b = sym2_coefficients(g, 10);
  EXPECT_EQ(b[1], 1);
  LValue lo = sym2_at_1(g, Real(1000)), hi = sym2_at_1(g, Real(10000));
  EXPECT_LT(abs(lo.value - hi.value), Real(5e-4));
  EXPECT_LT(abs(lo.value - hi.value), lo.budget);
  LValue ex = sym2_at_1_extrapolated(g, Real(125));
  EXPECT_LT(abs(ex.value - hi.value), hi.budget);
  EXPECT_LT(ex.budget, Real(1e-9));
  EXPECT_NEAR(ex.value.convert_to<double>(), 0.631792945727883203, 1e-9);
  EXPECT_THROW(sym2_at_1(g, Real(20000)), std::out_of_range);
}

TEST(Sym2, ExtrapolationConsistentAcrossStart) {
  const auto& F = forms12();
  LValue a = sym2_at_1_extrapolated(F.f, Real(125)), b = sym2_at_1_extrapolated(F.f, Real(100));
  EXPECT_LT(abs(a.value - b.value), a.budget + b.budget);
  EXPECT_LT(a.budget, Real(1e-9));
  EXPECT_NEAR(a.value.convert_to<double>(), 0.940990211916949, 1e-9);
}

TEST(IncompleteGamma, RealArgumentsMatchBoost) {
  for (double a : {0.5, 3.0, 11.5, 21.0})
    for (double x : {0.1, 2.0, 10.0, 40.0, 90.0}) {
      double ref = boost::math::tgamma(a, x);
      double got = upper_gamma(Cplx<Real>(Real(a)), Real(x)).re.convert_to<double>();
      EXPECT_NEAR(got / ref, 1.0, 1e-13) << a << " " << x;
    }
}

TEST(IncompleteGamma, RecurrenceForComplexOrder) {
  using C = Cplx<Real>;
  for (double x : {0.3, 5.0, 30.0, 80.0}) {
    C a(Real(10.5), Real(0.3));
    C lhs = upper_gamma(a + C(Real(1)), Real(x));
    C rhs = a * upper_gamma(a, Real(x)) + cexp(a * log(Real(x)) - C(Real(x)));
    EXPECT_LT(abs(lhs - rhs) / abs(lhs), Real(1e-45)) << x;
  }
}

TEST(L32, ApproximateFunctionalEquationAgainstDirectSum) {
  const auto& F = forms12();
  LValue afe = l_f_at_32(F.f);
  EXPECT_LT(afe.budget, Real(1e-40));
  EXPECT_LT(afe.terms, 100u);
  EXPECT_NEAR(afe.value.convert_to<double>(), 0.641764737779063, 1e-14);
  LValue dir = l_f_at_32_direct(F.f, 40000);
  EXPECT_LT(abs(afe.value - dir.value), dir.budget);
  // Delta: sign +1 at weight 12
  LValue d = l_f_at_32(F.g);
  LValue dd = l_f_at_32_direct(F.g, 40000);
  EXPECT_LT(abs(d.value - dd.value), dd.budget);
}

TEST(L32, InverseAndEulerBound) {
  const auto& F = forms12();
  LValue L = l_f_at_32(F.f);
  LValue inv = inv_l_f_at_32(F.f, Real(400));
  EXPECT_LT(abs(inv.value * L.value - 1), inv.budget * L.value);
  // 1/L(3/2) = prod (1 - lambda(p) p^{-3/2} + p^{-3}) <= prod (1 + p^{-3/2})^2
  Real prod = 1;
  for (int64_t p = 2; p < 20000; ++p)
    if (is_prime(p)) prod *= pow(1 + pow(Real(p), Real(-1.5)), 2);
  EXPECT_LT(1 / L.value, prod);
  auto mu = mu_f(F.f, 12);
  EXPECT_EQ(mu[1], 1);
  EXPECT_EQ(mu[8], 0);
  EXPECT_LT(abs(mu[4] - 1), Real(1e-50));
  EXPECT_LT(abs(mu[6] - F.f.lam(2) * F.f.lam(3)), Real(1e-50));
}

TEST(AFE, SignDetection) {
  const auto& F = forms12();
  Degree2AFE good = standard_afe(F.f);
  EXPECT_EQ(good.sign(), -1);
  Cplx<Real> s(Real(1) / 2, Real(3) / 10);
  EXPECT_LT(good.sign_defect(s), Real(1e-40));
  Degree2AFE bad(F.f.lambda, 1 / (2 * pi()), Real(21) / 2, +1);
  EXPECT_GT(bad.sign_defect(s), Real(1e-3));
  Degree2AFE shortT(std::vector<Real>(F.f.lambda.begin(), F.f.lambda.begin() + 10), 1 / (2 * pi()), Real(21) / 2, -1);
  EXPECT_THROW(shortT.L(Real(3) / 2), std::out_of_range);
}

TEST(Twists, CentralValues) {
  const auto& F = forms12();
  TwistedValue a = twisted_central_value(F.f, -4), b = twisted_central_value(F.f, -3);
  EXPECT_LT(a.sign_defect, Real(1e-8));
  EXPECT_NEAR(a.value.convert_to<double>(), 4.62884353712841, 1e-12);
  EXPECT_NEAR(b.value.convert_to<double>(), 0.949137725103919, 1e-12);
  EXPECT_GE(a.value + a.budget, 0);
  EXPECT_THROW(twisted_central_value(F.f, -12), std::invalid_argument);
  EXPECT_THROW(twisted_central_value(F.f, 5), std::invalid_argument);
  // coefficients sharing a factor with D are dropped
  Degree2AFE t = twisted_afe(F.f, -4);
  Degree2AFE ref([&] {
    std::vector<Real> a(F.f.lambda.size(), Real(0));
    for (size_t n = 1; n < a.size(); n += 2) a[n] = ((n % 4) == 1 ? 1 : -1) * F.f.lambda[n];
    return a;
  }(), Real(4) / (2 * pi()), Real(21) / 2, 1);
  EXPECT_LT(abs(t.L(Real(1) / 2).value - ref.L(Real(1) / 2).value), Real(1e-40));
}

TEST(Norm, ConjectureConstants) {
  auto c = conjecture_constants();
  EXPECT_EQ(c.first.pi_power, 0);
  EXPECT_EQ(c.first.coeff, Rat(4, 5));
  EXPECT_EQ(c.second.coeff, Rat(2));
  auto r = v2() / (v1() * v1());
  EXPECT_EQ(r.coeff, Rat(1, 30));
  EXPECT_EQ(r.pi_power, 1);
  EXPECT_LT(abs(v1().value() - pi() / 3), Real(1e-50));
}

TEST(Norm, EmptySpacesGiveZero) {
  for (int ell : {10, 14}) {
    auto rep = norm_NFf(ell);
    ASSERT_EQ(rep.size(), 1u);
    EXPECT_EQ(rep[0].N, 0);
    EXPECT_EQ(rep[0].N_star, 0);
    EXPECT_TRUE(rep[0].rankin.empty());
  }
  EXPECT_THROW(norm_NFf(11), std::invalid_argument);
}

TEST(Norm, Level12) {
  auto rep = norm_NFf(12);
  ASSERT_EQ(rep.size(), 1u);
  const auto& r = rep[0];
  EXPECT_EQ(r.label, "22a");
  EXPECT_NEAR(r.N.convert_to<double>(), 0.8338, 1e-4);
  EXPECT_LT(r.budget, Real(1e-3));
  EXPECT_LT(abs(r.N - r.N_petersson_form), Real(1e-40));
  EXPECT_GT(r.N_star, 0);
  EXPECT_LT(abs(r.c_f * r.L32.value - r.c_f_prime), Real(1e-45));

  std::string row = norm_csv_row(r);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 7);
  std::string head = norm_csv_header();
  EXPECT_EQ(std::count(head.begin(), head.end(), ','), 7);
  EXPECT_EQ(row.rfind("12,22a,", 0), 0u);
  EXPECT_NE(row.find("e-01"), std::string::npos);
}

TEST(LocalFactors, BruteForceMatchesClosedForm) {
  auto th = satake_draws(20240611, 5);
  ASSERT_EQ(th.size(), 5u);
  EXPECT_EQ(th, satake_draws(20240611, 5));
  th.push_back(0.0);  // alpha_p = beta_p = 1
  for (long p : {2, 3, 5})
    for (double t : th)
      for (double a : {0.0, 0.01, 0.1}) {
        auto r = cfkrs_local_factor(p, t, a);
        EXPECT_LT(r.tail, 1e-20);
        EXPECT_NEAR(r.brute / r.closed, 1.0, 1e-12) << p << " " << t << " " << a;
      }
  EXPECT_THROW(cfkrs_local_factor(2, 0.5, -0.6), std::domain_error);
}

TEST(LocalFactors, IdentityWithEulerFactorsOfAForm) {
  // closed form = L_p(1+2a, sym^2 f) L_p(3/2+3a, f) / zeta_p(4+8a)
  const auto& f = forms12().f;
  double a = 0.01;
  for (long p = 2; p < 50; ++p) {
    if (!is_prime(p)) continue;
    double lp = f.lam(p).convert_to<double>();
    double theta = std::acos(lp / 2);
    auto r = cfkrs_local_factor(p, theta, a);
    double x = std::pow(double(p), -0.5 - a), x2 = x * x, x3 = x2 * x;
    double sym = 1 / ((1 - x2) * (1 - (lp * lp - 2) * x2 + x2 * x2));
    double std1 = 1 / (1 - lp * x3 + x3 * x3);
    double zeta = 1 / (1 - std::pow(x, 8));
    EXPECT_NEAR(r.brute, sym * std1 / zeta, 1e-12 * r.closed) << p;
  }
}

TEST(LocalFactors, DiagonalConstant) {
  auto m2 = m0_local_factor(2);
  EXPECT_LT(abs(m2.brute - Real(5) / 4), Real(1e-40));
  EXPECT_LT(abs(m2.closed - Real(5) / 4), Real(1e-50));
  EXPECT_LT(abs(m2.c12_brute - m2.c12_closed), Real(1e-40));
  for (long p : {3, 5, 7}) {
    auto m = m0_local_factor(p);
    EXPECT_LT(abs(m.brute - m.closed), Real(1e-12));
    EXPECT_LT(abs(m.c12_brute - m.c12_closed), Real(1e-40));
  }
  EXPECT_THROW(m0_local_factor(1), std::invalid_argument);
}
