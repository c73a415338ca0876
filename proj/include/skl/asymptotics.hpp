#pragma once

// Bessel functions of large order and sums of them over the weight, against
// the stationary phase formulas they should satisfy. Double precision
// throughout: the quantities compared are O(1) with O(1/K) residuals.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace skl::as {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

inline cd e1(double x) { return std::polar(1.0, 2 * kPi * x); }  // e(x)

// ---------------------------------------------------------------- Bessel J

struct BesselValue {
  double value = 0;
  double change = 0;  // |last - previous| refinement
  int nodes = 0;
};

// J_l(x) from (1/2pi) int_0^{2pi} cos(l t - x sin t) dt. For integer l the
// integrand is periodic and the trapezoid rule aliases only J_{l +- mN}, so
// it is exact once N - l >> x; refined by doubling until two rules agree.
// Non-integer orders use Gauss-Kronrod on [0, pi] plus Schlaefli's term
// -(sin(l pi)/pi) int_0^inf exp(-x sinh s - l s) ds.
inline BesselValue bessel_J_quad(double l, double x, double tol = 1e-14) {
  if (l < 0 || x < 0) throw std::domain_error("bessel_J: need l >= 0 and x >= 0");
  if (l > 1e4 || x > 1e7) throw std::domain_error("bessel_J: outside l <= 1e4, x <= 1e7");
  if (x == 0) return {l == 0 ? 1.0 : 0.0, 0, 0};
  auto f = [&](double t) { return std::cos(l * t - x * std::sin(t)); };
  if (l != std::floor(l)) {
    namespace q = boost::math::quadrature;
    double err = 0;
    // split [0, pi] so each piece holds a bounded number of oscillations
    int pieces = 1 + static_cast<int>((l + x) / 8);
    double s = 0;
    for (int i = 0; i < pieces; ++i)
      s += q::gauss_kronrod<double, 61>::integrate(f, kPi * i / pieces, kPi * (i + 1) / pieces, 8, 1e-15, &err);
    auto g = [&](double t) { return std::exp(-x * std::sinh(t) - l * t); };
    double tail = q::exp_sinh<double>().integrate(g);
    return {s / kPi - std::sin(l * kPi) / kPi * tail, err, pieces * 61};
  }
  auto rule = [&](int n) {
    // symmetric about t = pi: half the nodes, end points halved
    double h = kPi / n, s = 0;
    for (int i = 0; i <= n; ++i) s += (i == 0 || i == n) ? f(i * h) / 2 : f(i * h);
    return s / n;
  };
  int n = static_cast<int>(std::ceil((l + x) / 2 + 30 + 4 * std::cbrt(x + l)));
  double prev = rule(n);
  for (int it = 0; it < 12; ++it) {
    n *= 2;
    double cur = rule(n);
    if (std::fabs(cur - prev) < tol) return {cur, std::fabs(cur - prev), n};
    prev = cur;
  }
  throw std::runtime_error("bessel_J: refinement did not converge");
}


// J_0(x) .. J_nmax(x) by Miller's backward recurrence, normalized with
// J_0 + 2 sum J_{2k} = 1. Keeps relative accuracy where J is tiny.
inline std::vector<double> bessel_J_table(int nmax, double x) {
  if (nmax < 0 || x < 0) throw std::domain_error("bessel_J_table: bad arguments");
  std::vector<double> J(nmax + 1, 0.0);
  if (x == 0) {
    J[0] = 1;
    return J;
  }
  int start = std::max(nmax, static_cast<int>(x)) + 40 + static_cast<int>(10 * std::cbrt(x + nmax + 1));
  start += start % 2;
  std::vector<long double> v(start + 2, 0.0L);
  v[start + 1] = 0;
  v[start] = 1e-300L;
  long double norm = 0;
  for (int n = start; n >= 1; --n) {
    v[n - 1] = 2.0L * n / x * v[n] - v[n + 1];
    if (std::fabs(v[n - 1]) > 1e300L) {
      for (int m = n - 1; m <= start; ++m) v[m] *= 1e-300L;
      norm *= 1e-300L;
    }
    if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2 * v[n - 1];
  }
  norm += v[0];
  for (int n = 0; n <= nmax; ++n) J[n] = static_cast<double>(v[n] / norm);
  return J;
}

// Ascending series, for small x only.
inline double bessel_J_series(int l, double x) {
  if (x == 0) return l == 0 ? 1 : 0;
  double term = std::exp(l * std::log(x / 2) - std::lgamma(l + 1.0)), s = 0;
  for (int m = 0; m < 200; ++m) {
    s += term;
    term *= -(x * x / 4) / ((m + 1.0) * (m + 1.0 + l));
    if (std::fabs(term) < 1e-18 * std::fabs(s)) break;
  }
  return s;
}

// The quadrature is accurate in absolute terms only; for integer order and
// x <= 2 the series has no cancellation and keeps relative accuracy.
inline double bessel_J(double l, double x) {
  if (l >= 0 && x > 0 && x <= 2 && l == std::floor(l) && l <= 1e4) return bessel_J_series(static_cast<int>(l), x);
  return bessel_J_quad(l, x).value;
}

// ------------------------------------------------------------ weight function

// w(x) = exp(1 - 1/(1 - t^2)), t = (2x - 3K)/K on (K, 2K), zero outside.
class BumpWeight {
 public:
  explicit BumpWeight(double K) : K_(K) {
    if (!(K > 0)) throw std::invalid_argument("BumpWeight: K must be positive");
  }
  double K() const { return K_; }

  double operator()(double x) const {
    double t = (2 * x - 3 * K_) / K_, q = 1 - t * t;
    if (q <= 0) return 0;
    return std::exp(1 - 1 / q);
  }

  // w, w', ..., w^{(m)} at x by Taylor arithmetic on the closed form.
  std::vector<double> derivatives(double x, int m) const {
    std::vector<double> d(m + 1, 0.0);
    double t0 = (2 * x - 3 * K_) / K_, q0 = 1 - t0 * t0;
    if (q0 <= 0 || 1 / q0 > 600) return d;
    // q(delta) = q0 - 2 t0 delta - delta^2 in delta = t - t0
    std::vector<double> r(m + 1, 0.0), phi(m + 1, 0.0), E(m + 1, 0.0);
    r[0] = 1 / q0;
    for (int n = 1; n <= m; ++n) {
      double s = -2 * t0 * r[n - 1];
      if (n >= 2) s -= r[n - 2];
      r[n] = -s / q0;
    }
    phi[0] = 1 - r[0];
    for (int n = 1; n <= m; ++n) phi[n] = -r[n];
    E[0] = std::exp(phi[0]);
    for (int n = 1; n <= m; ++n) {
      double s = 0;
      for (int k = 1; k <= n; ++k) s += k * phi[k] * E[n - k];
      E[n] = s / n;
    }
    double scale = 1, fact = 1;
    for (int n = 0; n <= m; ++n) {
      if (n) {
        scale *= 2 / K_;
        fact *= n;
      }
      d[n] = E[n] * fact * scale;
    }
    return d;
  }

  double derivative(double x, int j) const { return derivatives(x, j)[j]; }

  // max_x |w^{(j)}(x)| K^j for j <= m, sampled on a fine grid
  std::vector<double> derivative_constants(int m) const {
    std::vector<double> C(m + 1, 0.0);
    for (int i = 1; i < 4000; ++i) {
      double x = K_ + K_ * i / 4000.0;
      auto d = derivatives(x, m);
      double kp = 1;
      for (int j = 0; j <= m; ++j, kp *= K_) C[j] = std::max(C[j], std::fabs(d[j]) * kp);
    }
    return C;
  }

  // w-check(v) = int_0^inf w(sqrt u)/sqrt(2 pi u) e^{iuv} du
  //            = sqrt(2/pi) int_K^{2K} w(y) e^{i y^2 v} dy
  cd check(double v, double tol = 1e-14) const {
    auto rule = [&](int n) {
      double h = K_ / n;
      cd s = 0;
      for (int i = 1; i < n; ++i) {
        double y = K_ + i * h;
        s += (*this)(y) * std::polar(1.0, y * y * v);
      }
      return s * h * std::sqrt(2 / kPi);
    };
    int n = 64 + static_cast<int>(3 * K_ * K_ * std::fabs(v));
    cd prev = rule(n);
    for (int it = 0; it < 24; ++it) {
      n *= 2;
      cd cur = rule(n);
      if (std::abs(cur - prev) < tol * K_) return cur;  // |w-check| <= K
      prev = cur;
    }
    throw std::runtime_error("BumpWeight::check: no convergence");
  }

  // w-hat(-t) = int w(x) e(x t) dx = e(3Kt/2) (K/2) B(pi K t) with
  // B(om) = int_{-1}^{1} b(s) cos(om s) ds real; |B(om)| ~ exp(-sqrt(2 om)).
  cd hat_neg(double t) const {
    if (bump_.empty()) {
      bump_.resize(kHatNodes / 2);
      for (int i = 0; i < kHatNodes / 2; ++i) {
        double u = (i + 1) * 2.0 / kHatNodes, q = 1 - u * u;
        bump_[i] = (q <= 0 || 1 / q > 700) ? 0 : std::exp(1 - 1 / q);
      }
    }
    double om = kPi * K_ * t, h = 2.0 / kHatNodes;
    // cos(k om h) by the Chebyshev recurrence, symmetric half plus centre
    double c1 = std::cos(om * h), cprev = 1, cur = c1, s = 1;  // b(0) = 1
    for (int i = 0; i < kHatNodes / 2; ++i) {
      s += 2 * bump_[i] * cur;
      double nx = 2 * c1 * cur - cprev;
      cprev = cur;
      cur = nx;
    }
    return e1(1.5 * K_ * t) * (K_ / 2 * s * h);
  }

 private:
  static constexpr int kHatNodes = 16384;
  mutable std::vector<double> bump_;
  double K_;
};

// ----------------------------------------------------- single Bessel average

struct SingleSum {
  double direct = 0;
  double formula = 0;
  double residual = 0;
  double scaled = 0;  // residual K^3 / x
};

// 4 sum_{k = a mod 4} w(k-1) J_{k-1}(x) against w(x) - i^a g(x),
// g(x) = x^{-1/2} Im(e^{ix - pi i/4} w-check(1/(2x))).
inline SingleSum single_bessel_sum(int a, double x, const BumpWeight& w) {
  if (a != 0 && a != 2) throw std::invalid_argument("single_bessel_sum: a must be 0 or 2");
  if (!(x > 0)) throw std::domain_error("single_bessel_sum: x must be positive");
  double K = w.K();
  int top = static_cast<int>(std::ceil(2 * K)) + 2;
  auto J = bessel_J_table(top, x);
  SingleSum r;
  for (int k = 1; k - 1 <= top; ++k)
    if (k % 4 == a) r.direct += 4 * w(k - 1) * J[k - 1];
  double g = (std::polar(1.0, x - kPi / 4) * w.check(1 / (2 * x))).imag() / std::sqrt(x);
  r.formula = w(x) - (a == 0 ? 1 : -1) * g;
  r.residual = std::fabs(r.direct - r.formula);
  r.scaled = r.residual * K * K * K / x;
  return r;
}

// 2 sum_{k even} i^k w(k-1) J_{k-1}(x) + (2/sqrt x) Im(e^{ix - pi i/4} w-check(1/2x))
inline double single_bessel_alternating_residual(double x, const BumpWeight& w) {
  int top = static_cast<int>(std::ceil(2 * w.K())) + 2;
  auto J = bessel_J_table(top, x);
  double s = 0;
  for (int k = 2; k - 1 <= top; k += 2) s += 2 * ((k / 2) % 2 ? -1 : 1) * w(k - 1) * J[k - 1];
  double g = (std::polar(1.0, x - kPi / 4) * w.check(1 / (2 * x))).imag() / std::sqrt(x);
  return std::fabs(s + 2 * g);
}

// ------------------------------------------------------ double Bessel average

struct BesselSumParams {
  double alpha, beta, K, gamma;
  bool exponentially_small, gamma_ge_1;

  BesselSumParams(double a, double b, double K_) : alpha(a), beta(b), K(K_) {
    if (!(a > 0 && b > 0 && K_ > 0)) throw std::domain_error("BesselSumParams: need positive alpha, beta, K");
    gamma = b / (4 * a);
    exponentially_small = a < K / 100 || b < K / 100;
    gamma_ge_1 = gamma >= 1;
  }
  bool main_term() const { return !exponentially_small && !gamma_ge_1; }
};

enum class BesselRoute { Recurrence, Quadrature };

// S(alpha, beta) = sum_{k odd} i^k J_k(4 pi alpha) J_{2k-1}(4 pi beta) w(k).
// The recurrence keeps relative accuracy in the exponentially small range;
// the quadrature route is absolute only (~1e-15 per Bessel value).
inline cd s_direct(const BesselSumParams& p, const BumpWeight& w, BesselRoute route = BesselRoute::Recurrence) {
  int kmax = static_cast<int>(std::ceil(2 * p.K)) + 1;
  double xa = 4 * kPi * p.alpha, xb = 4 * kPi * p.beta;
  std::vector<double> Ja, Jb;
  if (route == BesselRoute::Recurrence) {
    Ja = bessel_J_table(kmax, xa);
    Jb = bessel_J_table(2 * kmax, xb);
  }
  double s = 0;
  for (int k = 1; k <= kmax; k += 2) {
    double wk = w(k);
    if (wk == 0) continue;
    double a = route == BesselRoute::Recurrence ? Ja[k] : bessel_J(k, xa);
    double b = route == BesselRoute::Recurrence ? Jb[2 * k - 1] : bessel_J(2 * k - 1, xb);
    s += (k % 4 == 1 ? 1 : -1) * a * b * wk;
  }
  return cd(0, s);
}

// Taylor constants of e(-+4 pi^2 alpha c t^2) against (alpha c)^j (2 pi i t)^{2j}:
// a_j = (+-2 pi i)^j / j!, sign = +1 for the upper branch.
inline cd taylor_a(int j, int sign) {
  cd z(0, sign * 2 * kPi), r = 1;
  for (int i = 1; i <= j; ++i) r *= z / double(i);
  return r;
}

constexpr int kTaylorJ = 12;

// After v = sin(2 pi u) the weight is (sqrt(1-v^2) - iv)/(2 pi sqrt(1-v^2)) W,
// so c1 = 1/(2 pi) and c2 = -4i with h(x) = K W(x)/x.
inline cd asym_c1() { return cd(1 / (2 * kPi), 0); }
inline cd asym_c2() { return cd(0, -4); }

// sum_{j <= J} a_j z^j w^{(2j)}(x). The bump's derivatives grow like
// (2j)!^2 K^{-2j}, so the series is only asymptotic: it stops before the
// first term (j >= 2) larger than its predecessor.
inline cd taylor_sum(double x, cd z, int sign, const BumpWeight& w, int J) {
  auto d = w.derivatives(x, 2 * J);
  cd s = 0, zp = 1;
  double last = INFINITY;
  for (int j = 0; j <= J; ++j, zp *= z) {
    cd t = taylor_a(j, sign) * zp * d[2 * j];
    if (j >= 2 && std::abs(t) > last) break;
    last = std::abs(t);
    s += t;
  }
  return s;
}

// W(x) = -1/2 sum_{j <= J} a_j alpha^j w^{(2j)}(x), lower branch
inline cd asym_W(double x, double alpha, const BumpWeight& w, int J = kTaylorJ) {
  return -0.5 * taylor_sum(x, alpha, -1, w, J);
}

inline cd H_minus(const BesselSumParams& p, const BumpWeight& w, int J = kTaylorJ) {
  double x = 2 * kPi * p.beta * std::sqrt(1 - p.gamma * p.gamma);
  cd W = asym_W(x, p.alpha, w, J);
  cd h = p.K * W / x;
  return std::pow(8.0, -0.5) * e1(0.125) * (asym_c1() * W + asym_c2() * (p.beta / (4 * p.K)) * p.gamma * h);
}

// sum_+- H_+-/sqrt(alpha) e(+-(2 alpha + beta^2/(4 alpha))), H_+ = -conj(H_-)
inline cd s_asymptotic(const BesselSumParams& p, const BumpWeight& w, int J = kTaylorJ) {
  if (p.gamma_ge_1) throw std::domain_error("s_asymptotic: gamma >= 1, only the bound |S| << 1/K applies");
  cd Hm = H_minus(p, w, J);
  double ph = 2 * p.alpha + p.beta * p.beta / (4 * p.alpha);
  return (Hm * e1(-ph) - std::conj(Hm) * e1(ph)) / std::sqrt(p.alpha);
}

// beta, alpha with 2 pi beta sqrt(1 - gamma^2) = ratio K and beta = 4 alpha gamma
inline BesselSumParams params_for(double K, double gamma, double ratio = 1.5) {
  double beta = ratio * K / (2 * kPi * std::sqrt(1 - gamma * gamma));
  return BesselSumParams(beta / (4 * gamma), beta, K);
}

// ------------------------------------------------------------ I_{K, +-alpha}

struct IKValue {
  cd integral, expansion;
};

// int e(+-2 alpha cos(2 pi (2u - t))) w-hat(-t) dt by the trapezoid rule on
// |t| <= 800/(pi K), where w-hat has dropped below e^{-40}; against
// e(+-2 alpha c) sum_{j <= J} a_j (alpha c)^j w^{(2j)}(-+4 pi alpha s).
inline IKValue ik_integral(double u, double alpha, int sign, const BumpWeight& w, int J = kTaylorJ) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("ik_integral: sign must be +-1");
  double K = w.K();
  if (alpha < 0 || alpha > K * K) throw std::domain_error("ik_integral: need 0 <= alpha <= K^2");
  double T = 800 / (kPi * K);
  double freq = 2 * K + 4 * kPi * alpha;
  int n = static_cast<int>(std::ceil(2 * T * freq * 8)) + 400;
  double h = 2 * T / n;
  IKValue r;
  for (int i = 0; i <= n; ++i) {
    double t = -T + i * h;
    cd v = e1(sign * 2 * alpha * std::cos(2 * kPi * (2 * u - t))) * w.hat_neg(t);
    r.integral += (i == 0 || i == n) ? v / 2.0 : v;
  }
  r.integral *= h;
  double c = std::cos(4 * kPi * u), s = std::sin(4 * kPi * u);
  r.expansion = e1(sign * 2 * alpha * c) * taylor_sum(-sign * 4 * kPi * alpha * s, alpha * c, sign, w, J);
  return r;
}

// The same integral exactly, from e^{iz cos th} = sum i^n J_n(z) e^{in th}:
// sum_n (+-i)^n J_n(4 pi alpha) e(2nu) w(n).
inline cd ik_integral_series(double u, double alpha, int sign, const BumpWeight& w) {
  int top = static_cast<int>(std::ceil(2 * w.K())) + 1;
  auto Jn = bessel_J_table(top, 4 * kPi * alpha);
  cd s = 0, ip = 1, step(0, sign);
  for (int n = 0; n <= top; ++n, ip *= step)
    if (double wn = w(n)) s += ip * Jn[n] * e1(2 * n * u) * wn;
  return s;
}

}  // namespace skl::as
