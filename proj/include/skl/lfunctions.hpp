#pragma once

// Central and edge values of the L-functions attached to level one
// eigenforms: the degree six Rankin-Selberg convolution of sym^2 g with f,
// L(1, sym^2 g) from a smoothed sum, and degree two values of L(s, f) and
// its quadratic twists.

#include "skl/eigen.hpp"
#include "skl/gamma.hpp"
#include "skl/mellin.hpp"

#include <cmath>
#include <memory>

namespace skl::lf {

using mf::Eigenform;

// A value with an error budget. `terms` counts series terms actually used.
struct LValue {
  Real value;
  Real budget;
  size_t terms = 0;
};

namespace detail {

inline void require_table(const Eigenform& f, size_t n, const char* what) {
  if (f.lambda.size() <= n)
    throw std::out_of_range(std::string(what) + ": eigenform " + f.label + " tabulated to " +
                            std::to_string(f.lambda.size() - 1) + ", need " + std::to_string(n));
}

// Upper bound for sum_{n > N} d(n) n^{-b}, b > 1, from sum_{n<=x} d(n) <= x(log x + 1).
inline double divisor_tail(double N, double b) {
  double b1 = b - 1;
  return b * std::pow(N, -b1) * ((std::log(N) + 1) / b1 + 1 / (b1 * b1));
}

// Solve a small dense system in place, partial pivoting.
inline std::vector<Real> solve(std::vector<std::vector<Real>> A, std::vector<Real> b) {
  size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (abs(A[r][c]) > abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    if (A[c][c] == 0) throw std::runtime_error("solve: singular system");
    for (size_t r = c + 1; r < n; ++r) {
      Real f = A[r][c] / A[c][c];
      for (size_t j = c; j < n; ++j) A[r][j] -= f * A[c][j];
      b[r] -= f * b[c];
    }
  }
  std::vector<Real> x(n);
  for (size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x;
}

}  // namespace detail

// lambda(n) for 1 <= n <= N rebuilt from lambda(p), p <= N. Agrees with the
// tabulated values wherever both exist; used when only primes are trusted.
inline std::vector<Real> lambda_table(const Eigenform& f, size_t N) {
  detail::require_table(f, N, "lambda_table");
  Sieve sv(static_cast<int64_t>(std::max<size_t>(N, 2)));
  std::vector<Real> out(N + 1, Real(0));
  if (N >= 1) out[1] = 1;
  for (size_t n = 2; n <= N; ++n) {
    int64_t p = sv.spf(n);
    size_t m = n, pe = 1;
    int e = 0;
    while (m % p == 0) { m /= p; pe *= p; ++e; }
    out[n] = out[m] * (m == 1 ? mf::prime_power_lambdas(f.lam(p), e)[e] : out[pe]);
  }
  return out;
}

// lambda(n^2) for 1 <= n <= N, needs lambda(p) for p <= N only.
inline std::vector<Real> lambda_squares(const Eigenform& f, size_t N) {
  detail::require_table(f, N, "lambda_squares");
  Sieve sv(static_cast<int64_t>(std::max<size_t>(N, 2)));
  std::vector<Real> out(N + 1, Real(0));
  if (N >= 1) out[1] = 1;
  // lambda(p^{2e}) per prime, cached on first use
  std::vector<std::vector<Real>> pp(N + 1);
  for (size_t n = 2; n <= N; ++n) {
    int64_t p = sv.spf(n);
    size_t m = n;
    int e = 0;
    while (m % p == 0) { m /= p; ++e; }
    auto& tab = pp[p];
    if (static_cast<int>(tab.size()) <= 2 * e) tab = mf::prime_power_lambdas(f.lam(p), 2 * e + 4);
    out[n] = out[m] * tab[2 * e];
  }
  return out;
}

// Coefficients A_G(m1, m2) of the symmetric square lift of g.
class GL3Coefficients {
 public:
  GL3Coefficients(const Eigenform& g, size_t M) : M_(M), sv_(static_cast<int64_t>(std::max<size_t>(M, 2))) {
    auto lsq = lambda_squares(g, M);
    A1_.assign(M + 1, Real(0));
    for (size_t b = 1; b * b <= M; ++b)
      for (size_t a = 1; a * b * b <= M; ++a) A1_[a * b * b] += lsq[a];
  }

  size_t bound() const { return M_; }
  const Real& at1(size_t r) const {
    if (r == 0 || r > M_) throw std::out_of_range("GL3Coefficients: index outside table");
    return A1_[r];
  }
  Real at(size_t m1, size_t m2) const {
    if (m1 == 0 || m2 == 0 || m1 > M_ || m2 > M_) throw std::out_of_range("GL3Coefficients: index outside table");
    size_t g = std::gcd(m1, m2);
    if (g == 1) return A1_[m1] * A1_[m2];
    Real s = 0;
    for (int64_t d : sv_.divisors(g)) {
      int mu = sv_.mobius(d);
      if (mu) s += mu * A1_[m1 / d] * A1_[m2 / d];
    }
    return s;
  }

 private:
  size_t M_;
  Sieve sv_;
  std::vector<Real> A1_;
};

inline GL3Coefficients gl3_coeffs(const Eigenform& g, size_t M1, size_t M2) {
  return GL3Coefficients(g, std::max(M1, M2));
}

// Dirichlet coefficients c(n) = sum_{m1 m2^2 = n} lambda_f(m1) A_G(m1, m2).
inline std::vector<Real> rs_coefficients(const Eigenform& f, const GL3Coefficients& G, size_t X) {
  detail::require_table(f, X, "rs_coefficients");
  if (G.bound() < X) throw std::out_of_range("rs_coefficients: GL3 table too short");
  std::vector<Real> c(X + 1, Real(0));
  for (size_t m2 = 1; m2 * m2 <= X; ++m2)
    for (size_t m1 = 1; m1 * m2 * m2 <= X; ++m1) {
      if (f.lam(m1) == 0) continue;
      c[m1 * m2 * m2] += f.lam(m1) * G.at(m1, m2);
    }
  return c;
}

// Same coefficients from the five-fold expansion over (d, a1, b1, a2, b2).
inline std::vector<Real> rs_coefficients_fivefold(const Eigenform& f, const Eigenform& g, size_t X) {
  detail::require_table(f, X, "rs_coefficients_fivefold");
  auto lsq = lambda_squares(g, X);
  std::vector<Real> c(X + 1, Real(0));
  for (size_t d = 1; d * d * d <= X; ++d) {
    int mu = mobius(static_cast<int64_t>(d));
    if (!mu) continue;
    size_t n0 = d * d * d;
    for (size_t b2 = 1; n0 * b2 * b2 * b2 * b2 <= X; ++b2) {
      size_t n1 = n0 * b2 * b2 * b2 * b2;
      for (size_t a2 = 1; n1 * a2 * a2 <= X; ++a2) {
        size_t n2 = n1 * a2 * a2;
        for (size_t b1 = 1; n2 * b1 * b1 <= X; ++b1) {
          size_t n3 = n2 * b1 * b1;
          for (size_t a1 = 1; n3 * a1 <= X; ++a1)
            c[n3 * a1] += mu * f.lam(d * a1 * b1 * b1) * lsq[a1] * lsq[a2];
        }
      }
    }
  }
  return c;
}

// Settings of the approximate functional equation for the degree six value.
struct RSConfig {
  Real sigma = Real(3) / 2;
  Real step = Real(1) / 64;
  Real height = 16;
  double cutoff_c = 40;  // X = ceil(cutoff_c k^2)
};

class RSEvaluator {
 public:
  explicit RSEvaluator(int k, RSConfig cfg = {}) : k_(k), cfg_(cfg) {
    if (k < 1 || k % 2 == 0) throw std::invalid_argument("RSEvaluator: k must be odd and positive");
    log_g0_ = lgamma_real(Real(2 * k)) + lgamma_real(Real(k));
    log2pi_ = log(2 * pi());
    auto g = [this](const Cplx<Real>& u) { return H(u) * gamma_ratio(u) / u; };
    main_ = std::make_unique<ContourSum>(g, cfg_.sigma, cfg_.step, cfg_.height, true);
    // coarse tables on further lines, used only for the y^{-sigma} majorants
    for (int s : {2, 3, 4, 5, 6, 8}) {
      ContourSum cs(g, Real(s), Real(1) / 16, cfg_.height, true);
      bound_.emplace_back(static_cast<double>(s), cs.l1_norm().convert_to<double>());
    }
    bound_.emplace_back(cfg_.sigma.convert_to<double>(), main_->l1_norm().convert_to<double>());
  }

  int k() const { return k_; }
  const RSConfig& config() const { return cfg_; }
  size_t cutoff() const { return static_cast<size_t>(std::ceil(cfg_.cutoff_c * k_ * k_)); }

  static Cplx<Real> H(const Cplx<Real>& u) {
    Cplx<Real> u2 = u * u;
    return cexp(u2) * (Cplx<Real>(Real(1)) - u2 * Real(16));
  }

  // gamma(1/2 + u, k) / gamma(1/2, k)
  Cplx<Real> gamma_ratio(const Cplx<Real>& u) const {
    Cplx<Real> one(Real(1));
    Cplx<Real> lg = clgamma(u + Cplx<Real>(Real(2 * k_))) + clgamma(u + Cplx<Real>(Real(k_))) + clgamma(u + one);
    lg = lg - Cplx<Real>(log_g0_) - u * (3 * log2pi_);
    return cexp(lg);
  }

  ContourValue V(const Real& y) const {
    if (y <= 0) throw std::domain_error("V: y must be positive");
    return main_->eval(y);
  }

  // Residue at u = 0 plus the integral on Re u = -1/2; independent of V().
  ContourValue V_shifted(const Real& y) const {
    auto g = [this](const Cplx<Real>& u) { return H(u) * gamma_ratio(u) / u; };
    ContourSum left(g, Real(-1) / 2, cfg_.step, cfg_.height, true);
    ContourValue r = left.eval(y);
    r.value.re += 1;
    return r;
  }

  // |V(y)| <= min_sigma C_sigma y^{-sigma}
  double V_bound(double y) const {
    double b = INFINITY;
    for (auto [s, c] : bound_) b = std::min(b, c * std::pow(y, -s));
    return b;
  }
  const std::vector<std::pair<double, double>>& majorants() const { return bound_; }

 private:
  int k_;
  RSConfig cfg_;
  Real log_g0_, log2pi_;
  std::unique_ptr<ContourSum> main_;
  std::vector<std::pair<double, double>> bound_;
};

namespace detail {

// Rigorous but loose: sum_{n > X} D(n) |V(n)| / sqrt(n) with the divisor
// majorant D(n) = sum_{m1 m2^2 = n} d(m1) d3(m1) d3(m2) >= |c(n)|, explicit
// up to 8X, then Rankin's trick with d(m) d3(m) <= d6(m).
inline double rs_divisor_tail(const RSEvaluator& ev, size_t X) {
  size_t top = 8 * X;
  std::vector<double> d(top + 1, 0), d3(top + 1, 0);
  for (size_t a = 1; a <= top; ++a)
    for (size_t m = a; m <= top; m += a) d[m] += 1;
  for (size_t a = 1; a <= top; ++a)
    for (size_t m = a; m <= top; m += a) d3[m] += d[m / a];
  std::vector<double> D(top + 1, 0);
  for (size_t m2 = 1; m2 * m2 <= top; ++m2)
    for (size_t m1 = 1; m1 * m2 * m2 <= top; ++m1) D[m1 * m2 * m2] += d[m1] * d3[m1] * d3[m2];
  double best = INFINITY;
  for (auto [s, c] : ev.majorants()) {
    double a = 0.5 + s;
    double t = 0;
    for (size_t n = X + 1; n <= top; ++n) t += D[n] * std::pow(double(n), -a);
    double rk = INFINITY;
    for (double r = 1.05; r < a - 0.05; r += 0.05)
      rk = std::min(rk, std::pow(double(top), -(a - r)) * std::pow(std::riemann_zeta(r), 6) *
                            std::pow(std::riemann_zeta(2 * r), 3));
    best = std::min(best, c * (t + rk));
  }
  return best;
}

// sum_{n > X} |c(n)| |V(n)| / sqrt(n): computed |c(n)| against the |V|
// majorant on (X, top], then the mean of |c(n)| on that range carried on.
inline double rs_tail(const RSEvaluator& ev, const std::vector<Real>& c, size_t X) {
  size_t top = c.size() - 1;
  double t = 0, mass = 0;
  for (size_t n = X + 1; n <= top; ++n) {
    double a = std::fabs(c[n].convert_to<double>());
    mass += a;
    t += a * ev.V_bound(double(n)) / std::sqrt(double(n));
  }
  double mean = top > X ? mass / double(top - X) : 1.0;
  mean = std::max(mean, 1.0);
  // blocks of ratio 1.01 with the majorant taken at the left end
  for (double lo = double(top);; lo *= 1.01) {
    double piece = mean * (0.01 * lo) * ev.V_bound(lo) / std::sqrt(lo);
    t += piece;
    if (piece < 1e-30 * t || lo > 1e300) break;
  }
  return t;
}

}  // namespace detail

struct RSValue : LValue {
  Real quadrature;     // sum |c_n| err_n / sqrt(n)
  Real tail;           // series beyond X
  Real divisor_tail;   // the same from divisor majorants only (much looser)
  size_t cutoff = 0;
};

// L(1/2, sym^2 g x f) = 2 sum c(n) n^{-1/2} V(n). Coefficient tables are
// needed to tail_span * X for the tail estimate.
inline RSValue rankin_central_value(const Eigenform& f, const Eigenform& g, const RSEvaluator& ev, size_t X = 0,
                                    size_t tail_span = 4) {
  int k = ev.k();
  if (f.weight != 2 * k || g.weight != k + 1)
    throw std::invalid_argument("rankin_central_value: weights must be 2k and k+1");
  if (X == 0) X = ev.cutoff();
  size_t top = std::max<size_t>(X, tail_span * X);
  GL3Coefficients G(g, top);
  auto c = rs_coefficients(f, G, top);
  RSValue r;
  r.cutoff = X;
  Real s = 0, q = 0;
  for (size_t n = 1; n <= X; ++n) {
    if (c[n] == 0) continue;
    ContourValue v = ev.V(Real(n));
    Real rn = sqrt(Real(n));
    s += c[n] * v.value.re / rn;
    q += abs(c[n]) * v.err / rn;
    ++r.terms;
  }
  r.value = 2 * s;
  r.quadrature = 2 * q;
  r.tail = 2 * Real(detail::rs_tail(ev, c, X));
  r.divisor_tail = 2 * Real(detail::rs_divisor_tail(ev, X));
  r.budget = r.quadrature + r.tail;
  return r;
}

// b(n) = sum_{q^2 r = n} lambda(r^2), the coefficients of L(s, sym^2 g).
inline std::vector<Real> sym2_coefficients(const Eigenform& g, size_t N) {
  auto lsq = lambda_squares(g, N);
  std::vector<Real> b(N + 1, Real(0));
  for (size_t q = 1; q * q <= N; ++q)
    for (size_t r = 1; q * q * r <= N; ++r) b[q * q * r] += lsq[r];
  return b;
}

namespace detail {
// sum_{n <= 40V} b(n)/n exp(-n/V)
inline Real sym2_smoothed(const std::vector<Real>& b, const Real& V, size_t N) {
  Real w = 1, step = exp(-1 / V), s = 0;
  for (size_t n = 1; n <= N; ++n) {
    w *= step;
    if (b[n] != 0) s += b[n] * w / n;
  }
  return s;
}
constexpr double kSym2Span = 40;
}  // namespace detail

// Smoothed sum at a single V. The leading correction decays like 1/V, so
// |S(V/2) - S(V)| estimates the error of S(V); the budget doubles it and adds
// the truncation tail (|b(n)| <= d3(n) <= sqrt(n) is enough here).
inline LValue sym2_at_1(const Eigenform& g, const Real& V) {
  size_t N = static_cast<size_t>(std::ceil(detail::kSym2Span * V.convert_to<double>()));
  detail::require_table(g, N, "sym2_at_1");
  auto b = sym2_coefficients(g, N);
  Real s1 = detail::sym2_smoothed(b, V, N), s0 = detail::sym2_smoothed(b, V / 2, (N + 1) / 2);
  double v = V.convert_to<double>(), tail = v * std::exp(-double(N) / v) / std::sqrt(double(N));
  return {s1, 2 * abs(s1 - s0) + Real(tail), N};
}

// Richardson extrapolation over V0 2^i, i < levels, removing the V^{-1},
// V^{-3}, ... terms of the shifted contour (the V^{-2j} terms vanish at the
// trivial zeros). Budget = change against one fewer level, plus tail.
inline LValue sym2_at_1_extrapolated(const Eigenform& g, const Real& V0, int levels = 4) {
  if (levels < 2) throw std::invalid_argument("sym2_at_1_extrapolated: need at least two levels");
  double Vmax = V0.convert_to<double>() * std::ldexp(1.0, levels - 1);
  size_t N = static_cast<size_t>(std::ceil(detail::kSym2Span * Vmax));
  detail::require_table(g, N, "sym2_at_1_extrapolated");
  auto b = sym2_coefficients(g, N);
  std::vector<Real> S, Vs;
  for (int i = 0; i < levels; ++i) {
    Real V = V0 * Real(1 << i);
    Vs.push_back(V);
    S.push_back(detail::sym2_smoothed(b, V, static_cast<size_t>(std::ceil(detail::kSym2Span * V.convert_to<double>()))));
  }
  auto extrapolate = [&](int m) {
    std::vector<std::vector<Real>> A(m, std::vector<Real>(m));
    std::vector<Real> rhs(m);
    for (int i = 0; i < m; ++i) {
      int idx = levels - m + i;  // the largest m values of V
      A[i][0] = 1;
      for (int j = 1; j < m; ++j) A[i][j] = pow(Vs[idx], -(2 * j - 1));
      rhs[i] = S[idx];
    }
    return detail::solve(A, rhs)[0];
  };
  LValue r;
  r.value = extrapolate(levels);
  Real prev = extrapolate(levels - 1);
  double tail = 40 * std::exp(-detail::kSym2Span) * std::sqrt(detail::kSym2Span * V0.convert_to<double>());
  r.budget = abs(r.value - prev) + Real(tail);
  r.terms = N;
  return r;
}

// Upper incomplete gamma function for complex a and real x > 0.
inline Cplx<Real> upper_gamma(const Cplx<Real>& a, const Real& x) {
  using C = Cplx<Real>;
  Real eps = ldexp(Real(1), -static_cast<int>(current_bits()) - 4);
  C lx = C(log(x));
  if (x < a.re + 24) {
    // Gamma(a) - x^a e^{-x} sum x^n / (a (a+1) ... (a+n))
    C term = C(Real(1)) / a, sum = term;
    for (int n = 1; n < 100000; ++n) {
      term = term * x / (a + C(Real(n)));
      sum += term;
      if (abs(term) < eps * abs(sum)) break;
    }
    C lower = cexp(a * lx - C(x)) * sum;
    return cexp(clgamma(a)) - lower;
  }
  // continued fraction, modified Lentz
  Real tiny = ldexp(Real(1), -static_cast<int>(2 * current_bits()));
  C b = C(x + 1) - a, c = C(Real(1)) / C(tiny), d = C(Real(1)) / b, h = d;
  for (int i = 1; i < 100000; ++i) {
    C an = (a - C(Real(i))) * Real(i);
    b = b + C(Real(2));
    d = an * d + b;
    if (abs(d) < tiny) d = C(tiny);
    c = b + an / c;
    if (abs(c) < tiny) c = C(tiny);
    d = C(Real(1)) / d;
    C del = d * c;
    h = h * del;
    if (abs(del - C(Real(1))) < eps) break;
  }
  return cexp(a * lx - C(x)) * h;
}

// Lambda(s) = Q^s Gamma(s + kappa) L(s) = eps Lambda(1 - s), real coefficients.
// Lambda(s) = sum a_n [(Q/n)^s G(s+kappa, n/(QX)) + eps (Q/n)^{1-s} G(1-s+kappa, nX/Q)].
class Degree2AFE {
 public:
  Degree2AFE(std::vector<Real> a, Real Q, Real kappa, int eps)
      : a_(std::move(a)), Q_(std::move(Q)), kappa_(std::move(kappa)), eps_(eps) {}

  struct Value {
    Cplx<Real> value;
    Real budget;
    size_t terms = 0;
  };

  Value Lambda(const Cplx<Real>& s, const Real& X = Real(1)) const {
    using C = Cplx<Real>;
    C z1 = s + C(kappa_), z2 = C(Real(1)) - s + C(kappa_);
    Real tol = ldexp(Real(1), -static_cast<int>(current_bits()) + 8);
    Value out;
    size_t n = 1;
    Real lq = log(Q_);
    for (;; ++n) {
      Real y1 = Real(n) / (Q_ * X), y2 = Real(n) * X / Q_;
      // stop once both incomplete gammas are deep in their exponential tails
      if (y1 > 2 * (abs(z1) + 40) && y2 > 2 * (abs(z2) + 40)) {
        Real t = majorant(s, X, n);
        if (t < tol) { out.budget = t; break; }
      }
      if (n >= a_.size()) throw std::out_of_range("Degree2AFE: coefficient table too short");
      if (a_[n] == 0) continue;
      Real ln = log(Real(n));
      C p1 = cexp(s * (lq - ln)), p2 = cexp((C(Real(1)) - s) * (lq - ln));
      C t = p1 * upper_gamma(z1, y1) + p2 * upper_gamma(z2, y2) * Real(eps_);
      out.value += t * a_[n];
      out.terms = n;
    }
    out.budget += abs(out.value) * tol;
    return out;
  }

  Cplx<Real> gamma_factor(const Cplx<Real>& s) const {
    return cexp(s * log(Q_) + clgamma(s + Cplx<Real>(kappa_)));
  }

  // L(s) at a real point, X = 1.
  LValue L(const Real& s) const {
    Value v = Lambda(Cplx<Real>(s));
    Real gf = gamma_factor(Cplx<Real>(s)).re;
    return {v.value.re / gf, v.budget / gf, v.terms};
  }

  // Max relative disagreement of Lambda(s) between the balanced and an
  // unbalanced split, and between Lambda(s) and eps Lambda(1-s). A wrong sign
  // eps makes both of order one.
  Real sign_defect(const Cplx<Real>& s) const {
    Value a = Lambda(s, Real(1)), b = Lambda(s, Real(5) / 4);
    Value c = Lambda(Cplx<Real>(Real(1)) - s, Real(4) / 5);
    Real scale = abs(a.value);
    Real d1 = abs(a.value - b.value), d2 = abs(a.value - c.value * Real(eps_));
    return std::max(d1, d2) / scale;
  }

  int sign() const { return eps_; }
  const Real& conductor_scale() const { return Q_; }

 private:
  // sum_{m >= n} d(m) (Q/m)^{Re s} Gamma(Re z1, y1) + same for the dual,
  // with d(m) <= 2 sqrt(m) and Gamma(a, y) <= 2 y^{a-1} e^{-y} for y >= 2a.
  Real majorant(const Cplx<Real>& s, const Real& X, size_t n) const {
    double q = Q_.convert_to<double>(), x = X.convert_to<double>();
    double a1 = s.re.convert_to<double>() + kappa_.convert_to<double>();
    double a2 = 1 - s.re.convert_to<double>() + kappa_.convert_to<double>();
    double sr = s.re.convert_to<double>();
    double tot = 0;
    for (double m = double(n);; m += 1) {
      double y1 = m / (q * x), y2 = m * x / q;
      double t = 2 * std::sqrt(m) *
                 (std::pow(q / m, sr) * 2 * std::exp((a1 - 1) * std::log(y1) - y1) +
                  std::pow(q / m, 1 - sr) * 2 * std::exp((a2 - 1) * std::log(y2) - y2));
      tot += t;
      if (t < 1e-300 || t < tot * 1e-20) break;
    }
    return Real(tot * 2);
  }

  std::vector<Real> a_;
  Real Q_, kappa_;
  int eps_;
};

// L(s, f) with Q = 1/(2 pi), kappa = (K-1)/2, eps = i^K.
inline Degree2AFE standard_afe(const Eigenform& f) {
  int K = f.weight;
  return Degree2AFE(f.lambda, 1 / (2 * pi()), Real(K - 1) / 2, (K / 2) % 2 ? -1 : 1);
}

// L(s, f x chi_D), D < 0 fundamental. Conductor D^2, sign asserted +1.
inline Degree2AFE twisted_afe(const Eigenform& f, int64_t D) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw std::invalid_argument("twisted_afe: D must be a negative fundamental discriminant");
  std::vector<Real> a(f.lambda.size(), Real(0));
  for (size_t n = 1; n < a.size(); ++n) {
    int chi = kronecker(D, static_cast<int64_t>(n));
    if (chi) a[n] = chi * f.lambda[n];
  }
  return Degree2AFE(std::move(a), Real(-D) / (2 * pi()), Real(f.weight - 1) / 2, 1);
}

struct TwistedValue : LValue {
  Real sign_defect;
};

inline TwistedValue twisted_central_value(const Eigenform& f, int64_t D, double sign_tol = 1e-8) {
  Degree2AFE afe = twisted_afe(f, D);
  Real defect = afe.sign_defect(Cplx<Real>(Real(1) / 2, Real(3) / 10));
  if (defect > sign_tol)
    throw std::runtime_error("twisted_central_value: functional equation sign +1 rejected for D = " +
                             std::to_string(D) + " (defect " + fmt(defect, 6) + ")");
  LValue v = afe.L(Real(1) / 2);
  TwistedValue r;
  r.value = v.value;
  r.budget = v.budget;
  r.terms = v.terms;
  r.sign_defect = defect;
  return r;
}

// L(3/2, f) by the approximate functional equation; converges to full precision.
inline LValue l_f_at_32(const Eigenform& f) { return standard_afe(f).L(Real(3) / 2); }

// Direct partial sum to N with the divisor-bound tail 3(log N + 3)/sqrt(N).
inline LValue l_f_at_32_direct(const Eigenform& f, size_t N) {
  detail::require_table(f, N, "l_f_at_32_direct");
  Real s = 0;
  for (size_t n = 1; n <= N; ++n) s += f.lam(n) / (Real(n) * sqrt(Real(n)));
  return {s, Real(detail::divisor_tail(double(N), 1.5)), N};
}

// mu_f(t) for t <= N: the coefficients of 1/L(s, f).
inline std::vector<Real> mu_f(const Eigenform& f, size_t N) {
  detail::require_table(f, N, "mu_f");
  Sieve sv(static_cast<int64_t>(std::max<size_t>(N, 2)));
  std::vector<Real> m(N + 1, Real(0));
  if (N >= 1) m[1] = 1;
  for (size_t n = 2; n <= N; ++n) {
    int64_t p = sv.spf(n);
    size_t r = n;
    int e = 0;
    while (r % p == 0) { r /= p; ++e; }
    if (e == 1) m[n] = -f.lam(p) * m[r];
    else if (e == 2) m[n] = m[r];
  }
  return m;
}

// 1/L(3/2, f) from sum mu_f(t) t^{-3/2} exp(-t/V). The shifted contour meets
// the zeros of L(s, f) on Re s = 1/2, so the error is of size 1/V, times
// log V when L(1/2, f) = 0 (double pole at s = -1). For c log V / V the
// error is below 2.4 |S(V) - S(2V)| once V >= 100; the budget takes 4x.
inline LValue inv_l_f_at_32(const Eigenform& f, const Real& V) {
  size_t N2 = static_cast<size_t>(std::ceil(detail::kSym2Span * 2 * V.convert_to<double>()));
  size_t N1 = static_cast<size_t>(std::ceil(detail::kSym2Span * V.convert_to<double>()));
  auto m = mu_f(f, N2);
  auto sum = [&](const Real& W, size_t N) {
    Real w = 1, step = exp(-1 / W), s = 0;
    for (size_t t = 1; t <= N; ++t) {
      w *= step;
      if (m[t] != 0) s += m[t] * w / (Real(t) * sqrt(Real(t)));
    }
    return s;
  };
  Real s1 = sum(V, N1), s2 = sum(2 * V, N2);
  return {s1, 4 * abs(s1 - s2) + Real(std::exp(-detail::kSym2Span) * 4), N1};
}

}  // namespace skl::lf
