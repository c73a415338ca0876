#pragma once

// Kloosterman, Ramanujan and quadratic Gauss-type sums by direct
// enumeration of residues.

#include "skl/arith.hpp"
#include "skl/num.hpp"

#include <vector>

namespace skl::es {

// Units mod c, their inverses and a table of e(j/c) for j mod c. Shared by
// every sum at the same modulus.
template <class R>
class Modulus {
 public:
  explicit Modulus(int64_t c) : c_(c), cosv_(c), sinv_(c) {
    if (c < 1) throw std::domain_error("modulus must be >= 1");
    using std::cos; using std::sin;
    R two_pi = 2 * boost::math::constants::pi<R>();
    for (int64_t j = 0; j < c; ++j) {
      R t = two_pi * R(j) / R(c);
      cosv_[j] = cos(t);
      sinv_[j] = sin(t);
    }
    for (int64_t a = 0; a < c; ++a)
      if (gcd(a, c) == 1 || c == 1) {
        units_.push_back(a);
        inv_.push_back(c == 1 ? 0 : inv_mod(a, c));
      }
  }
  int64_t c() const { return c_; }
  const std::vector<int64_t>& units() const { return units_; }
  const R& cos_at(int64_t j) const { return cosv_[mod(j, c_)]; }
  const R& sin_at(int64_t j) const { return sinv_[mod(j, c_)]; }

  // S(m,n;c) as (re, im)
  Cplx<R> kloosterman(int64_t m, int64_t n) const {
    Cplx<R> s;
    int64_t mm = mod(m, c_), nn = mod(n, c_);
    for (size_t i = 0; i < units_.size(); ++i) {
      int64_t j = (mm * units_[i] + nn * inv_[i]) % c_;
      s.re += cosv_[j];
      s.im += sinv_[j];
    }
    return s;
  }

 private:
  int64_t c_;
  std::vector<R> cosv_, sinv_;
  std::vector<int64_t> units_, inv_;
};

// Real part of S(m,n;c); the imaginary residue is checked against tol.
inline Real kloosterman(int64_t m, int64_t n, int64_t c, Real* imag = nullptr) {
  Cplx<Real> s = Modulus<Real>(c).kloosterman(m, n);
  if (imag) *imag = s.im;
  return s.re;
}

// |S(m,n;c)| <= (m,n,c)^{1/2} c^{1/2} tau(c), compared after squaring.
template <class R>
bool weil_holds(const Modulus<R>& md, int64_t m, int64_t n, R* lhs = nullptr, R* rhs = nullptr) {
  int64_t c = md.c();
  R s = md.kloosterman(m, n).re;
  int64_t g = gcd(gcd(m, n), c);
  int64_t t = num_divisors(c);
  R bound2 = R(g) * R(c) * R(t) * R(t);
  if (lhs) *lhs = s;
  if (rhs) { using std::sqrt; *rhs = sqrt(bound2); }
  return s * s <= bound2 * (1 + R(1e-25));
}

inline bool weil_check(int64_t m, int64_t n, int64_t c) {
  return weil_holds(Modulus<Real>(c), m, n);
}

// Ramanujan sum c_c(n) by the divisor route.
inline int64_t ramanujan_divisor(int64_t n, int64_t c) {
  int64_t g = gcd(n < 0 ? -n : n, c), s = 0;
  for (int64_t b : divisors(g)) s += b * mobius(c / b);
  return s;
}

// Ramanujan sum by summing e(hn/c) over units h, rounded after checking the
// value is within tol of an integer.
inline int64_t ramanujan_brute(int64_t n, int64_t c) {
  Modulus<Real> md(c);
  Real s = 0;
  for (int64_t h : md.units()) s += md.cos_at(h * mod(n, c));
  Real r = round(s);
  if (abs(s - r) > Real(1e-30)) throw std::runtime_error("ramanujan: non-integral sum");
  return r.convert_to<int64_t>();
}

struct RamanujanPair { int64_t brute, divisor; };

inline RamanujanPair ramanujan(int64_t n, int64_t c) {
  return {ramanujan_brute(n, c), ramanujan_divisor(n, c)};
}

// Closed form value of T(c) = sum*_h sum_a e(h a^2 / c). The sqrt is
// exact since the value is nonzero only on squares.
inline int64_t gauss_T_closed(int64_t c) {
  if (!is_square(c)) return 0;
  return euler_phi(c) * isqrt(c);
}

// Divisor-sum evaluation: c * sum_{b|c} mu(c/b) #{a mod b : b | a^2}.
inline int64_t gauss_T_divisor(int64_t c) {
  int64_t s = 0;
  for (int64_t b : divisors(c)) {
    int mu = mobius(c / b);
    if (!mu) continue;
    int64_t cnt = 0;
    for (int64_t a = 0; a < b; ++a)
      if ((a * a) % b == 0) ++cnt;
    s += mu * cnt;
  }
  return c * s;
}

// Brute force double sum. Pairs (h,a) are bucketed by h a^2 mod c, then the
// bucket counts are paired with e(r/c).
inline int64_t gauss_T_brute(int64_t c, Real* residual = nullptr) {
  Modulus<Real> md(c);
  std::vector<int64_t> cnt(c, 0);
  for (int64_t h : md.units())
    for (int64_t a = 0; a < c; ++a) ++cnt[(h * ((a * a) % c)) % c];
  Cplx<Real> s;
  for (int64_t r = 0; r < c; ++r) {
    if (!cnt[r]) continue;
    s.re += Real(cnt[r]) * md.cos_at(r);
    s.im += Real(cnt[r]) * md.sin_at(r);
  }
  Real v = round(s.re);
  Real res = abs(s.re - v) + abs(s.im);
  if (residual) *residual = res;
  if (res > Real(1e-30)) throw std::runtime_error("gauss_T: non-integral brute sum");
  return v.convert_to<int64_t>();
}

struct GaussT { int64_t brute, closed; };

inline GaussT gauss_T(int64_t c) {
  GaussT t{gauss_T_brute(c), gauss_T_closed(c)};
  if (t.brute != t.closed) throw std::runtime_error("gauss_T: brute and closed forms differ");
  return t;
}

// The shifted form sum_a S(a^2, r2^2; c) e(sign*2 a r2 / c), returned rounded.
inline int64_t gauss_T_shifted(int64_t c, int64_t r2, int sign) {
  Modulus<Real> md(c);
  Cplx<Real> s;
  for (int64_t a = 0; a < c; ++a) {
    Cplx<Real> k = md.kloosterman(a * a, r2 * r2);
    int64_t j = sign * 2 * a * r2;
    Cplx<Real> e{md.cos_at(j), md.sin_at(j)};
    s += k * e;
  }
  Real v = round(s.re);
  if (abs(s.re - v) + abs(s.im) > Real(1e-25))
    throw std::runtime_error("gauss_T_shifted: non-integral sum");
  return v.convert_to<int64_t>();
}

// True when the shifted sum equals T(c) for every r2 and both signs.
inline bool gauss_T_r2_independence(int64_t c, const std::vector<int64_t>& r2s) {
  int64_t t = gauss_T_closed(c);
  for (int64_t r2 : r2s)
    for (int sg : {1, -1})
      if (gauss_T_shifted(c, r2, sg) != t) return false;
  return true;
}

}  // namespace skl::es
