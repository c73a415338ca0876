#pragma once

// log Gamma for complex MPFR arguments: upward shift by the functional
// equation, then Stirling with Bernoulli corrections. Only exp() of the
// result is used downstream, so the imaginary part is correct mod 2 pi.

#include "skl/arith.hpp"
#include "skl/num.hpp"

#include <mutex>

namespace skl {

namespace detail {
inline const std::vector<Rat>& bernoulli_cache(int n) {
  static std::mutex mu;
  static std::vector<Rat> tab;
  std::lock_guard<std::mutex> lk(mu);
  if (static_cast<int>(tab.size()) <= n) tab = bernoulli_table(std::max(n, 2 * static_cast<int>(tab.size())));
  return tab;
}
}  // namespace detail

inline Cplx<Real> clgamma(Cplx<Real> z) {
  unsigned bits = current_bits();
  // Stirling remainder is below exp(-2 pi |z|), so |z| >= 0.12 bits is enough
  Real rmin = Real(0.12) * bits + 12;
  Cplx<Real> prod(Real(1)), corr;
  int cnt = 0;
  while (abs(z) < rmin || z.re < rmin / 2) {
    prod *= z;
    z.re += 1;
    if (++cnt == 16) {
      corr += clog(prod);
      prod = Cplx<Real>(Real(1));
      cnt = 0;
    }
  }
  corr += clog(prod);
  Cplx<Real> lz = clog(z);
  Cplx<Real> r = (z - Cplx<Real>(Real(0.5))) * lz - z + Cplx<Real>(log(2 * pi()) / 2);
  Cplx<Real> zinv = Cplx<Real>(Real(1)) / z, z2 = zinv * zinv, pw = zinv;
  Real eps = ldexp(Real(1), -static_cast<int>(bits) - 8);
  for (int j = 1; j < 400; ++j) {
    const auto& B = detail::bernoulli_cache(2 * j);
    Real c = to_real(B[2 * j]) / (Real(2 * j) * Real(2 * j - 1));
    Cplx<Real> t = pw * c;
    r += t;
    if (abs(t) < eps * (abs(r) + 1)) break;
    pw *= z2;
  }
  return r - corr;
}

inline Real lgamma_real(const Real& x) { return boost::multiprecision::lgamma(x); }

}  // namespace skl
